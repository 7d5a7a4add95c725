#pragma once

// Command-line front end. All commands resolve one manifold source (a builtin
// name or a complex file), then evaluate and print in text or JSON form.
// Exit codes: 0 success, 1 computation refused (budget), 2 invalid input.

#include "tvbf/complex_io.hpp"
#include "tvbf/reciprocity.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace tvbf::cli {

struct Invocation {
    std::string manifold;
    long lens_order = 0;
    std::string file;
    long long level = 0;
    std::string z1_csv, z2_csv;
    std::string strategy = "tree";
    std::string format = "text";
    long long budget = kDefaultBudget;
    bool verify_brute = false;
    bool with_float = false;
    bool with_timings = false;
};

namespace detail {

inline std::vector<Integer> parse_csv(const std::string& csv) {
    std::vector<Integer> out;
    if (csv.empty()) return out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty entry in cycle list '" + csv + "'");
        try {
            out.emplace_back(Integer(item));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad integer '" + item + "' in cycle list");
        }
    }
    return out;
}

inline CellComplex resolve_manifold(const Invocation& inv) {
    if (inv.manifold.empty() == inv.file.empty())
        throw std::invalid_argument("exactly one of --manifold or --file is required");
    if (!inv.file.empty()) return load_complex(inv.file);
    if (inv.manifold == "lens") {
        if (inv.lens_order < 2) throw std::invalid_argument("--manifold lens requires --p <int> >= 2");
        return builtin("lens", inv.lens_order);
    }
    return builtin(inv.manifold);
}

inline Cycle cycle_arg(const CellComplex& c, const std::string& csv, Side side) {
    std::vector<Integer> v = parse_csv(csv);
    std::size_t want = side == Side::primal ? c.edges : c.faces;
    if (v.size() != want)
        throw std::invalid_argument("cycle has " + std::to_string(v.size()) + " entries, complex needs " +
                                    std::to_string(want));
    return {side, std::move(v)};
}

inline nlohmann::json terms_json(const PhaseSum& value) {
    PhaseSum v = value.canonicalized();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [q, cc] : v.terms())
        terms.push_back({to_int64(numerator(q)), to_int64(denominator(q)),
                         to_int64(numerator(cc)), to_int64(denominator(cc))});
    return terms;
}

inline nlohmann::ordered_json result_envelope(const std::string& command, const CellComplex& c,
                                              long long level) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["manifold"] = c.name;
    j["N"] = level;
    j["result_exact"] = nlohmann::json::array();
    j["result_float"] = nullptr;
    j["metadata"] = nlohmann::json::object();
    return j;
}

inline void attach_value(nlohmann::ordered_json& j, const PhaseSum& value) {
    PhaseSum v = value.canonicalized();
    j["result_exact"] = terms_json(v);
    std::complex<double> z = v.evaluate();
    j["result_float"] = {z.real(), z.imag()};
}

inline void print_value(std::ostream& out, const Invocation& inv, const PhaseSum& value) {
    PhaseSum v = value.canonicalized();
    out << v.to_exact_string();
    if (inv.with_float) out << " = " << v.to_float_string();
    out << "\n";
}

inline Integer level_of(const Invocation& inv) {
    if (inv.level < 1) throw std::invalid_argument("--level must be a positive integer");
    return Integer(inv.level);
}

} // namespace detail

// runs one invocation; output written to `out`, diagnostics to `err`
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Turaev-Viro / BF reciprocity engine", "tvbf"};
    app.require_subcommand(1);
    Invocation inv;

    auto add_source = [&](CLI::App* cmd) {
        cmd->add_option("--manifold", inv.manifold, "builtin manifold: s3, s1xs2, rp3, lens");
        cmd->add_option("--p", inv.lens_order, "lens space order (with --manifold lens)");
        cmd->add_option("--file", inv.file, "cell complex JSON file");
        cmd->add_option("--format", inv.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--budget", inv.budget, "enumeration budget (loop iterations)");
    };
    auto add_level = [&](CLI::App* cmd) {
        cmd->add_option("--level", inv.level, "Z_N level")->required();
    };
    auto add_eval = [&](CLI::App* cmd) {
        cmd->add_option("--strategy", inv.strategy, "brute, constrained, tree or closed")
            ->check(CLI::IsMember({"brute", "constrained", "tree", "closed"}));
        cmd->add_flag("--verify-brute", inv.verify_brute, "cross-check against brute enumeration");
        cmd->add_flag("--float", inv.with_float, "append floating evaluation");
    };

    CLI::App* c_validate = app.add_subcommand("validate", "check the structural axioms");
    add_source(c_validate);
    CLI::App* c_dualize = app.add_subcommand("dualize", "print the dual decomposition");
    add_source(c_dualize);
    CLI::App* c_homology = app.add_subcommand("homology", "first homology profile");
    add_source(c_homology);
    CLI::App* c_tvp = app.add_subcommand("tv-partition", "Turaev-Viro partition function");
    add_source(c_tvp);
    add_level(c_tvp);
    add_eval(c_tvp);
    CLI::App* c_tve = app.add_subcommand("tv-expect", "Z_N holonomy expectation value");
    add_source(c_tve);
    add_level(c_tve);
    add_eval(c_tve);
    c_tve->add_option("--z1", inv.z1_csv, "primal cycle, comma-separated edge components")->required();
    c_tve->add_option("--z2", inv.z2_csv, "dual cycle, comma-separated face components")->required();
    CLI::App* c_bfp = app.add_subcommand("bf-partition", "BF partition function (closed form)");
    add_source(c_bfp);
    add_level(c_bfp);
    c_bfp->add_flag("--float", inv.with_float, "append floating evaluation");
    CLI::App* c_bfe = app.add_subcommand("bf-expect", "BF expectation value (closed form)");
    add_source(c_bfe);
    add_level(c_bfe);
    c_bfe->add_flag("--float", inv.with_float, "append floating evaluation");
    c_bfe->add_option("--z1", inv.z1_csv, "primal cycle")->required();
    c_bfe->add_option("--z2", inv.z2_csv, "dual cycle")->required();
    CLI::App* c_rec = app.add_subcommand("reciprocity", "compare state sum against closed form");
    add_source(c_rec);
    add_level(c_rec);
    add_eval(c_rec);
    c_rec->add_option("--z1", inv.z1_csv, "primal cycle")->required();
    c_rec->add_option("--z2", inv.z2_csv, "dual cycle")->required();
    c_rec->add_flag("--timings", inv.with_timings, "include timings in JSON output");
    CLI::App* c_lemma = app.add_subcommand("lemma-check", "counting identity behind the degeneracy");
    add_source(c_lemma);
    add_level(c_lemma);
    c_lemma->add_option("--z2", inv.z2_csv, "dual cycle")->required();
    CLI::App* c_kernel = app.add_subcommand("kernel-count", "closed labeling degeneracy count");
    add_source(c_kernel);
    add_level(c_kernel);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }

    const bool json = inv.format == "json";
    try {
        CellComplex c = detail::resolve_manifold(inv);

        if (c_validate->parsed()) {
            ValidationReport report = validate(c);
            if (json) {
                auto j = detail::result_envelope("validate", c, 0);
                auto checks = nlohmann::json::array();
                for (const auto& chk : report.checks)
                    checks.push_back({{"name", chk.name}, {"passed", chk.passed}, {"detail", chk.detail}});
                j["metadata"]["checks"] = checks;
                j["metadata"]["all_passed"] = report.all_passed();
                out << j.dump(2) << "\n";
            } else {
                out << report.to_string();
            }
            return report.all_passed() ? 0 : 2;
        }

        if (c_dualize->parsed()) {
            CellComplex d = dualize(c);
            out << complex_to_json(d).dump(2) << "\n";
            return 0;
        }

        if (c_homology->parsed()) {
            HomologyProfile profile = homology_h1(c);
            if (json) {
                auto j = detail::result_envelope("homology", c, 0);
                j["metadata"]["b1"] = profile.b1;
                auto torsion = nlohmann::json::array();
                for (const Integer& p : profile.torsion) torsion.push_back(to_int64(p));
                j["metadata"]["torsion"] = torsion;
                out << j.dump(2) << "\n";
            } else {
                out << "b1=" << profile.b1 << " torsion=[";
                for (std::size_t i = 0; i < profile.torsion.size(); ++i)
                    out << (i ? "," : "") << profile.torsion[i].str();
                out << "]\n";
            }
            return 0;
        }

        Integer level = detail::level_of(inv);
        Strategy strategy = strategy_from_name(inv.strategy);

        if (c_tvp->parsed() || c_tve->parsed()) {
            Cycle z1 = c_tve->parsed() ? detail::cycle_arg(c, inv.z1_csv, Side::primal)
                                       : Cycle::primal(std::vector<Integer>(c.edges, 0));
            Cycle z2 = c_tve->parsed() ? detail::cycle_arg(c, inv.z2_csv, Side::dual)
                                       : Cycle::dual(std::vector<Integer>(c.faces, 0));
            PhaseSum v = tv_expectation(c, level, z1, z2, strategy, inv.budget);
            bool verified = false;
            if (inv.verify_brute && strategy != Strategy::brute) {
                PhaseSum ref = tv_expectation(c, level, z1, z2, Strategy::brute, inv.budget);
                if (!equals_exact(v, ref))
                    throw std::logic_error("strategy disagrees with brute enumeration");
                verified = true;
                err << "verified against brute enumeration\n";
            }
            if (json) {
                auto j = detail::result_envelope(c_tvp->parsed() ? "tv-partition" : "tv-expect", c,
                                                 inv.level);
                detail::attach_value(j, v);
                j["metadata"]["strategy"] = inv.strategy;
                if (inv.verify_brute) j["metadata"]["verified_brute"] = verified;
                out << j.dump(2) << "\n";
            } else {
                detail::print_value(out, inv, v);
            }
            return 0;
        }

        if (c_bfp->parsed() || c_bfe->parsed()) {
            HomologyProfile profile = homology_h1(c);
            LinkingData linking = linking_form(profile);
            PhaseSum v;
            if (c_bfe->parsed()) {
                Cycle z1 = detail::cycle_arg(c, inv.z1_csv, Side::primal);
                Cycle z2 = detail::cycle_arg(c, inv.z2_csv, Side::dual);
                v = bf_expectation(profile, linking, {z1, z2, level});
            } else {
                v = bf_partition(profile, linking, level);
            }
            if (json) {
                auto j = detail::result_envelope(c_bfp->parsed() ? "bf-partition" : "bf-expect", c,
                                                 inv.level);
                detail::attach_value(j, v);
                out << j.dump(2) << "\n";
            } else {
                detail::print_value(out, inv, v);
            }
            return 0;
        }

        if (c_rec->parsed()) {
            Cycle z1 = detail::cycle_arg(c, inv.z1_csv, Side::primal);
            Cycle z2 = detail::cycle_arg(c, inv.z2_csv, Side::dual);
            ReciprocityReport report = reciprocity_check(c, level, z1, z2, strategy, inv.budget);
            if (inv.verify_brute) {
                PhaseSum ref = tv_expectation(c, level, z1, z2, Strategy::brute, inv.budget);
                if (!equals_exact(report.lhs, ref))
                    throw std::logic_error("strategy disagrees with brute enumeration");
                err << "verified against brute enumeration\n";
            }
            if (json) {
                auto j = detail::result_envelope("reciprocity", c, inv.level);
                detail::attach_value(j, report.lhs);
                j["metadata"]["lhs"] = detail::terms_json(report.lhs);
                j["metadata"]["rhs"] = detail::terms_json(report.rhs);
                j["metadata"]["factor"] = {to_int64(numerator(report.factor)),
                                           to_int64(denominator(report.factor))};
                j["metadata"]["verdict"] = report.verdict();
                j["metadata"]["strategy"] = inv.strategy;
                if (inv.with_timings)
                    j["metadata"]["timings"] = {{"lhs_seconds", report.lhs_seconds},
                                                {"rhs_seconds", report.rhs_seconds}};
                out << j.dump(2) << "\n";
            } else {
                out << "lhs = " << report.lhs.canonicalized().to_exact_string() << "\n";
                out << "rhs = " << report.rhs.canonicalized().to_exact_string() << "\n";
                out << "verdict " << report.verdict() << ", factor " << to_string(report.factor)
                    << "\n";
            }
            return report.equal ? 0 : 2;
        }

        if (c_lemma->parsed()) {
            Cycle z2 = detail::cycle_arg(c, inv.z2_csv, Side::dual);
            LemmaReport report = lemma_check(c, level, z2, inv.budget);
            if (json) {
                auto j = detail::result_envelope("lemma-check", c, inv.level);
                j["metadata"]["constrained_count"] = to_int64(report.constrained_count);
                j["metadata"]["kernel_count"] = to_int64(report.kernel_count);
                j["metadata"]["cocycle_class_count"] = to_int64(report.cocycle_class_count);
                j["metadata"]["expected_kernel_count"] = to_int64(report.expected_kernel_count);
                j["metadata"]["multiplicative_identity"] = report.multiplicative_identity_holds();
                j["metadata"]["constraint_solvable"] = report.constraint_solvable;
                out << j.dump(2) << "\n";
            } else {
                out << "|S/NZ| = " << report.constrained_count.str() << "\n";
                out << "|Ker d/NZ| = " << report.kernel_count.str() << " (N^{b1+V-1} = "
                    << report.expected_kernel_count.str() << ")\n";
                out << "|S'/Im d| = " << report.cocycle_class_count.str() << "\n";
                if (!report.constraint_solvable) out << "constraint has no solution: S is empty\n";
                out << "identity |S| = |Ker|*|S'|: "
                    << (report.multiplicative_identity_holds() ? "ok" : "VIOLATED") << "\n";
            }
            return report.multiplicative_identity_holds() && report.kernel_count_matches() ? 0 : 2;
        }

        if (c_kernel->parsed()) {
            Integer naive_budget_needed = boost::multiprecision::pow(level, static_cast<unsigned>(c.edges));
            bool enumerable = naive_budget_needed <= inv.budget;
            ClosedLabelingCount count = closed_labeling_count(c, level, enumerable, inv.budget);
            if (json) {
                auto j = detail::result_envelope("kernel-count", c, inv.level);
                j["result_exact"] = {{0, 1, to_int64(count.count), 1}};
                j["result_float"] = {static_cast<double>(to_int64(count.count)), 0.0};
                if (enumerable) {
                    j["metadata"]["enumerated_liftable"] = to_int64(count.liftable_enumerated);
                    j["metadata"]["enumerated_mod_n_closed"] = to_int64(count.naive_enumerated);
                }
                out << j.dump(2) << "\n";
            } else {
                out << "N^{b1+V-1} = " << count.count.str() << "\n";
                if (enumerable) {
                    out << "enumerated liftable closed labelings = "
                        << count.liftable_enumerated.str() << "\n";
                    out << "enumerated mod-N closed labelings = " << count.naive_enumerated.str()
                        << "\n";
                }
            }
            return 0;
        }

        err << "no command executed\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "refused: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        err << e.what();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace tvbf::cli
