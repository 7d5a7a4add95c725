#pragma once

// Machine verification of the state-sum / closed-form correspondence
//
//   <<z1, z2>>_TV = (N^{b1} / p_1...p_n) * <<z1, z2>>_BF
//
// together with its vanishing condition on torsion classes and the counting
// identity |S/NZ| = |Ker d/NZ| * |S'/Im d| behind the degeneracy factor.
// Ker d/NZ is the integer cocycle lattice reduced mod N, i.e. only labelings
// that lift to integral cocycles count toward the degeneracy.

#include "tvbf/turaev_viro.hpp"

#include <chrono>
#include <map>
#include <sstream>

namespace tvbf {

struct ReciprocityReport {
    std::string manifold;
    Integer level;
    Cycle z1, z2;
    PhaseSum lhs;       // TV state sum
    PhaseSum rhs;       // factor * BF closed form
    Rational factor;    // N^{b1} / (p_1...p_n)
    bool equal = false;
    double lhs_seconds = 0, rhs_seconds = 0;

    std::string verdict() const { return equal ? "equal" : "unequal"; }
};

inline ReciprocityReport reciprocity_check(const CellComplex& c, const Integer& level,
                                           const Cycle& z1, const Cycle& z2,
                                           Strategy strategy = Strategy::tree,
                                           long long budget = kDefaultBudget) {
    if (strategy == Strategy::closed)
        throw std::invalid_argument("reciprocity needs an enumerative TV strategy");
    ReciprocityReport report;
    report.manifold = c.name;
    report.level = level;
    report.z1 = z1;
    report.z2 = z2;

    auto t0 = std::chrono::steady_clock::now();
    report.lhs = tv_expectation(c, level, z1, z2, strategy, budget);
    auto t1 = std::chrono::steady_clock::now();
    HomologyProfile profile = homology_h1(c);
    LinkingData linking = linking_form(profile);
    report.factor = detail::reciprocity_factor(profile, level);
    report.rhs = bf_expectation(profile, linking, {z1, z2, level}).scale(report.factor);
    auto t2 = std::chrono::steady_clock::now();

    report.lhs_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.rhs_seconds = std::chrono::duration<double>(t2 - t1).count();
    report.equal = equals_exact(report.lhs, report.rhs);
    return report;
}

// true iff some torsion coordinate is obstructed, i.e. gcd(N, p_i) fails to
// divide n1^i or n2^i. When true, both engines return exactly zero.
inline bool vanishing_condition(const HomologyProfile& profile, const Integer& level,
                                const ClassCoordinates& n1, const ClassCoordinates& n2) {
    for (std::size_t i = 0; i < profile.torsion.size(); ++i) {
        Integer g = gcd(level, profile.torsion[i]);
        if (mod_floor(n1.torsion[i], g) != 0) return true;
        if (mod_floor(n2.torsion[i], g) != 0) return true;
    }
    return false;
}

struct LemmaReport {
    Integer level;
    Integer constrained_count;     // |S/NZ|  = #{l in Z_N^E : d l + z2 = 0 mod N}
    Integer kernel_count;          // |Ker d/NZ| = labelings with an integral cocycle lift
    Integer cocycle_class_count;   // |S'/Im d|
    Integer expected_kernel_count; // N^{b1 + V - 1}
    bool constraint_solvable = true;  // false when S is empty

    bool multiplicative_identity_holds() const {
        return constrained_count == kernel_count * cocycle_class_count;
    }
    bool kernel_count_matches() const { return kernel_count == expected_kernel_count; }
};

// Enumerates S/NZ, Ker d/NZ and the classes of u = -(d l + z2)/N modulo the
// image lattice of d, and checks the counting lemma.
inline LemmaReport lemma_check(const CellComplex& c, const Integer& level, const Cycle& z2,
                               long long budget = kDefaultBudget) {
    if (level < 1) throw std::domain_error("level must be >= 1");
    if (z2.side != Side::dual || !is_cycle(c, z2))
        throw std::invalid_argument("z2 must be a dual 1-cycle");
    require_valid(c);
    detail::check_budget(level, c.edges, budget);

    HomologyProfile profile = homology_h1(c);
    LemmaReport report;
    report.level = level;
    report.expected_kernel_count = boost::multiprecision::pow(
        level, static_cast<unsigned>(profile.b1 + c.vertices - 1));
    report.constrained_count = 0;
    report.kernel_count = 0;

    IntMatrix d1 = c.boundary2.transpose();
    SmithDecomposition image_snf = smith_normal_form(d1);

    // canonical residue of u modulo the image lattice of d1
    auto canonical_class = [&](std::vector<Integer> u) {
        std::vector<Integer> w = image_snf.u * u;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i < image_snf.diagonal.size() && image_snf.diagonal[i] != 0)
                w[i] = mod_floor(w[i], image_snf.diagonal[i]);
        }
        return w;
    };

    std::map<std::vector<Integer>, Integer> class_sizes;
    std::vector<Integer> l(c.edges, 0);
    std::vector<Integer> moduli(c.edges, level);
    do {
        std::vector<Integer> dl = d1 * l;
        // S membership: d l + z2 = 0 mod N
        bool in_s = true;
        std::vector<Integer> u(c.faces);
        for (std::size_t a = 0; a < c.faces; ++a) {
            Integer num = dl[a] + z2.components[a];
            if (mod_floor(num, level) != 0) {
                in_s = false;
                break;
            }
            u[a] = -num / level;
        }
        if (in_s) {
            ++report.constrained_count;
            ++class_sizes[canonical_class(std::move(u))];
        }
        // kernel membership: d l = 0 mod N with integral lift
        bool closed = std::all_of(dl.begin(), dl.end(), [&](const Integer& x) {
            return mod_floor(x, level) == 0;
        });
        if (closed) {
            for (Integer& x : dl) x /= level;
            if (in_image_lattice(d1, dl)) ++report.kernel_count;
        }
    } while (detail::next_tuple(l, moduli));

    report.cocycle_class_count = class_sizes.size();
    report.constraint_solvable = report.constrained_count != 0;
    return report;
}

} // namespace tvbf
