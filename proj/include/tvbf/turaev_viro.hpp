#pragma once

// State-sum evaluation of the abelian Turaev-Viro invariant and of
// Z_N-holonomy expectation values:
//
//   brute        full double sum over face and edge labelings
//   constrained  edge labelings with the mod-N flatness delta imposed
//   tree         constrained sum restricted to labelings vanishing on a
//                spanning tree, with no 1/N^{V-1} normalization
//   closed       delegated to the BF closed form times N^{b1}/(p_1...p_n)
//
// All strategies return exactly equal PhaseSums on valid inputs.

#include "tvbf/bf_theory.hpp"

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace tvbf {

enum class Strategy { brute, constrained, tree, closed };

inline const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::brute: return "brute";
        case Strategy::constrained: return "constrained";
        case Strategy::tree: return "tree";
        case Strategy::closed: return "closed";
    }
    return "?";
}

inline Strategy strategy_from_name(const std::string& s) {
    if (s == "brute") return Strategy::brute;
    if (s == "constrained") return Strategy::constrained;
    if (s == "tree") return Strategy::tree;
    if (s == "closed") return Strategy::closed;
    throw std::invalid_argument("unknown strategy '" + s + "'");
}

class BudgetExceeded : public std::runtime_error {
  public:
    BudgetExceeded(const Integer& needed, long long budget)
        : std::runtime_error("enumeration needs " + needed.str() + " iterations, budget is " +
                             std::to_string(budget)) {}
};

constexpr long long kDefaultBudget = 100'000'000;

// Z_N-valued cochains: a labeling lives on edges (primal) or faces/dual
// edges (dual); a gauging lives on vertices (primal) or 3-cells (dual).
struct Labeling {
    Side side = Side::primal;
    Integer level = 1;
    std::vector<Integer> values;
};

struct Gauging {
    Side side = Side::primal;
    Integer level = 1;
    std::vector<Integer> values;
};

// differential of a gauging is a labeling: primal d = boundary_1^T, dual
// d* = boundary_3
inline Labeling differential(const CellComplex& c, const Gauging& g) {
    std::vector<Integer> v = g.side == Side::primal ? c.boundary1.transpose() * g.values
                                                    : c.boundary3 * g.values;
    for (Integer& x : v) x = mod_floor(x, g.level);
    return {g.side, g.level, std::move(v)};
}

struct SpanningTree {
    std::size_t root = 0;
    struct TreeEdge {
        std::size_t edge;
        std::size_t source;  // per boundary column: +1 row is target, -1 row is source
        std::size_t target;
    };
    std::vector<TreeEdge> edges;
    std::vector<bool> in_tree;  // indexed by edge
};

// Deterministic breadth-first tree from vertex 0; ties broken by lowest edge
// index. Requires a connected 1-skeleton.
inline SpanningTree spanning_tree(const CellComplex& c) {
    struct EdgeEnds {
        bool loop;
        std::size_t source, target;
    };
    std::vector<EdgeEnds> ends(c.edges);
    for (std::size_t e = 0; e < c.edges; ++e) {
        std::size_t plus = c.vertices, minus = c.vertices;
        int extra = 0;
        for (std::size_t v = 0; v < c.vertices; ++v) {
            const Integer& x = c.boundary1(v, e);
            if (x == 0) continue;
            if (x == 1 && plus == c.vertices)
                plus = v;
            else if (x == -1 && minus == c.vertices)
                minus = v;
            else
                ++extra;
        }
        if (extra || (plus == c.vertices) != (minus == c.vertices))
            throw std::invalid_argument("boundary_1 column " + std::to_string(e) +
                                        " is not of edge form target - source");
        ends[e] = {plus == c.vertices, minus, plus};
    }

    std::vector<std::vector<std::size_t>> incident(c.vertices);
    for (std::size_t e = 0; e < c.edges; ++e)
        if (!ends[e].loop) {
            incident[ends[e].source].push_back(e);
            incident[ends[e].target].push_back(e);
        }

    SpanningTree tree;
    tree.in_tree.assign(c.edges, false);
    if (c.vertices == 0) return tree;
    std::vector<bool> seen(c.vertices, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e : incident[v]) {
            std::size_t other = ends[e].source == v ? ends[e].target : ends[e].source;
            if (seen[other]) continue;
            seen[other] = true;
            tree.in_tree[e] = true;
            tree.edges.push_back({e, ends[e].source, ends[e].target});
            queue.push_back(other);
        }
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw std::invalid_argument("1-skeleton of '" + c.name + "' is disconnected");
    return tree;
}

namespace detail {

struct ModData {
    long long level;
    std::vector<std::vector<std::pair<std::size_t, long long>>> column_updates;  // per edge
    std::vector<long long> z1_mod;  // per edge
    std::vector<long long> z2_mod;  // per face
};

inline ModData mod_data(const CellComplex& c, const Integer& level,
                        const std::vector<Integer>* z1, const std::vector<Integer>* z2) {
    ModData d;
    d.level = to_int64(level);
    d.column_updates.resize(c.edges);
    for (std::size_t e = 0; e < c.edges; ++e)
        for (std::size_t a = 0; a < c.faces; ++a) {
            long long v = to_int64(mod_floor(c.boundary2(e, a), level));
            if (v != 0) d.column_updates[e].push_back({a, v});
        }
    d.z1_mod.assign(c.edges, 0);
    if (z1)
        for (std::size_t e = 0; e < c.edges; ++e) d.z1_mod[e] = to_int64(mod_floor((*z1)[e], level));
    d.z2_mod.assign(c.faces, 0);
    if (z2)
        for (std::size_t a = 0; a < c.faces; ++a) d.z2_mod[a] = to_int64(mod_floor((*z2)[a], level));
    return d;
}

inline void check_budget(const Integer& level, std::size_t digit_count, long long budget) {
    Integer needed = 1;
    for (std::size_t i = 0; i < digit_count; ++i) {
        needed *= level;
        if (needed > budget) throw BudgetExceeded(boost::multiprecision::pow(level, static_cast<unsigned>(digit_count)), budget);
    }
}

// Sum over edge labelings (varying only `digits`) of e^{2 pi i (l.z1)/N}
// subject to d l + z2 = 0 mod N. Returns counts per phase residue.
inline std::vector<long long> constrained_counts(const ModData& d, const std::vector<std::size_t>& digits) {
    const long long n = d.level;
    const std::size_t face_count = d.z2_mod.size();
    std::vector<long long> counts(n, 0);
    std::vector<long long> constraint(d.z2_mod);  // (d l + z2) mod N, starts at l = 0
    std::size_t zero_faces = 0;
    for (long long& x : constraint)
        if ((x %= n) == 0) ++zero_faces;
    long long phase = 0;
    std::vector<long long> digit(digits.size(), 0);
    for (;;) {
        if (zero_faces == face_count) ++counts[phase];
        std::size_t pos = 0;
        while (pos < digits.size()) {
            std::size_t e = digits[pos];
            for (const auto& [a, delta] : d.column_updates[e]) {
                if (constraint[a] == 0) --zero_faces;
                constraint[a] += delta;
                if (constraint[a] >= n) constraint[a] -= n;
                if (constraint[a] == 0) ++zero_faces;
            }
            phase += d.z1_mod[e];
            if (phase >= n) phase -= n;
            if (++digit[pos] < n) break;
            digit[pos] = 0;
            ++pos;
        }
        if (pos == digits.size()) break;
    }
    return counts;
}

// Honest double sum over (m, l) of e^{2 pi i (m . (dl + z2) + l . z1)/N}.
inline std::vector<long long> brute_counts(const ModData& d) {
    const long long n = d.level;
    const std::size_t edge_count = d.z1_mod.size();
    const std::size_t face_count = d.z2_mod.size();
    std::vector<long long> counts(n, 0);
    std::vector<long long> constraint(d.z2_mod);
    for (long long& x : constraint) x %= n;
    long long phase1 = 0;
    std::vector<long long> edge_digit(edge_count, 0);
    for (;;) {
        // inner sum over face labelings m
        long long phase2 = 0;
        std::vector<long long> face_digit(face_count, 0);
        for (;;) {
            long long total = phase1 + phase2;
            if (total >= n) total -= n;
            ++counts[total];
            std::size_t pos = 0;
            while (pos < face_count) {
                phase2 += constraint[pos];
                if (phase2 >= n) phase2 -= n;
                if (++face_digit[pos] < n) break;
                face_digit[pos] = 0;
                ++pos;
            }
            if (pos == face_count) break;
        }
        std::size_t pos = 0;
        while (pos < edge_count) {
            for (const auto& [a, delta] : d.column_updates[pos]) {
                constraint[a] += delta;
                if (constraint[a] >= n) constraint[a] -= n;
            }
            phase1 += d.z1_mod[pos];
            if (phase1 >= n) phase1 -= n;
            if (++edge_digit[pos] < n) break;
            edge_digit[pos] = 0;
            ++pos;
        }
        if (pos == edge_count) break;
    }
    return counts;
}

inline PhaseSum counts_to_phase_sum(const std::vector<long long>& counts, const Integer& level,
                                    const Rational& scale) {
    PhaseSum total;
    for (long long k = 0; k < static_cast<long long>(counts.size()); ++k)
        if (counts[k] != 0)
            total += root_of_unity(k, level).scale(Rational(counts[k]) * scale);
    return total;
}

inline std::vector<std::size_t> all_edges(const CellComplex& c) {
    std::vector<std::size_t> digits(c.edges);
    for (std::size_t e = 0; e < c.edges; ++e) digits[e] = e;
    return digits;
}

inline std::vector<std::size_t> non_tree_edges(const CellComplex& c) {
    SpanningTree tree = spanning_tree(c);
    std::vector<std::size_t> digits;
    for (std::size_t e = 0; e < c.edges; ++e)
        if (!tree.in_tree[e]) digits.push_back(e);
    return digits;
}

inline Rational reciprocity_factor(const HomologyProfile& profile, const Integer& level) {
    return Rational(boost::multiprecision::pow(level, static_cast<unsigned>(profile.b1)),
                    profile.torsion_order());
}

} // namespace detail

inline PhaseSum tv_expectation(const CellComplex& c, const Integer& level, const Cycle& z1,
                               const Cycle& z2, Strategy strategy = Strategy::tree,
                               long long budget = kDefaultBudget) {
    if (level < 1) throw std::domain_error("level must be >= 1");
    if (z1.side != Side::primal || z2.side != Side::dual)
        throw std::invalid_argument("tv_expectation expects (primal, dual) cycles");
    if (!is_cycle(c, z1)) throw std::invalid_argument("z1 is not a 1-cycle of the complex");
    if (!is_cycle(c, z2)) throw std::invalid_argument("z2 is not a 1-cycle of the dual complex");

    if (strategy == Strategy::closed) {
        HomologyProfile profile = homology_h1(c);
        LinkingData linking = linking_form(profile);
        return bf_expectation(profile, linking, {z1, z2, level})
            .scale(detail::reciprocity_factor(profile, level));
    }

    detail::ModData data = detail::mod_data(c, level, &z1.components, &z2.components);
    const Integer npow = [&] {
        Integer p = 1;
        for (std::size_t i = 0; i + 1 < c.vertices; ++i) p *= level;
        return p;
    }();
    switch (strategy) {
        case Strategy::brute: {
            detail::check_budget(level, c.edges + c.faces, budget);
            Integer scale_den = npow;
            for (std::size_t i = 0; i < c.faces; ++i) scale_den *= level;
            return detail::counts_to_phase_sum(detail::brute_counts(data), level,
                                               Rational(1, scale_den));
        }
        case Strategy::constrained: {
            detail::check_budget(level, c.edges, budget);
            return detail::counts_to_phase_sum(detail::constrained_counts(data, detail::all_edges(c)),
                                               level, Rational(1, npow));
        }
        case Strategy::tree: {
            auto digits = detail::non_tree_edges(c);
            detail::check_budget(level, digits.size(), budget);
            return detail::counts_to_phase_sum(detail::constrained_counts(data, digits), level,
                                               Rational(1));
        }
        default:
            throw std::logic_error("unreachable");
    }
}

inline PhaseSum tv_partition(const CellComplex& c, const Integer& level,
                             Strategy strategy = Strategy::tree,
                             long long budget = kDefaultBudget) {
    Cycle z1 = Cycle::primal(std::vector<Integer>(c.edges, 0));
    Cycle z2 = Cycle::dual(std::vector<Integer>(c.faces, 0));
    return tv_expectation(c, level, z1, z2, strategy, budget);
}

// Degeneracy count of the gauge reduction: closed Z_N labelings that lift to
// integer cocycles, which number exactly N^(b1 + V - 1).
struct ClosedLabelingCount {
    Integer count;            // N^{b1 + V - 1}
    Integer naive_enumerated = -1;     // #{l in Z_N^E : d l = 0 mod N}, -1 when not enumerated
    Integer liftable_enumerated = -1;  // those with an integral cocycle lift
};

inline ClosedLabelingCount closed_labeling_count(const CellComplex& c, const Integer& level,
                                                 bool verify = false,
                                                 long long budget = kDefaultBudget) {
    if (level < 1) throw std::domain_error("level must be >= 1");
    HomologyProfile profile = homology_h1(c);
    ClosedLabelingCount result;
    result.count = boost::multiprecision::pow(
        level, static_cast<unsigned>(profile.b1 + c.vertices - 1));
    if (!verify) return result;

    detail::check_budget(level, c.edges, budget);
    IntMatrix d1 = c.boundary2.transpose();
    result.naive_enumerated = 0;
    result.liftable_enumerated = 0;
    std::vector<Integer> l(c.edges, 0);
    std::vector<Integer> moduli(c.edges, level);
    do {
        std::vector<Integer> dl = d1 * l;
        bool closed = std::all_of(dl.begin(), dl.end(),
                                  [&](const Integer& x) { return mod_floor(x, level) == 0; });
        if (closed) {
            ++result.naive_enumerated;
            for (Integer& x : dl) x /= level;
            if (in_image_lattice(d1, dl)) ++result.liftable_enumerated;
        }
    } while (detail::next_tuple(l, moduli));
    if (result.liftable_enumerated != result.count)
        throw std::logic_error("closed labeling count mismatch: enumerated " +
                               result.liftable_enumerated.str() + ", formula " +
                               result.count.str());
    return result;
}

// Covariant (divergence) gauge on two-handlebody decompositions: the raw sum
// counts dual labelings that are both closed and co-closed mod N; dividing by
// k = gcd(N, n) with n the number of shared faces reproduces the invariant
// only when the gauge slice is degeneracy-free.
struct CovariantGaugeResult {
    PhaseSum value;       // raw / k
    PhaseSum reference;   // tv_partition by tree gauge
    Integer raw_count;    // number of labelings passing both constraints
    Integer shared_faces; // n
    Integer degeneracy;   // k = gcd(N, n)
    bool matches = false;
};

inline CovariantGaugeResult covariant_gauge_partition(const CellComplex& c, const Integer& level,
                                                      long long budget = kDefaultBudget) {
    if (c.cells3 != 2)
        throw std::invalid_argument("covariant gauge analysis requires exactly two 3-cells");
    require_valid(c);
    std::vector<Integer> eps = c.boundary3.column(0);
    for (std::size_t a = 0; a < c.faces; ++a)
        if (c.boundary3(a, 1) != -eps[a])
            throw std::invalid_argument("boundary_3 is not of the (eps | -eps) form");

    CovariantGaugeResult result;
    result.shared_faces = 0;
    for (const Integer& e : eps) result.shared_faces += e * e;
    result.degeneracy = gcd(level, result.shared_faces);
    if (result.degeneracy == 0) result.degeneracy = 1;

    detail::check_budget(level, c.faces, budget);
    result.raw_count = 0;
    std::vector<Integer> m(c.faces, 0);
    std::vector<Integer> moduli(c.faces, level);
    do {
        std::vector<Integer> div = c.boundary2 * m;  // d* m over edges
        bool co_closed = std::all_of(div.begin(), div.end(), [&](const Integer& x) {
            return mod_floor(x, level) == 0;
        });
        if (!co_closed) continue;
        Integer pair = 0;
        for (std::size_t a = 0; a < c.faces; ++a) pair += eps[a] * m[a];
        if (mod_floor(pair, level) == 0) ++result.raw_count;
    } while (detail::next_tuple(m, moduli));

    result.value = PhaseSum::from_rational(Rational(result.raw_count, result.degeneracy));
    result.reference = tv_partition(c, level, Strategy::tree, budget);
    result.matches = equals_exact(result.value, result.reference);
    return result;
}

} // namespace tvbf
