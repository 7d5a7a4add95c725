#pragma once

// First-homology structure of a cell complex: Betti number, invariant
// factors, generator cycles on both the primal and dual decomposition,
// class-coordinate extraction, bounding data for torsion cycles, rational
// linking numbers and the mixed torsion linking form.
//
// H_1 = ker(boundary_1) / im(boundary_2) is presented through a basis K of
// the (saturated) cycle lattice and the Smith form U B V = D of the relation
// matrix B defined by K B = boundary_2. A cycle z with K y = z then has
// invariant coordinates w = U y: entries over zero diagonal rows are the free
// part, entries over diagonal d_i >= 2 reduce mod d_i to the torsion part.

#include "tvbf/cell_complex.hpp"

#include <numeric>

namespace tvbf {

struct ClassCoordinates {
    std::vector<Integer> free;     // length b1
    std::vector<Integer> torsion;  // i-th entry reduced to [0, p_i)

    bool free_is_zero() const {
        return std::all_of(free.begin(), free.end(), [](const Integer& x) { return x == 0; });
    }
    bool torsion_is_zero() const {
        return std::all_of(torsion.begin(), torsion.end(),
                           [](const Integer& x) { return x == 0; });
    }
};

namespace detail {

struct H1Basis {
    IntMatrix cycle_basis;            // E x k, columns span ker(boundary_1)
    SmithDecomposition relation_snf;  // of B with cycle_basis * B = boundary_2
    std::vector<std::size_t> torsion_rows;  // rows with diagonal >= 2
    std::vector<std::size_t> free_rows;     // rows with zero diagonal
    std::vector<Cycle> torsion_generators;
    std::vector<Cycle> free_generators;

    std::vector<Integer> cycle_coordinates(const std::vector<Integer>& z) const {
        auto y = solve_integer(cycle_basis, z);
        if (!y) throw std::invalid_argument("vector is not a 1-cycle");
        return relation_snf.u * *y;
    }
};

inline H1Basis h1_basis(const IntMatrix& boundary1, const IntMatrix& boundary2, Side side) {
    H1Basis h;
    auto kernel = kernel_basis(boundary1);
    h.cycle_basis = IntMatrix::from_columns(kernel);
    if (kernel.empty()) h.cycle_basis = IntMatrix(boundary1.cols(), 0);

    const std::size_t k = h.cycle_basis.cols();
    IntMatrix relations(k, boundary2.cols());
    for (std::size_t j = 0; j < boundary2.cols(); ++j) {
        auto y = solve_integer(h.cycle_basis, boundary2.column(j));
        if (!y) throw std::logic_error("boundary column is not a cycle (dd != 0?)");
        for (std::size_t i = 0; i < k; ++i) relations(i, j) = (*y)[i];
    }
    h.relation_snf = smith_normal_form(relations);

    for (std::size_t i = 0; i < k; ++i) {
        Integer d = i < h.relation_snf.diagonal.size() ? h.relation_snf.diagonal[i] : Integer(0);
        Cycle gen{side, h.cycle_basis * h.relation_snf.u_inv.column(i)};
        if (d == 0) {
            h.free_rows.push_back(i);
            h.free_generators.push_back(std::move(gen));
        } else if (d >= 2) {
            h.torsion_rows.push_back(i);
            h.torsion_generators.push_back(std::move(gen));
        }
    }
    return h;
}

} // namespace detail

struct HomologyProfile {
    std::size_t b1 = 0;
    std::vector<Integer> torsion;  // invariant factors p_1 | p_2 | ...
    CellComplex complex;
    CellComplex dual_complex;
    detail::H1Basis primal;
    detail::H1Basis dual;

    const std::vector<Cycle>& free_generators() const { return primal.free_generators; }
    const std::vector<Cycle>& torsion_generators_primal() const {
        return primal.torsion_generators;
    }
    const std::vector<Cycle>& torsion_generators_dual() const { return dual.torsion_generators; }

    Integer torsion_order() const {
        Integer prod = 1;
        for (const Integer& p : torsion) prod *= p;
        return prod;
    }
};

inline HomologyProfile homology_h1(const CellComplex& c) {
    require_valid(c);
    HomologyProfile profile;
    profile.complex = c;
    profile.dual_complex = dualize(c);
    profile.primal = detail::h1_basis(c.boundary1, c.boundary2, Side::primal);
    profile.dual = detail::h1_basis(profile.dual_complex.boundary1, profile.dual_complex.boundary2,
                                    Side::dual);
    profile.b1 = profile.primal.free_rows.size();
    for (std::size_t i : profile.primal.torsion_rows)
        profile.torsion.push_back(profile.primal.relation_snf.diagonal[i]);

    // goodness: the dual decomposition must present the same group
    std::vector<Integer> dual_torsion;
    for (std::size_t i : profile.dual.torsion_rows)
        dual_torsion.push_back(profile.dual.relation_snf.diagonal[i]);
    if (profile.dual.free_rows.size() != profile.b1 || dual_torsion != profile.torsion)
        throw std::runtime_error("dual decomposition presents a different H_1: '" + c.name + "'");
    return profile;
}

inline ClassCoordinates class_of(const HomologyProfile& profile, const Cycle& z) {
    const detail::H1Basis& h = z.side == Side::primal ? profile.primal : profile.dual;
    if (!is_cycle(profile.complex, z))
        throw std::invalid_argument("not a cycle of the requested side");
    std::vector<Integer> w = h.cycle_coordinates(z.components);
    ClassCoordinates coords;
    for (std::size_t i : h.free_rows) coords.free.push_back(w[i]);
    for (std::size_t i : h.torsion_rows)
        coords.torsion.push_back(mod_floor(w[i], h.relation_snf.diagonal[i]));
    return coords;
}

struct BoundingData {
    Integer order;                // smallest p > 0 with p z a boundary
    std::vector<Integer> chain;   // face chain (primal z) or dual-face chain (dual z)
};

// For z with zero free class: the minimal p with p z = boundary(chain).
inline BoundingData bounding_data(const HomologyProfile& profile, const Cycle& z) {
    ClassCoordinates coords = class_of(profile, z);
    if (!coords.free_is_zero())
        throw std::invalid_argument("cycle has nonzero free class: no finite multiple bounds");
    Integer order = 1;
    for (std::size_t i = 0; i < coords.torsion.size(); ++i) {
        const Integer& p = profile.torsion[i];
        Integer g = gcd(coords.torsion[i], p);
        order = lcm(order, p / g);
    }
    const CellComplex& cx = z.side == Side::primal ? profile.complex : profile.dual_complex;
    std::vector<Integer> target(z.components);
    for (Integer& x : target) x *= order;
    auto chain = solve_integer(cx.boundary2, target);
    if (!chain) throw std::logic_error("order multiple of torsion cycle failed to bound");
    return {order, std::move(*chain)};
}

// lk(z1, z2) = (chain . z2) / p where p z1 = boundary(chain); exact rational,
// not reduced mod 1. z1 primal with zero free class, z2 a dual cycle.
inline Rational linking_number(const HomologyProfile& profile, const Cycle& z1, const Cycle& z2) {
    if (z1.side != Side::primal || z2.side != Side::dual)
        throw std::invalid_argument("linking_number expects (primal, dual) cycles");
    if (!is_cycle(profile.complex, z2))
        throw std::invalid_argument("second argument is not a dual cycle");
    BoundingData bd = bounding_data(profile, z1);
    Integer dot = std::inner_product(bd.chain.begin(), bd.chain.end(), z2.components.begin(),
                                     Integer(0));
    return Rational(dot, bd.order);
}

struct LinkingData {
    // entry (i,j) = lk(primal torsion generator i, dual torsion generator j) mod 1
    std::vector<std::vector<Rational>> form;
    std::vector<Integer> torsion;

    std::size_t size() const { return form.size(); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return form[i][j]; }

    // Q extended bilinearly to coordinate vectors (primal slot, dual slot)
    Rational pairing(const std::vector<Integer>& primal_coords,
                     const std::vector<Integer>& dual_coords) const {
        Rational q = 0;
        for (std::size_t i = 0; i < form.size(); ++i)
            for (std::size_t j = 0; j < form.size(); ++j)
                if (primal_coords[i] != 0 && dual_coords[j] != 0)
                    q += Rational(primal_coords[i] * dual_coords[j]) * form[i][j];
        return q;
    }
};

namespace detail {

// enumerate all coordinate tuples in prod Z_{p_i}
inline bool next_tuple(std::vector<Integer>& t, const std::vector<Integer>& moduli) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (++t[i] < moduli[i]) return true;
        t[i] = 0;
    }
    return false;
}

} // namespace detail

inline LinkingData linking_form(const HomologyProfile& profile) {
    LinkingData data;
    data.torsion = profile.torsion;
    const std::size_t n = profile.torsion.size();
    data.form.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            data.form[i][j] = mod_one(linking_number(profile, profile.torsion_generators_primal()[i],
                                                     profile.torsion_generators_dual()[j]));
    // nondegeneracy: kappa -> (Q(kappa, .)) must be injective on the torsion group
    if (n > 0) {
        std::vector<Integer> kappa(n, 0);
        do {
            bool zero_kappa = std::all_of(kappa.begin(), kappa.end(),
                                          [](const Integer& x) { return x == 0; });
            if (zero_kappa) continue;
            bool row_zero = true;
            for (std::size_t j = 0; j < n && row_zero; ++j) {
                Rational q = 0;
                for (std::size_t i = 0; i < n; ++i)
                    q += Rational(kappa[i]) * data.form[i][j];
                if (mod_one(q) != 0) row_zero = false;
            }
            if (row_zero) throw std::runtime_error("degenerate torsion linking form");
        } while (detail::next_tuple(kappa, profile.torsion));
    }
    return data;
}

} // namespace tvbf
