#pragma once

// A closed oriented 3-manifold presented as a cellular decomposition with
// integer boundary operators, plus the dual decomposition obtained by
// transposing them. Convention: boundary_k has one column per k-cell and one
// row per (k-1)-cell, so the column of a cell lists its boundary chain.

#include "tvbf/intmat.hpp"

#include <string>
#include <vector>

namespace tvbf {

struct CellComplex {
    std::string name;
    std::size_t cells3 = 0;   // P
    std::size_t faces = 0;    // F
    std::size_t edges = 0;    // E
    std::size_t vertices = 0; // V
    IntMatrix boundary3;      // F x P
    IntMatrix boundary2;      // E x F
    IntMatrix boundary1;      // V x E

    bool same_structure(const CellComplex& o) const {
        return cells3 == o.cells3 && faces == o.faces && edges == o.edges &&
               vertices == o.vertices && boundary3 == o.boundary3 && boundary2 == o.boundary2 &&
               boundary1 == o.boundary1;
    }
    bool operator==(const CellComplex& o) const { return name == o.name && same_structure(o); }
};

enum class Side { primal, dual };

// Integer 1-cycle: components over edges (primal) or over faces, i.e. dual
// edges (dual).
struct Cycle {
    Side side = Side::primal;
    std::vector<Integer> components;

    static Cycle primal(std::vector<Integer> v) { return {Side::primal, std::move(v)}; }
    static Cycle dual(std::vector<Integer> v) { return {Side::dual, std::move(v)}; }

    Cycle operator+(const Cycle& o) const {
        if (side != o.side || components.size() != o.components.size())
            throw std::invalid_argument("cycle addition: mismatched sides or lengths");
        Cycle r(*this);
        for (std::size_t i = 0; i < components.size(); ++i) r.components[i] += o.components[i];
        return r;
    }
    Cycle scaled(const Integer& c) const {
        Cycle r(*this);
        for (Integer& x : r.components) x *= c;
        return r;
    }
};

inline bool is_cycle(const CellComplex& c, const Cycle& z) {
    if (z.side == Side::primal) {
        if (z.components.size() != c.edges) return false;
        std::vector<Integer> b = c.boundary1 * z.components;
        return std::all_of(b.begin(), b.end(), [](const Integer& x) { return x == 0; });
    }
    if (z.components.size() != c.faces) return false;
    std::vector<Integer> b = c.boundary3.transpose() * z.components;
    return std::all_of(b.begin(), b.end(), [](const Integer& x) { return x == 0; });
}

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const ValidationCheck& c) { return c.passed; });
    }
    std::string to_string() const {
        std::string out;
        for (const auto& c : checks) {
            out += (c.passed ? "ok:   " : "FAIL: ") + c.name;
            if (!c.detail.empty()) out += " (" + c.detail + ")";
            out += "\n";
        }
        return out;
    }
};

namespace detail {

inline ValidationCheck check_product_zero(const IntMatrix& a, const IntMatrix& b,
                                          const std::string& name) {
    IntMatrix prod = a * b;
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j)
            if (prod(i, j) != 0)
                return {name, false,
                        "entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") = " + prod(i, j).str()};
    return {name, true, ""};
}

} // namespace detail

inline ValidationReport validate(const CellComplex& c) {
    ValidationReport r;
    bool dims_ok = c.boundary3.rows() == c.faces && c.boundary3.cols() == c.cells3 &&
                   c.boundary2.rows() == c.edges && c.boundary2.cols() == c.faces &&
                   c.boundary1.rows() == c.vertices && c.boundary1.cols() == c.edges;
    r.checks.push_back({"boundary matrix dimensions match cell counts", dims_ok, ""});
    if (!dims_ok) return r;

    r.checks.push_back(detail::check_product_zero(c.boundary1, c.boundary2,
                                                  "boundary_1 · boundary_2 = 0"));
    r.checks.push_back(detail::check_product_zero(c.boundary2, c.boundary3,
                                                  "boundary_2 · boundary_3 = 0"));

    long euler = static_cast<long>(c.vertices) - static_cast<long>(c.edges) +
                 static_cast<long>(c.faces) - static_cast<long>(c.cells3);
    r.checks.push_back({"Euler characteristic V - E + F - P = 0", euler == 0,
                        "V-E+F-P = " + std::to_string(euler)});

    std::size_t rank1 = matrix_rank(c.boundary1);
    std::size_t rank2 = matrix_rank(c.boundary2);
    std::size_t rank3 = matrix_rank(c.boundary3);

    r.checks.push_back({"connected: rank(boundary_1) = V - 1", c.vertices >= 1 && rank1 == c.vertices - 1,
                        "rank = " + std::to_string(rank1)});
    r.checks.push_back({"closed oriented: rank(boundary_3) = P - 1",
                        c.cells3 >= 1 && rank3 == c.cells3 - 1, "rank = " + std::to_string(rank3)});

    auto top_kernel = kernel_basis(c.boundary3);
    bool h3_ok = top_kernel.size() == 1;
    std::string h3_detail = "kernel rank = " + std::to_string(top_kernel.size());
    if (h3_ok)
        for (const Integer& x : top_kernel.front())
            if (x != 1 && x != -1) {
                h3_ok = false;
                h3_detail = "fundamental class coefficient " + x.str();
                break;
            }
    r.checks.push_back({"H_3 = Z with fundamental class coefficients ±1", h3_ok, h3_detail});

    // Betti symmetry b_1 = b_2 (consequence of Poincare duality)
    long b1 = static_cast<long>(c.edges) - static_cast<long>(rank1) - static_cast<long>(rank2);
    long b2 = static_cast<long>(c.faces) - static_cast<long>(rank2) - static_cast<long>(rank3);
    r.checks.push_back({"Betti symmetry b_1 = b_2", b1 >= 0 && b1 == b2,
                        "b_1 = " + std::to_string(b1) + ", b_2 = " + std::to_string(b2)});
    return r;
}

class ValidationError : public std::runtime_error {
  public:
    ValidationError(std::string message, ValidationReport report)
        : std::runtime_error(std::move(message)), report_(std::move(report)) {}
    const ValidationReport& report() const { return report_; }

  private:
    ValidationReport report_;
};

inline void require_valid(const CellComplex& c) {
    ValidationReport r = validate(c);
    if (!r.all_passed())
        throw ValidationError("invalid cell complex '" + c.name + "':\n" + r.to_string(), r);
}

// Generator of H_3 = Z, normalized so its first nonzero coefficient is +1.
inline std::vector<Integer> fundamental_class(const CellComplex& c) {
    auto kernel = kernel_basis(c.boundary3);
    if (kernel.size() != 1)
        throw std::invalid_argument("top homology of '" + c.name + "' is not Z");
    std::vector<Integer> gen = kernel.front();
    for (const Integer& x : gen) {
        if (x == 0) continue;
        if (x < 0)
            for (Integer& y : gen) y = -y;
        break;
    }
    return gen;
}

// Dual decomposition: counts swap (V*, E*, F*, P*) = (P, F, E, V) and the
// boundary operators are the transposes of the originals.
inline CellComplex dualize(const CellComplex& c) {
    require_valid(c);
    CellComplex d;
    if (!c.name.empty() && c.name.back() == '*')
        d.name = c.name.substr(0, c.name.size() - 1);
    else
        d.name = c.name + "*";
    d.cells3 = c.vertices;
    d.faces = c.edges;
    d.edges = c.faces;
    d.vertices = c.cells3;
    d.boundary3 = c.boundary1.transpose(); // E x V
    d.boundary2 = c.boundary2.transpose(); // F x E
    d.boundary1 = c.boundary3.transpose(); // P x F
    return d;
}

// Builtin genus-1 Heegaard decompositions.
//
// Orientation convention: face co-orientations are fixed so that the standard
// holonomy expectation values come out with positive phase on s3 and s1xs2
// (e.g. <<e_1, e^2>> = e(2*pi*i/N) on s3); this negates the section-face
// columns of boundary_2 relative to the mirror convention. rp3 equals lens(2).
inline CellComplex builtin_lens(long p) {
    if (p < 2) throw std::invalid_argument("lens space order must be >= 2");
    CellComplex c;
    c.name = "lens(" + std::to_string(p) + ")";
    c.cells3 = 2;
    c.faces = 4;
    c.edges = 4;
    c.vertices = 2;
    c.boundary3 = IntMatrix{{1, -1}, {1, -1}, {0, 0}, {0, 0}};
    c.boundary2 = IntMatrix(4, 4);
    // dS_1 = (p-1)(e_1+e_4) - (e_2+e_3), dS_2 = -dS_1, dS_3 = e_1+e_2, dS_4 = e_3+e_4
    const Integer w = p - 1;
    c.boundary2(0, 0) = w;
    c.boundary2(1, 0) = -1;
    c.boundary2(2, 0) = -1;
    c.boundary2(3, 0) = w;
    c.boundary2(0, 1) = -w;
    c.boundary2(1, 1) = 1;
    c.boundary2(2, 1) = 1;
    c.boundary2(3, 1) = -w;
    c.boundary2(0, 2) = 1;
    c.boundary2(1, 2) = 1;
    c.boundary2(2, 3) = 1;
    c.boundary2(3, 3) = 1;
    c.boundary1 = IntMatrix{{-1, 1, -1, 1}, {1, -1, 1, -1}};
    return c;
}

inline CellComplex builtin(const std::string& name, long lens_order = 0) {
    CellComplex c;
    if (name == "s3") {
        c.name = "s3";
        c.cells3 = 2;
        c.faces = 3;
        c.edges = 2;
        c.vertices = 1;
        c.boundary3 = IntMatrix{{1, -1}, {0, 0}, {0, 0}};
        c.boundary2 = IntMatrix{{0, -1, 0}, {0, 0, -1}};
        c.boundary1 = IntMatrix{{0, 0}};
    } else if (name == "s1xs2") {
        c.name = "s1xs2";
        c.cells3 = 2;
        c.faces = 4;
        c.edges = 5;
        c.vertices = 3;
        c.boundary3 = IntMatrix{{1, -1}, {1, -1}, {0, 0}, {0, 0}};
        c.boundary2 = IntMatrix{{0, 0, -1, -1},
                                {0, 0, -1, -1},
                                {0, 0, -1, -1},
                                {1, -1, 0, 0},
                                {-1, 1, 0, 0}};
        c.boundary1 = IntMatrix{{-1, 0, 1, 0, 0}, {1, -1, 0, 0, 0}, {0, 1, -1, 0, 0}};
    } else if (name == "rp3") {
        c = builtin_lens(2);
        c.name = "rp3";
    } else if (name == "lens") {
        c = builtin_lens(lens_order);
    } else {
        throw std::invalid_argument("unknown builtin manifold '" + name + "'");
    }
    require_valid(c);
    return c;
}

} // namespace tvbf
