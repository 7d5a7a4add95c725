#pragma once

// Exact integer matrix algebra: Smith normal form with tracked unimodular
// transforms, integer linear solving, kernel and image lattice bases.
// All entries are arbitrary-precision integers; nothing here ever rounds.

#include "tvbf/numbers.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace tvbf {

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged initializer");
            for (auto v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
        IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix from_columns(const std::vector<std::vector<Integer>>& cols) {
        IntMatrix m(cols.empty() ? 0 : cols.front().size(), cols.size());
        for (std::size_t j = 0; j < m.cols_; ++j) {
            if (cols[j].size() != m.rows_) throw std::invalid_argument("ragged columns");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        IntMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Integer& a = (*this)(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    std::vector<Integer> operator*(const std::vector<Integer>& v) const {
        if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<Integer> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    std::vector<Integer> column(std::size_t j) const {
        std::vector<Integer> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<Integer> row(std::size_t i) const {
        std::vector<Integer> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    // Bareiss fraction-free determinant
    Integer determinant() const {
        if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
        std::size_t n = rows_;
        if (n == 0) return 1;
        IntMatrix a(*this);
        Integer sign = 1, prev = 1;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (a(k, k) == 0) {
                std::size_t piv = k + 1;
                while (piv < n && a(piv, k) == 0) ++piv;
                if (piv == n) return 0;
                for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
                sign = -sign;
            }
            for (std::size_t i = k + 1; i < n; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            prev = a(k, k);
        }
        return sign * a(n - 1, n - 1);
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Integer> data_;
};

// U * A * V = diag(diagonal), with U, V unimodular and d_i | d_{i+1}.
// u_inv and v_inv are maintained alongside so that A = u_inv * D * v_inv.
struct SmithDecomposition {
    IntMatrix u, u_inv;       // rows x rows
    IntMatrix v, v_inv;       // cols x cols
    std::vector<Integer> diagonal;  // min(rows, cols) entries, zeros trailing
    std::size_t rank = 0;

    IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const {
        IntMatrix d(rows, cols);
        for (std::size_t i = 0; i < diagonal.size(); ++i) d(i, i) = diagonal[i];
        return d;
    }
};

namespace detail {

struct SmithWorker {
    IntMatrix a, u, u_inv, v, v_inv;

    explicit SmithWorker(const IntMatrix& m)
        : a(m),
          u(IntMatrix::identity(m.rows())),
          u_inv(IntMatrix::identity(m.rows())),
          v(IntMatrix::identity(m.cols())),
          v_inv(IntMatrix::identity(m.cols())) {}

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(i, j), a(k, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u(i, j), u(k, j));
        for (std::size_t j = 0; j < u_inv.rows(); ++j) std::swap(u_inv(j, i), u_inv(j, k));
    }

    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, j), a(i, k));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v(i, j), v(i, k));
        for (std::size_t i = 0; i < v_inv.cols(); ++i) std::swap(v_inv(j, i), v_inv(k, i));
    }

    // row_i += c * row_k
    void add_row(std::size_t i, std::size_t k, const Integer& c) {
        if (c == 0) return;
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += c * a(k, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) += c * u(k, j);
        for (std::size_t j = 0; j < u_inv.rows(); ++j) u_inv(j, k) -= c * u_inv(j, i);
    }

    // col_j += c * col_k
    void add_col(std::size_t j, std::size_t k, const Integer& c) {
        if (c == 0) return;
        for (std::size_t i = 0; i < a.rows(); ++i) a(i, j) += c * a(i, k);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) += c * v(i, k);
        for (std::size_t i = 0; i < v_inv.cols(); ++i) v_inv(k, i) -= c * v_inv(j, i);
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = -u(i, j);
        for (std::size_t j = 0; j < u_inv.rows(); ++j) u_inv(j, i) = -u_inv(j, i);
    }

    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < a.rows(); ++i)
            for (std::size_t j = t; j < a.cols(); ++j) {
                if (a(i, j) == 0) continue;
                Integer m = abs(a(i, j));
                if (!found || m < best) {
                    found = true;
                    best = m;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    void run() {
        const std::size_t limit = std::min(a.rows(), a.cols());
        for (std::size_t t = 0; t < limit; ++t) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(t, pi, pj)) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < a.rows(); ++i) {
                    if (a(i, t) == 0) continue;
                    Integer q = floor_div(a(i, t), a(t, t));
                    add_row(i, t, -q);
                    if (a(i, t) != 0) {  // remainder smaller than pivot: promote it
                        swap_rows(t, i);
                        dirty = true;
                        break;
                    }
                }
                if (dirty) continue;
                for (std::size_t j = t + 1; j < a.cols(); ++j) {
                    if (a(t, j) == 0) continue;
                    Integer q = floor_div(a(t, j), a(t, t));
                    add_col(j, t, -q);
                    if (a(t, j) != 0) {
                        swap_cols(t, j);
                        dirty = true;
                        break;
                    }
                }
                if (dirty) continue;
                // pivot must divide every remaining entry
                bool fixed = true;
                for (std::size_t i = t + 1; i < a.rows() && fixed; ++i)
                    for (std::size_t j = t + 1; j < a.cols() && fixed; ++j)
                        if (a(i, j) % a(t, t) != 0) {
                            add_row(t, i, 1);
                            fixed = false;
                        }
                if (fixed) break;
            }
            if (a(t, t) < 0) negate_row(t);
        }
    }
};

} // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
    detail::SmithWorker w(m);
    w.run();
    SmithDecomposition s;
    s.u = std::move(w.u);
    s.u_inv = std::move(w.u_inv);
    s.v = std::move(w.v);
    s.v_inv = std::move(w.v_inv);
    const std::size_t limit = std::min(m.rows(), m.cols());
    s.diagonal.resize(limit);
    for (std::size_t i = 0; i < limit; ++i) {
        s.diagonal[i] = w.a(i, i);
        if (s.diagonal[i] != 0) ++s.rank;
    }
    return s;
}

inline std::size_t matrix_rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

// Basis of the integer kernel lattice {x : A x = 0}; the lattice is saturated,
// so the returned vectors also span the rational kernel.
inline std::vector<std::vector<Integer>> kernel_basis(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    std::vector<std::vector<Integer>> basis;
    for (std::size_t j = s.rank; j < m.cols(); ++j) basis.push_back(s.v.column(j));
    return basis;
}

// Basis of the image lattice {A x : x integral}.
inline std::vector<std::vector<Integer>> image_basis(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    std::vector<std::vector<Integer>> basis;
    for (std::size_t j = 0; j < s.rank; ++j) {
        std::vector<Integer> col = s.u_inv.column(j);
        for (Integer& x : col) x *= s.diagonal[j];
        basis.push_back(std::move(col));
    }
    return basis;
}

namespace detail {

// Row Hermite form with positive pivots and reduced entries above each pivot.
inline std::vector<std::vector<Integer>> row_hermite(std::vector<std::vector<Integer>> rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows.front().size();
    std::size_t r = 0;
    for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Integer q = floor_div(rows[i][col], rows[r][col]);
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] == 0) continue;
        if (rows[r][col] < 0)
            for (std::size_t j = 0; j < n; ++j) rows[r][j] = -rows[r][j];
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = floor_div(rows[i][col], rows[r][col]);
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Canonical coset representative of x modulo the lattice spanned by `basis`,
// reducing at trailing pivot positions (reverse coordinates, Hermite, reduce).
inline std::vector<Integer> reduce_mod_lattice(std::vector<Integer> x,
                                               const std::vector<std::vector<Integer>>& basis) {
    if (basis.empty()) return x;
    const std::size_t n = x.size();
    std::vector<std::vector<Integer>> rev(basis.size(), std::vector<Integer>(n));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) rev[i][j] = basis[i][n - 1 - j];
    rev = row_hermite(std::move(rev));
    std::vector<Integer> xr(n);
    for (std::size_t j = 0; j < n; ++j) xr[j] = x[n - 1 - j];
    for (const auto& row : rev) {
        std::size_t piv = 0;
        while (piv < n && row[piv] == 0) ++piv;
        if (piv == n) continue;
        Integer q = floor_div(xr[piv], row[piv]);
        if (q == 0) continue;
        for (std::size_t j = piv; j < n; ++j) xr[j] -= q * row[j];
    }
    for (std::size_t j = 0; j < n; ++j) x[j] = xr[n - 1 - j];
    return x;
}

} // namespace detail

// One integer solution of A x = b, or nullopt when none exists.
// The solution is canonical: it is reduced modulo the kernel lattice of A,
// so identical inputs always produce the identical vector.
inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                         const std::vector<Integer>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
    SmithDecomposition s = smith_normal_form(a);
    std::vector<Integer> c = s.u * b;
    std::vector<Integer> y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < s.diagonal.size() && s.diagonal[i] != 0) {
            if (c[i] % s.diagonal[i] != 0) return std::nullopt;
            y[i] = c[i] / s.diagonal[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Integer> x = s.v * y;
    std::vector<std::vector<Integer>> kernel;
    for (std::size_t j = s.rank; j < a.cols(); ++j) kernel.push_back(s.v.column(j));
    return detail::reduce_mod_lattice(std::move(x), kernel);
}

// Membership of b in the image lattice of A.
inline bool in_image_lattice(const IntMatrix& a, const std::vector<Integer>& b) {
    return solve_integer(a, b).has_value();
}

} // namespace tvbf
