#pragma once

// Exact finite sums of roots of unity with rational coefficients.
// A value is stored as {phase q in [0,1) -> coefficient}, meaning
// sum_q c_q * e^{2*pi*i*q}. Equality is decided exactly by lifting to a
// common root order n and reducing the coefficient polynomial modulo the
// n-th cyclotomic polynomial.

#include "tvbf/numbers.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace tvbf {

namespace detail {

using Poly = std::vector<Integer>;  // coefficients, index = degree

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// exact division, valid when divisor is monic and divides evenly
inline Poly poly_div_exact(Poly num, const Poly& den) {
    Poly quot(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0);
    while (num.size() >= den.size()) {
        Integer c = num.back();
        std::size_t shift = num.size() - den.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        poly_trim(num);
        if (num.empty()) break;
    }
    return quot;
}

inline Poly poly_mod(Poly p, const Poly& m) {
    while (p.size() >= m.size()) {
        Integer c = p.back();
        std::size_t shift = p.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i) p[shift + i] -= c * m[i];
        poly_trim(p);
    }
    return p;
}

// Phi_n via x^n - 1 = prod_{d | n} Phi_d
inline const Poly& cyclotomic_polynomial(long n) {
    static std::map<long, Poly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::function<const Poly&(long)> get = [&](long k) -> const Poly& {
        auto found = cache.find(k);
        if (found != cache.end()) return found->second;
        Poly xk_minus_1(k + 1);
        xk_minus_1[0] = -1;
        xk_minus_1[k] = 1;
        Poly result = xk_minus_1;
        for (long d = 1; d < k; ++d)
            if (k % d == 0) result = poly_div_exact(std::move(result), get(d));
        return cache.emplace(k, std::move(result)).first->second;
    };
    return get(n);
}

} // namespace detail

class PhaseSum {
  public:
    PhaseSum() = default;

    static PhaseSum zero() { return PhaseSum(); }

    static PhaseSum from_rational(const Rational& c) {
        PhaseSum p;
        p.add_term(Rational(0), c);
        return p;
    }

    static PhaseSum from_integer(const Integer& c) { return from_rational(Rational(c)); }

    // e^{2*pi*i*q}, q taken mod 1
    static PhaseSum from_phase(const Rational& q, const Rational& coeff = Rational(1)) {
        PhaseSum p;
        p.add_term(mod_one(q), coeff);
        return p;
    }

    const std::map<Rational, Rational>& terms() const { return terms_; }
    bool structurally_zero() const { return terms_.empty(); }

    PhaseSum& operator+=(const PhaseSum& o) {
        for (const auto& [q, c] : o.terms_) add_term(q, c);
        return *this;
    }
    PhaseSum operator+(const PhaseSum& o) const {
        PhaseSum r(*this);
        r += o;
        return r;
    }
    PhaseSum operator-() const {
        PhaseSum r;
        for (const auto& [q, c] : terms_) r.terms_.emplace(q, -c);
        return r;
    }
    PhaseSum operator-(const PhaseSum& o) const { return *this + (-o); }

    PhaseSum scale(const Rational& r) const {
        PhaseSum out;
        if (r == 0) return out;
        for (const auto& [q, c] : terms_) out.terms_.emplace(q, c * r);
        return out;
    }

    PhaseSum operator*(const PhaseSum& o) const {
        PhaseSum out;
        for (const auto& [q1, c1] : terms_)
            for (const auto& [q2, c2] : o.terms_) out.add_term(mod_one(q1 + q2), c1 * c2);
        return out;
    }

    // exact zero test in the cyclotomic field
    bool is_zero() const {
        if (terms_.empty()) return true;
        Integer n = 1;
        for (const auto& [q, c] : terms_) n = lcm(n, denominator(q));
        long order = to_int64(n);
        // integer polynomial in the primitive order-th root
        Integer coeff_den = 1;
        for (const auto& [q, c] : terms_) coeff_den = lcm(coeff_den, denominator(c));
        detail::Poly poly(order);
        for (const auto& [q, c] : terms_) {
            Integer k = numerator(q) * (n / denominator(q));
            poly[to_int64(k)] += numerator(c) * (coeff_den / denominator(c));
        }
        detail::poly_trim(poly);
        if (poly.empty()) return true;
        detail::Poly rem = detail::poly_mod(std::move(poly), detail::cyclotomic_polynomial(order));
        return rem.empty();
    }

    bool equals(const PhaseSum& o) const { return (*this - o).is_zero(); }

    // Normal form over the power basis of the primitive root of order
    // lcm(denominators): exponents reduced modulo the cyclotomic polynomial,
    // with denominators 2m (m odd) folded into order m first, since
    // e^{2pi i k/2m} = -e^{2pi i (k+m)/2m}. Iterated to a fixed point so the
    // result is stable; equal values computed over the same root orders
    // canonicalize to the identical term list.
    PhaseSum canonicalized() const {
        PhaseSum current = *this;
        for (;;) {
            PhaseSum next = canonical_pass(current);
            if (next.terms_ == current.terms_) return next;
            current = std::move(next);
        }
    }

    // |result - exact value| < 10^-precision for precision up to 15; the
    // evaluation always runs at full extended precision regardless.
    std::complex<double> evaluate(int precision = 15) const {
        if (precision < 1 || precision > 15)
            throw std::domain_error("evaluate: precision must be between 1 and 15");
        constexpr long double tau = 6.283185307179586476925286766559005768L;
        long double re = 0, im = 0;
        for (const auto& [q, c] : terms_) {
            long double coeff = c.convert_to<long double>();
            long double angle = tau * q.convert_to<long double>();
            re += coeff * std::cos(angle);
            im += coeff * std::sin(angle);
        }
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    // canonical text form: terms sorted by phase, "c·e(2πi·a/b)"
    std::string to_exact_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [q, c] : terms_) {
            std::string term = render_term(q, c);
            if (first) {
                out = term;
                first = false;
            } else if (!term.empty() && term[0] == '-') {
                out += " - " + term.substr(1);
            } else {
                out += " + " + term;
            }
        }
        return out;
    }

    // 12 significant digits, "x + yi"
    std::string to_float_string() const {
        std::complex<double> z = evaluate();
        char buf[96];
        if (z.imag() < 0)
            std::snprintf(buf, sizeof buf, "%.12g - %.12gi", z.real(), -z.imag());
        else
            std::snprintf(buf, sizeof buf, "%.12g + %.12gi", z.real(), z.imag());
        return buf;
    }

  private:
    static PhaseSum canonical_pass(const PhaseSum& in) {
        if (in.terms_.empty()) return PhaseSum();
        PhaseSum folded;
        for (const auto& [q, c] : in.terms_) {
            if (mod_floor(denominator(q), 4) == 2)
                folded.add_term(mod_one(q + Rational(1, 2)), -c);
            else
                folded.add_term(q, c);
        }
        if (folded.terms_.empty()) return PhaseSum();
        Integer n = 1;
        for (const auto& [q, c] : folded.terms_) n = lcm(n, denominator(q));
        long order = to_int64(n);
        std::vector<Rational> coeffs(order);
        for (const auto& [q, c] : folded.terms_)
            coeffs[to_int64(numerator(q) * (n / denominator(q)))] += c;
        const detail::Poly& modulus = detail::cyclotomic_polynomial(order);
        const std::size_t degree = modulus.size() - 1;
        for (std::size_t k = coeffs.size(); k-- > degree;) {
            Rational c = coeffs[k];
            if (c == 0) continue;
            coeffs[k] = 0;
            for (std::size_t i = 0; i < degree; ++i)
                coeffs[k - degree + i] -= c * Rational(modulus[i]);
        }
        PhaseSum out;
        for (std::size_t k = 0; k < degree && k < coeffs.size(); ++k)
            if (coeffs[k] != 0) out.add_term(Rational(Integer(k), n), coeffs[k]);
        return out;
    }

    static std::string render_term(const Rational& q, const Rational& c) {
        if (q == 0) return to_string(c);
        std::string phase =
            "e(2πi·" + numerator(q).str() + "/" + denominator(q).str() + ")";
        if (c == 1) return phase;
        if (c == -1) return "-" + phase;
        return to_string(c) + "·" + phase;
    }

    void add_term(const Rational& q, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(q, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Rational, Rational> terms_;
};

// e^{2*pi*i*k/n}
inline PhaseSum root_of_unity(const Integer& k, const Integer& n) {
    if (n < 1) throw std::domain_error("root_of_unity: order must be positive");
    return PhaseSum::from_phase(Rational(mod_floor(k, n), n));
}

inline bool is_zero(const PhaseSum& a) { return a.is_zero(); }
inline bool equals_exact(const PhaseSum& a, const PhaseSum& b) { return a.equals(b); }

} // namespace tvbf
