#include "tvbf/phase_sum.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace tvbf;

namespace {

PhaseSum random_sum(std::mt19937& rng, int max_den) {
    std::uniform_int_distribution<int> den(1, max_den);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<int> terms(0, 4);
    PhaseSum s;
    int n = terms(rng);
    for (int i = 0; i < n; ++i) {
        int d = den(rng);
        int coeff_den = den(rng);
        s += PhaseSum::from_phase(Rational(small(rng), d), Rational(small(rng), coeff_den));
    }
    return s;
}

} // namespace

TEST_CASE("roots of unity") {
    REQUIRE(equals_exact(root_of_unity(1, 2), PhaseSum::from_integer(-1)));
    REQUIRE(equals_exact(root_of_unity(0, 5), PhaseSum::from_integer(1)));
    REQUIRE(root_of_unity(7, 3).terms().begin()->first == Rational(1, 3));
    REQUIRE_THROWS_AS(root_of_unity(1, 0), std::domain_error);
}

TEST_CASE("ring operations") {
    PhaseSum a = root_of_unity(1, 3).scale(Rational(2)) + PhaseSum::from_rational(Rational(1, 2));
    REQUIRE(equals_exact(a + PhaseSum::zero(), a));
    REQUIRE(equals_exact(root_of_unity(1, 4) * root_of_unity(1, 4), root_of_unity(1, 2)));
    for (int n = 2; n <= 8; ++n) {
        PhaseSum all;
        for (int k = 0; k < n; ++k) all += root_of_unity(k, n);
        REQUIRE(all.is_zero());
    }
}

TEST_CASE("exact equality through cyclotomic reduction") {
    REQUIRE(equals_exact(root_of_unity(1, 6), root_of_unity(2, 3).scale(Rational(-1))));
    PhaseSum third_roots = PhaseSum::from_integer(1) + root_of_unity(1, 3) + root_of_unity(2, 3);
    REQUIRE(third_roots.is_zero());
    PhaseSum not_zero = PhaseSum::from_integer(1) + root_of_unity(1, 4);
    REQUIRE_FALSE(not_zero.is_zero());
    // non-obvious rewriting: -e^{-i pi/3} = e^{2 i pi /3}
    REQUIRE(equals_exact(root_of_unity(5, 6).scale(Rational(-1)), root_of_unity(1, 3)));
}

TEST_CASE("equality is consistent with floating evaluation") {
    std::mt19937 rng(4242);
    int zeros = 0;
    for (int trial = 0; trial < 400; ++trial) {
        PhaseSum s = random_sum(rng, 24);
        if (trial % 3 == 0) {
            // engineered exact zero: multiply by the full sum of n-th roots
            int n = 2 + trial % 7;
            PhaseSum all;
            for (int k = 0; k < n; ++k) all += root_of_unity(k, n);
            s = s * all;
        }
        bool exact = s.is_zero();
        bool approx = std::abs(s.evaluate()) < 1e-9;
        REQUIRE(exact == approx);
        zeros += exact;
    }
    REQUIRE(zeros > 50);  // the generator actually exercises the zero path
}

TEST_CASE("multiplication is commutative and distributive") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        PhaseSum a = random_sum(rng, 12), b = random_sum(rng, 12), c = random_sum(rng, 12);
        REQUIRE(equals_exact(a * b, b * a));
        REQUIRE(equals_exact(a * (b + c), a * b + a * c));
    }
}

TEST_CASE("floating evaluation") {
    REQUIRE(std::abs(root_of_unity(1, 4).evaluate(12) - std::complex<double>(0, 1)) < 1e-12);
    REQUIRE(std::abs(PhaseSum::zero().evaluate()) == 0.0);
    PhaseSum three_minus_one = PhaseSum::from_integer(3) + root_of_unity(1, 2);
    REQUIRE(std::abs(three_minus_one.evaluate(12) - std::complex<double>(2, 0)) < 1e-12);
    REQUIRE_THROWS_AS(three_minus_one.evaluate(16), std::domain_error);
}

TEST_CASE("equality is an equivalence relation") {
    std::mt19937 rng(64);
    for (int trial = 0; trial < 40; ++trial) {
        PhaseSum a = random_sum(rng, 12);
        PhaseSum zero_form;  // a nontrivial representation of zero
        int n = 2 + trial % 5;
        for (int k = 0; k < n; ++k) zero_form += root_of_unity(k, n);
        PhaseSum b = a + zero_form;
        PhaseSum c = b + zero_form.scale(Rational(-3, 2));
        REQUIRE(equals_exact(a, a));
        REQUIRE(equals_exact(a, b));
        REQUIRE(equals_exact(b, a));
        REQUIRE(equals_exact(b, c));
        REQUIRE(equals_exact(a, c));  // transitivity across representations
        REQUIRE(is_zero(a - b));
    }
}

TEST_CASE("canonical normal form") {
    // mixed fourth-root counts collapse to the constant they equal
    PhaseSum counts = PhaseSum::from_integer(21) + root_of_unity(1, 4).scale(Rational(12)) +
                      root_of_unity(1, 2).scale(Rational(19)) +
                      root_of_unity(3, 4).scale(Rational(12));
    REQUIRE(counts.canonicalized().to_exact_string() == "2");
    REQUIRE(root_of_unity(1, 2).canonicalized().to_exact_string() == "-1");
    REQUIRE(root_of_unity(1, 5).canonicalized().to_exact_string() == "e(2πi·1/5)");
    // even orders 2m with m odd fold into the order-m field
    REQUIRE(equals_exact(root_of_unity(1, 6).canonicalized(), root_of_unity(1, 6)));
    REQUIRE(root_of_unity(1, 6).canonicalized().terms() ==
            (PhaseSum::from_integer(1) + root_of_unity(1, 3)).terms());
    // a mix collapsing onto a single smaller-field root stabilizes
    PhaseSum mixed = root_of_unity(1, 4) + root_of_unity(3, 4) + root_of_unity(1, 6);
    REQUIRE(mixed.canonicalized().terms() == root_of_unity(1, 6).canonicalized().terms());
    std::mt19937 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        PhaseSum s = random_sum(rng, 18);
        PhaseSum c = s.canonicalized();
        REQUIRE(equals_exact(s, c));
        // idempotent and structurally zero exactly when the value is zero
        REQUIRE(c.canonicalized().terms() == c.terms());
        REQUIRE(c.structurally_zero() == s.is_zero());
    }
}

TEST_CASE("text rendering") {
    REQUIRE(PhaseSum::zero().to_exact_string() == "0");
    REQUIRE(root_of_unity(1, 5).to_exact_string() == "e(2πi·1/5)");
    PhaseSum v = PhaseSum::from_integer(4);
    REQUIRE(v.to_exact_string() == "4");
    PhaseSum mix = PhaseSum::from_rational(Rational(-1, 2)) + root_of_unity(1, 3).scale(Rational(2));
    REQUIRE(mix.to_exact_string() == "-1/2 + 2·e(2πi·1/3)");
    PhaseSum neg = root_of_unity(1, 6).scale(Rational(-1));
    REQUIRE(neg.to_exact_string() == "-e(2πi·1/6)");
    REQUIRE(PhaseSum::from_integer(2).to_float_string() == "2 + 0i");
}
