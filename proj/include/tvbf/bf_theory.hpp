#pragma once

// Closed-form Z_N BF evaluation from homology and linking data: Gauss sums
// over the torsion group, free-class deltas and the linking-number phase.
// No enumeration over labelings happens here.

#include "tvbf/homology.hpp"
#include "tvbf/phase_sum.hpp"

namespace tvbf {

struct BfObservable {
    Cycle gamma1;  // primal
    Cycle gamma2;  // dual
    Integer level; // N >= 1
};

// 1 iff every free coordinate is divisible by N
inline int free_delta(const ClassCoordinates& coords, const Integer& level) {
    for (const Integer& f : coords.free)
        if (mod_floor(f, level) != 0) return 0;
    return 1;
}

// Z_BF = sum over (primal, dual) torsion classes of e^{-2 pi i N Q(k1, k2)}
inline PhaseSum bf_partition(const HomologyProfile& profile, const LinkingData& linking,
                             const Integer& level) {
    if (level < 1) throw std::domain_error("level must be >= 1");
    const std::size_t n = profile.torsion.size();
    PhaseSum total;
    std::vector<Integer> k1(n, 0);
    do {
        std::vector<Integer> k2(n, 0);
        do {
            Rational phase = -Rational(level) * linking.pairing(k1, k2);
            total += PhaseSum::from_phase(mod_one(phase));
        } while (detail::next_tuple(k2, profile.torsion));
    } while (detail::next_tuple(k1, profile.torsion));
    return total;
}

namespace detail {

// strip the full free part: z - sum_a f_a * (free generator a)
inline Cycle strip_free_part(const HomologyProfile& profile, const Cycle& z,
                             const ClassCoordinates& coords) {
    const auto& gens =
        z.side == Side::primal ? profile.primal.free_generators : profile.dual.free_generators;
    Cycle stripped = z;
    for (std::size_t a = 0; a < coords.free.size(); ++a)
        if (coords.free[a] != 0)
            stripped = stripped + gens[a].scaled(-coords.free[a]);
    return stripped;
}

} // namespace detail

// <<gamma1, gamma2>> = delta[f1] delta[f2] e^{-2 pi i lk(g1', g2')/N}
//                      * sum_{k1,k2} e^{-2 pi i (N Q(k1,k2) + Q(tau1,k2) + Q(k1,tau2))}
// where g_i' strips the free part, tau_i are torsion classes, k1 runs over
// primal and k2 over dual torsion classes (the two slots of the mixed form).
inline PhaseSum bf_expectation(const HomologyProfile& profile, const LinkingData& linking,
                               const BfObservable& obs) {
    const Integer& level = obs.level;
    if (level < 1) throw std::domain_error("level must be >= 1");
    if (obs.gamma1.side != Side::primal || obs.gamma2.side != Side::dual)
        throw std::invalid_argument("observable must pair a primal with a dual cycle");

    ClassCoordinates c1 = class_of(profile, obs.gamma1);
    ClassCoordinates c2 = class_of(profile, obs.gamma2);
    if (!free_delta(c1, level) || !free_delta(c2, level)) return PhaseSum::zero();

    Cycle g1 = detail::strip_free_part(profile, obs.gamma1, c1);
    Cycle g2 = detail::strip_free_part(profile, obs.gamma2, c2);
    Rational lk = linking_number(profile, g1, g2);

    const std::size_t n = profile.torsion.size();
    PhaseSum total;
    std::vector<Integer> k1(n, 0);
    do {
        std::vector<Integer> k2(n, 0);
        do {
            Rational phase = -Rational(level) * linking.pairing(k1, k2);
            phase -= linking.pairing(c1.torsion, k2);  // Q(tau1, k2): tau1 primal, k2 dual
            phase -= linking.pairing(k1, c2.torsion);  // Q(k1, tau2): k1 primal, tau2 dual
            total += PhaseSum::from_phase(mod_one(phase));
        } while (detail::next_tuple(k2, profile.torsion));
    } while (detail::next_tuple(k1, profile.torsion));

    return PhaseSum::from_phase(mod_one(-lk / Rational(level))) * total;
}

} // namespace tvbf
