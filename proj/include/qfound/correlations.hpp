// correlations.hpp
//
// Joint detection probabilities and correlation functions for the
// two-particle singlet and for polarization-entangled photon pairs. Each
// quantity is available through two independent routes - a trigonometric
// closed form and a direct contraction against the entangled state - so
// tests can cross-check one against the other.

#pragma once

#include <cmath>
#include <numbers>

#include "qfound/linalg.hpp"
#include "qfound/states.hpp"

namespace qfound {

// Probability that particle 1 registers +1 along a and particle 2 registers
// +1 along b, for the singlet. Trigonometric closed form.
inline double singlet_joint_probability(const direction& a, const direction& b) {
    double sa = std::sin(a.theta / 2.0), ca = std::cos(a.theta / 2.0);
    double sb = std::sin(b.theta / 2.0), cb = std::cos(b.theta / 2.0);
    return 0.5 * (sa * sa * cb * cb + sb * sb * ca * ca -
                  0.5 * std::sin(a.theta) * std::sin(b.theta) * std::cos(a.phi - b.phi));
}

// Same probability by contracting |a,+1> (x) |b,+1> against the singlet.
inline double singlet_joint_probability_direct(const direction& a, const direction& b) {
    cplx amp = inner(tensor(spin_state(a, 1), spin_state(b, 1)), singlet());
    return std::norm(amp);
}

// Post-measurement product state after a singlet measurement along `axis`
// on particle 1 returned `outcome`: particle 2 is left pointing the other
// way along the same axis.
inline state_vector collapse_singlet(int outcome, const direction& axis) {
    if (outcome != 1 && outcome != -1)
        throw std::invalid_argument("collapse_singlet: outcome must be +1 or -1");
    return tensor(spin_state(axis, outcome), spin_state(axis, -outcome));
}

// p(X|Y) = p(X and Y) / p(Y). joint must not exceed marginal.
inline double conditional_probability(double joint, double marginal) {
    if (!is_finite(joint) || !is_finite(marginal))
        throw std::invalid_argument("conditional_probability: non-finite input");
    if (marginal <= eq_tol)
        throw std::invalid_argument("conditional_probability: marginal too small");
    if (joint < -eq_tol || joint > marginal + eq_tol)
        throw std::invalid_argument("conditional_probability: joint outside [0, marginal]");
    return std::clamp(joint / marginal, 0.0, 1.0);
}

// Detection channels behind the two polarizers: each photon exits either
// parallel to its polarizer axis or perpendicular to it.
enum class polarizer_exit { parallel, perpendicular };

struct photon_channel {
    polarizer_exit first;
    polarizer_exit second;
};

// Closed-form joint amplitude for a photon pair of the given kind analyzed
// at angles t1 and t2. Both photons parallel (or both perpendicular) share
// one amplitude; the mixed channels differ by a sign.
inline cplx photon_amplitude(photon_kind kind, const photon_channel& ch,
                             const polarization_angle& t1, const polarization_angle& t2) {
    double d = t1.theta - t2.theta;
    double r = 1.0 / std::numbers::sqrt2;
    bool same = ch.first == ch.second;
    bool first_perp = ch.first == polarizer_exit::perpendicular;
    if (kind == photon_kind::type_i) {
        if (same) return cplx{r * std::sin(d), 0.0};
        return cplx{(first_perp ? 1.0 : -1.0) * r * std::cos(d), 0.0};
    }
    if (same) return cplx{r * std::cos(d), 0.0};
    return cplx{(first_perp ? -1.0 : 1.0) * r * std::sin(d), 0.0};
}

// Same amplitude by contracting the rotated analyzer basis against the pair
// state.
inline cplx photon_amplitude_direct(photon_kind kind, const photon_channel& ch,
                                    const polarization_angle& t1,
                                    const polarization_angle& t2) {
    auto [par1, perp1] = photon_basis(t1);
    auto [par2, perp2] = photon_basis(t2);
    const state_vector& s1 = ch.first == polarizer_exit::parallel ? par1 : perp1;
    const state_vector& s2 = ch.second == polarizer_exit::parallel ? par2 : perp2;
    return inner(tensor(s1, s2), psi_photon(kind));
}

inline double photon_joint_probability(photon_kind kind, const photon_channel& ch,
                                       const polarization_angle& t1,
                                       const polarization_angle& t2) {
    return std::norm(photon_amplitude(kind, ch, t1, t2));
}

// Spin correlation E(a, b) = sum over the four outcome pairs of
// (sign1 * sign2) * p(sign1 a, sign2 b), each joint probability contracted
// directly against the singlet. Tests compare this sum with the closed form
// -a.b below.
inline double quantum_correlation(const direction& a, const direction& b) {
    double e = 0.0;
    const state_vector psi = singlet();
    for (int sa : {1, -1})
        for (int sb : {1, -1}) {
            cplx amp = inner(tensor(spin_state(a, sa), spin_state(b, sb)), psi);
            e += sa * sb * std::norm(amp);
        }
    return e;
}

// The closed form -a.b for the singlet correlation.
inline double quantum_correlation_closed_form(const direction& a, const direction& b) {
    return -dot(a, b);
}

}  // namespace qfound
