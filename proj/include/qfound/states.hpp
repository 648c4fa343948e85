// states.hpp
//
// Constructors for the states and measurement settings this library studies:
// spin-1/2 kets along arbitrary directions, the two-particle singlet, photon
// polarization pairs, the three-particle GHZ state, and the two-alternative
// box state.
//
// Conventions, fixed once here and relied on everywhere else:
//   |+n> = cos(theta/2)|u> + e^{i phi} sin(theta/2)|d>
//   |-n> = sin(theta/2)|u> - e^{i phi} cos(theta/2)|d>
// with |u> the spin-up basis ket (index 0) and theta, phi the polar and
// azimuthal angles of the unit vector n. Tensor indices put the left factor
// most significant.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "qfound/linalg.hpp"
#include "qfound/random.hpp"

namespace qfound {

// Measurement direction on the unit sphere.
struct direction {
    double theta;  // polar angle, [0, pi]
    double phi;    // azimuthal angle, [0, 2*pi)

    direction(double theta_, double phi_) : theta(theta_), phi(phi_) {
        if (!is_finite(theta) || !is_finite(phi))
            throw std::invalid_argument("direction: non-finite angle");
        if (theta < 0.0 || theta > std::numbers::pi)
            throw std::invalid_argument("direction: theta outside [0, pi]");
        if (phi < 0.0 || phi >= 2.0 * std::numbers::pi)
            throw std::invalid_argument("direction: phi outside [0, 2*pi)");
    }

    std::array<double, 3> unit_vector() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }

    direction antipode() const {
        double p = phi + std::numbers::pi;
        if (p >= 2.0 * std::numbers::pi) p -= 2.0 * std::numbers::pi;
        return direction(std::numbers::pi - theta, p);
    }

    // Direction at angle t (any real) in the x-z plane; in_plane(s) and
    // in_plane(t) subtend angle |s - t| (mod 2*pi).
    static direction in_plane(double t) {
        double tau = 2.0 * std::numbers::pi;
        t = std::fmod(t, tau);
        if (t < 0.0) t += tau;
        if (t <= std::numbers::pi) return direction(t, 0.0);
        return direction(tau - t, std::numbers::pi);
    }
};

inline double dot(const direction& a, const direction& b) {
    auto u = a.unit_vector(), v = b.unit_vector();
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline double angle_between(const direction& a, const direction& b) {
    return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

inline direction random_direction(rng_stream& rng) {
    double ct = rng.uniform(-1.0, 1.0);
    double theta = std::acos(ct);
    double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    return direction(theta, phi);
}

// Linear polarizer setting; any finite angle is meaningful.
struct polarization_angle {
    double theta;

    explicit polarization_angle(double theta_) : theta(theta_) {
        if (!is_finite(theta))
            throw std::invalid_argument("polarization_angle: non-finite angle");
    }
};

// Spin-1/2 eigenket along d: outcome +1 gives |+d>, outcome -1 gives |-d>.
inline state_vector spin_state(const direction& d, int outcome) {
    if (outcome != 1 && outcome != -1)
        throw std::invalid_argument("spin_state: outcome must be +1 or -1");
    double c = std::cos(d.theta / 2.0);
    double s = std::sin(d.theta / 2.0);
    cplx phase = std::polar(1.0, d.phi);
    std::vector<cplx> a(2);
    if (outcome == 1) {
        a[0] = cplx{c, 0.0};
        a[1] = phase * s;
    } else {
        a[0] = cplx{s, 0.0};
        a[1] = -phase * c;
    }
    return state_vector(std::move(a), std::vector<std::string>{"u", "d"});
}

// Two spin-1/2 particles with total spin zero:
// (1/sqrt 2)(|ud> - |du>), basis order (uu, ud, du, dd).
inline state_vector singlet() {
    double r = 1.0 / std::numbers::sqrt2;
    return state_vector({cplx{0.0, 0.0}, cplx{r, 0.0}, cplx{-r, 0.0}, cplx{0.0, 0.0}},
                        std::vector<std::string>{"uu", "ud", "du", "dd"});
}

// Photon linear-polarization basis rotated by t from (H, V):
//   |t>  =  cos t |H> + sin t |V>
//   |t_perp> = -sin t |H> + cos t |V>
inline std::pair<state_vector, state_vector> photon_basis(const polarization_angle& t) {
    double c = std::cos(t.theta), s = std::sin(t.theta);
    state_vector par(std::vector<cplx>{cplx{c, 0.0}, cplx{s, 0.0}},
                     std::vector<std::string>{"H", "V"});
    state_vector perp(std::vector<cplx>{cplx{-s, 0.0}, cplx{c, 0.0}},
                      std::vector<std::string>{"H", "V"});
    return {par, perp};
}

// The two entangled photon pairs studied here, basis order (HH, HV, VH, VV).
// type_i:  (1/sqrt 2)(|VH> - |HV>)   (odd-parity pair)
// type_ii: (1/sqrt 2)(|HH> + |VV>)   (even-parity pair)
enum class photon_kind { type_i, type_ii };

inline state_vector psi_photon(photon_kind kind) {
    double r = 1.0 / std::numbers::sqrt2;
    std::vector<std::string> labels{"HH", "HV", "VH", "VV"};
    if (kind == photon_kind::type_i)
        return state_vector({cplx{0.0, 0.0}, cplx{-r, 0.0}, cplx{r, 0.0}, cplx{0.0, 0.0}},
                            labels);
    return state_vector({cplx{r, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{r, 0.0}}, labels);
}

// Three spin-1/2 particles: (1/sqrt 2)(|uuu> - |ddd>).
inline state_vector ghz_state() {
    std::vector<cplx> a(8, cplx{0.0, 0.0});
    double r = 1.0 / std::numbers::sqrt2;
    a[0] = cplx{r, 0.0};
    a[7] = cplx{-r, 0.0};
    return state_vector(std::move(a),
                        std::vector<std::string>{"uuu", "uud", "udu", "udd", "duu", "dud",
                                                 "ddu", "ddd"});
}

// One particle split across two separated boxes: (1/sqrt 2)(|A> + |B>).
inline state_vector box_state() {
    double r = 1.0 / std::numbers::sqrt2;
    return state_vector({cplx{r, 0.0}, cplx{r, 0.0}}, std::vector<std::string>{"A", "B"});
}

}  // namespace qfound
