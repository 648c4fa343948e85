// bell.hpp
//
// Bell and CHSH inequality machinery. Three layers:
//   1. pure arithmetic on correlation values (bell_check, chsh_value, the
//      exhaustive 16-case CHSH dichotomic identity);
//   2. the quantum side: scans of the original three-direction inequality
//      against singlet correlations;
//   3. a Monte Carlo harness for local hidden-variable models. A model
//      supplies a hidden-state sampler and two deterministic +-1 responses;
//      the harness estimates correlations over a shared seeded ensemble, so
//      every inequality the hidden-variable algebra implies pointwise also
//      holds for the estimates up to rounding.
//
// Sampling is partitioned into fixed-size chunks, each drawing from an
// independent substream of (seed, chunk index); merging in chunk order makes
// the estimate independent of how chunks are scheduled.

#pragma once

#include <concepts>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qfound/correlations.hpp"
#include "qfound/linalg.hpp"
#include "qfound/random.hpp"
#include "qfound/states.hpp"

namespace qfound {

struct correlation_estimate {
    double mean;
    double standard_error;
    std::size_t n_samples;
    std::uint64_t seed;
};

// One evaluation of |P_ab - P_ac| <= 1 + P_bc. margin = rhs - lhs; satisfied
// tolerates rounding at the boundary.
struct inequality_report {
    double lhs;
    double rhs;
    double margin;
    bool satisfied;
};

inline inequality_report bell_check(double p_ab, double p_ac, double p_bc) {
    for (double p : {p_ab, p_ac, p_bc})
        if (!is_finite(p) || p < -1.0 - eq_tol || p > 1.0 + eq_tol)
            throw std::invalid_argument("bell_check: correlation outside [-1, 1]");
    double lhs = std::abs(p_ab - p_ac);
    double rhs = 1.0 + p_bc;
    double margin = rhs - lhs;
    return {lhs, rhs, margin, margin >= -eq_tol};
}

// S = P(a,b) - P(a,b') + P(a',b) + P(a',b').
inline double chsh_value(double p_ab, double p_ab_prime, double p_ap_b, double p_ap_bp) {
    for (double p : {p_ab, p_ab_prime, p_ap_b, p_ap_bp})
        if (!is_finite(p) || p < -1.0 - eq_tol || p > 1.0 + eq_tol)
            throw std::invalid_argument("chsh_value: correlation outside [-1, 1]");
    return p_ab - p_ab_prime + p_ap_b + p_ap_bp;
}

// For dichotomic values x, y, x', y' in {-1, +1}, the combination
// xy - xy' + x'y + x'y' is always exactly +-2: checked by enumerating all
// 16 assignments.
inline bool chsh_identity_check() {
    for (int x : {-1, 1})
        for (int y : {-1, 1})
            for (int xp : {-1, 1})
                for (int yp : {-1, 1}) {
                    int s = x * y - x * yp + xp * y + xp * yp;
                    if (s != 2 && s != -2) return false;
                }
    return true;
}

// ============================================================================
// Quantum-side scans
// ============================================================================

struct bell_scan_row {
    double theta;
    double lhs;
    double rhs;
    bool violated;
};

// Coplanar three-direction configuration: a at 0, b at theta, c at 2*theta.
// Each grid angle must lie in [0, pi/2]. The singlet violates the inequality
// strictly inside the interval and saturates it at both ends.
inline std::vector<bell_scan_row> bell_scan(const std::vector<double>& theta_grid) {
    std::vector<bell_scan_row> rows;
    rows.reserve(theta_grid.size());
    for (double t : theta_grid) {
        if (!is_finite(t) || t < 0.0 || t > std::numbers::pi / 2.0 + eq_tol)
            throw std::invalid_argument("bell_scan: theta outside [0, pi/2]");
        direction a = direction::in_plane(0.0);
        direction b = direction::in_plane(t);
        direction c = direction::in_plane(2.0 * t);
        inequality_report r = bell_check(quantum_correlation(a, b), quantum_correlation(a, c),
                                         quantum_correlation(b, c));
        rows.push_back({t, r.lhs, r.rhs, !r.satisfied});
    }
    return rows;
}

// The coplanar fan b' = 0, a' = s, b = 2s, a = 3s evaluated with singlet
// correlations; at s = pi/4 the magnitude reaches 2*sqrt(2).
struct chsh_quantum_result {
    double p_ab, p_ab_prime, p_ap_b, p_ap_bp;
    double s;
    bool violates_classical_bound;
};

inline chsh_quantum_result chsh_quantum(double b_prime, double a_prime, double b, double a) {
    direction da = direction::in_plane(a);
    direction dap = direction::in_plane(a_prime);
    direction db = direction::in_plane(b);
    direction dbp = direction::in_plane(b_prime);
    double p_ab = quantum_correlation(da, db);
    double p_abp = quantum_correlation(da, dbp);
    double p_apb = quantum_correlation(dap, db);
    double p_apbp = quantum_correlation(dap, dbp);
    double s = chsh_value(p_ab, p_abp, p_apb, p_apbp);
    return {p_ab, p_abp, p_apb, p_apbp, s, std::abs(s) > 2.0 + eq_tol};
}

inline chsh_quantum_result chsh_quantum_fan() {
    double q = std::numbers::pi / 4.0;
    return chsh_quantum(0.0, q, 2.0 * q, 3.0 * q);
}

// ============================================================================
// Local hidden-variable harness
// ============================================================================

template <typename M>
concept lhv_model = requires(const M m, rng_stream& rng, const direction& d,
                             const typename M::lambda_type& lam) {
    typename M::lambda_type;
    { m.sample(rng) } -> std::same_as<typename M::lambda_type>;
    { m.response_a(d, lam) } -> std::same_as<int>;
    { m.response_b(d, lam) } -> std::same_as<int>;
};

// The classic sign model: lambda is a uniformly random unit vector,
// station 1 answers sign(a.lambda), station 2 answers -sign(b.lambda)
// (ties count as +1). Its correlation has the exact closed form
// -1 + 2*theta/pi in the angle between the two settings.
struct sign_model {
    using lambda_type = std::array<double, 3>;

    lambda_type sample(rng_stream& rng) const { return rng.unit_vector3(); }

    int response_a(const direction& d, const lambda_type& lam) const {
        auto u = d.unit_vector();
        return (u[0] * lam[0] + u[1] * lam[1] + u[2] * lam[2]) >= 0.0 ? 1 : -1;
    }

    int response_b(const direction& d, const lambda_type& lam) const {
        return -response_a(d, lam);
    }
};

inline double sign_model_closed_form(double angle) { return -1.0 + 2.0 * angle / std::numbers::pi; }

namespace detail {
inline constexpr std::size_t lhv_chunk = 1 << 16;
}

// Monte Carlo estimate of E[A(a; lambda) * B(b; lambda)] over n samples.
// The hidden-state sequence depends only on (seed, sample index), never on
// the directions, so estimates taken at different settings with the same
// seed range over the same ensemble.
template <lhv_model M>
correlation_estimate lhv_correlation(const M& model, const direction& a, const direction& b,
                                     std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("lhv_correlation: need at least one sample");
    long long sum = 0;
    std::size_t done = 0;
    for (std::uint64_t chunk = 0; done < n; ++chunk) {
        rng_stream rng = rng_stream::substream(seed, chunk);
        std::size_t count = std::min(detail::lhv_chunk, n - done);
        long long local = 0;
        for (std::size_t i = 0; i < count; ++i) {
            typename M::lambda_type lam = model.sample(rng);
            local += model.response_a(a, lam) * model.response_b(b, lam);
        }
        sum += local;
        done += count;
    }
    double mean = static_cast<double>(sum) / static_cast<double>(n);
    double se = 0.0;
    if (n > 1) {
        // products are +-1, so the sample variance collapses to n(1 - mean^2)/(n-1)
        double var = (static_cast<double>(n) * (1.0 - mean * mean)) /
                     static_cast<double>(n - 1);
        se = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return {mean, se, n, seed};
}

// Bell triple (a at 0, b at theta, c at 2*theta) estimated over one shared
// ensemble. combined_standard_error adds the three errors linearly, a
// conservative bound for the margin's fluctuation.
struct lhv_bell_result {
    correlation_estimate p_ab, p_ac, p_bc;
    inequality_report check;
    double combined_standard_error;
};

template <lhv_model M>
lhv_bell_result lhv_bell_report(const M& model, double theta, std::size_t n,
                                std::uint64_t seed) {
    direction a = direction::in_plane(0.0);
    direction b = direction::in_plane(theta);
    direction c = direction::in_plane(2.0 * theta);
    correlation_estimate ab = lhv_correlation(model, a, b, n, seed);
    correlation_estimate ac = lhv_correlation(model, a, c, n, seed);
    correlation_estimate bc = lhv_correlation(model, b, c, n, seed);
    inequality_report check = bell_check(ab.mean, ac.mean, bc.mean);
    double cse = ab.standard_error + ac.standard_error + bc.standard_error;
    return {ab, ac, bc, check, cse};
}

// CHSH fan b' = 0, a' = s, b = 2s, a = 3s estimated over one shared
// ensemble. |S| <= 2 + 4 * combined error must hold for every model the
// harness can express.
struct lhv_chsh_result {
    correlation_estimate p_ab, p_ab_prime, p_ap_b, p_ap_bp;
    double s;
    double combined_standard_error;
    bool within_classical_bound;
};

template <lhv_model M>
lhv_chsh_result lhv_chsh_report(const M& model, double spacing, std::size_t n,
                                std::uint64_t seed) {
    direction bp = direction::in_plane(0.0);
    direction ap = direction::in_plane(spacing);
    direction b = direction::in_plane(2.0 * spacing);
    direction a = direction::in_plane(3.0 * spacing);
    correlation_estimate ab = lhv_correlation(model, a, b, n, seed);
    correlation_estimate abp = lhv_correlation(model, a, bp, n, seed);
    correlation_estimate apb = lhv_correlation(model, ap, b, n, seed);
    correlation_estimate apbp = lhv_correlation(model, ap, bp, n, seed);
    double s = chsh_value(ab.mean, abp.mean, apb.mean, apbp.mean);
    double cse = ab.standard_error + abp.standard_error + apb.standard_error +
                 apbp.standard_error;
    return {ab, abp, apb, apbp, s, cse, std::abs(s) <= 2.0 + 4.0 * cse};
}

}  // namespace qfound
