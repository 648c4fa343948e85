// random.hpp
//
// Seeded, platform-independent randomness for sampling experiments and
// property tests. All draws derive from splitmix64, so a (seed, substream)
// pair fully determines every sample sequence: repeated runs are
// bit-identical.

#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qfound/linalg.hpp"

namespace qfound {

namespace detail {
// splitmix64 finalizer; avalanches all input bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace detail

class rng_stream {
public:
    explicit rng_stream(std::uint64_t seed) : state_(detail::mix64(seed)) {}

    // Independent stream for partition `index` of a sampling job; merging
    // per-partition results in index order reproduces a single-context run.
    static rng_stream substream(std::uint64_t seed, std::uint64_t index) {
        return rng_stream(detail::mix64(seed) ^ detail::mix64(~index));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; second value cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        // avoid log(0)
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Uniform on the unit sphere S^2.
    std::array<double, 3> unit_vector3() {
        double z = uniform(-1.0, 1.0);
        double phi = uniform(0.0, 2.0 * std::numbers::pi);
        double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Haar-ish random pure state: complex Gaussian vector, normalized.
inline state_vector random_pure_state(std::size_t dim, rng_stream& rng) {
    std::vector<cplx> a(dim);
    for (cplx& x : a) x = cplx{rng.gaussian(), rng.gaussian()};
    return state_vector(std::move(a)).normalized();
}

// Random unitary: complex Gaussian matrix orthonormalized column by column
// (modified Gram-Schmidt).
inline matrix_operator random_unitary(std::size_t dim, rng_stream& rng) {
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            cols[j][i] = cplx{rng.gaussian(), rng.gaussian()};
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            cplx proj{0.0, 0.0};
            for (std::size_t i = 0; i < dim; ++i) proj += std::conj(cols[k][i]) * cols[j][i];
            for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= proj * cols[k][i];
        }
        double n = 0.0;
        for (std::size_t i = 0; i < dim; ++i) n += std::norm(cols[j][i]);
        n = std::sqrt(n);
        if (n < 1e-8)  // astronomically unlikely; resample would bias nothing
            throw std::runtime_error("random_unitary: degenerate Gaussian draw");
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] /= n;
    }
    std::vector<cplx> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) e[i * dim + j] = cols[j][i];
    return matrix_operator(dim, std::move(e));
}

}  // namespace qfound
