// density.hpp
//
// Density operators over small multi-factor Hilbert spaces: construction from
// pure states and mixtures, Born probabilities, expectations, partial traces,
// the Liouville equation right-hand side, and the four-factor no-signaling
// experiment (ancilla U entangled with A, ancilla V entangled with B; local
// unitaries on disjoint factor pairs cannot move expectation values on the
// other side).

#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "qfound/linalg.hpp"
#include "qfound/random.hpp"
#include "qfound/states.hpp"

namespace qfound {

class density_operator {
public:
    // factor_dims describes the tensor factorization; their product must be
    // the matrix dimension. Validates hermiticity, unit trace, and positive
    // semidefiniteness (probed with 100 fixed-seed random unit vectors).
    density_operator(matrix_operator m, std::vector<std::size_t> factor_dims)
        : mat_(std::move(m)), factor_dims_(std::move(factor_dims)) {
        std::size_t prod = 1;
        for (std::size_t d : factor_dims_) {
            if (d == 0) throw std::invalid_argument("density_operator: zero factor dimension");
            prod *= d;
        }
        if (factor_dims_.empty() || prod != mat_.dim())
            throw std::invalid_argument(
                "density_operator: factor dimensions do not multiply to matrix dimension");
        if (!mat_.is_hermitian(eq_tol))
            throw std::invalid_argument("density_operator: matrix not hermitian");
        if (!approx(trace(mat_), cplx{1.0, 0.0}, eq_tol))
            throw std::invalid_argument("density_operator: trace != 1");
        rng_stream rng(0x8f1db5a3c42e76ULL);
        for (int probe = 0; probe < 100; ++probe) {
            state_vector v = random_pure_state(mat_.dim(), rng);
            cplx q{0.0, 0.0};
            for (std::size_t i = 0; i < mat_.dim(); ++i)
                for (std::size_t j = 0; j < mat_.dim(); ++j)
                    q += std::conj(v[i]) * mat_(i, j) * v[j];
            if (q.real() < -eq_tol)
                throw std::invalid_argument("density_operator: negative expectation probe");
        }
    }

    const matrix_operator& matrix() const { return mat_; }
    const std::vector<std::size_t>& factor_dims() const { return factor_dims_; }
    std::size_t dim() const { return mat_.dim(); }

private:
    matrix_operator mat_;
    std::vector<std::size_t> factor_dims_;
};

inline density_operator from_pure(const state_vector& psi,
                                  std::vector<std::size_t> factor_dims = {}) {
    if (!psi.is_normalized(norm_tol))
        throw std::invalid_argument("from_pure: state not normalized");
    if (factor_dims.empty()) factor_dims = {psi.dim()};
    return density_operator(outer(psi, psi), std::move(factor_dims));
}

// Statistical mixture: weights in (0, 1) summing to 1, one normalized state
// per weight.
struct mixture {
    std::vector<double> weights;
    std::vector<state_vector> states;
};

inline density_operator from_mixture(const mixture& mix,
                                     std::vector<std::size_t> factor_dims = {}) {
    if (mix.weights.empty() || mix.weights.size() != mix.states.size())
        throw std::invalid_argument("from_mixture: weights and states must pair up");
    std::size_t dim = mix.states.front().dim();
    double wsum = 0.0;
    for (double w : mix.weights) {
        if (!is_finite(w) || w <= 0.0 || w >= 1.0)
            throw std::invalid_argument("from_mixture: weight outside (0, 1)");
        wsum += w;
    }
    // a lone weight of exactly 1 is the from_pure case
    if (mix.weights.size() == 1 && approx(mix.weights.front(), 1.0, eq_tol))
        return from_pure(mix.states.front(), std::move(factor_dims));
    if (!approx(wsum, 1.0, eq_tol))
        throw std::invalid_argument("from_mixture: weights do not sum to 1");
    matrix_operator acc = matrix_operator::zero(dim);
    for (std::size_t k = 0; k < mix.weights.size(); ++k) {
        const state_vector& s = mix.states[k];
        if (s.dim() != dim) throw std::invalid_argument("from_mixture: dimension mismatch");
        if (!s.is_normalized(norm_tol))
            throw std::invalid_argument("from_mixture: component state not normalized");
        acc = acc + (cplx{mix.weights[k], 0.0} * outer(s, s));
    }
    if (factor_dims.empty()) factor_dims = {dim};
    return density_operator(std::move(acc), std::move(factor_dims));
}

// tr(rho^2); 1 for pure states, 1/dim for the maximally mixed state.
inline double purity(const density_operator& rho) {
    return trace(matmul(rho.matrix(), rho.matrix())).real();
}

// <A> = tr(rho A). A must be hermitian, which forces the trace real.
inline double expectation(const density_operator& rho, const matrix_operator& a) {
    if (a.dim() != rho.dim()) throw std::invalid_argument("expectation: dimension mismatch");
    if (!a.is_hermitian(eq_tol))
        throw std::invalid_argument("expectation: observable not hermitian");
    return trace(matmul(rho.matrix(), a)).real();
}

// <a|rho|a> clamped to [0, 1]; a must be normalized.
inline double born_probability(const density_operator& rho, const state_vector& a) {
    if (a.dim() != rho.dim())
        throw std::invalid_argument("born_probability: dimension mismatch");
    if (!a.is_normalized(norm_tol))
        throw std::invalid_argument("born_probability: outcome state not normalized");
    cplx q{0.0, 0.0};
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j)
            q += std::conj(a[i]) * rho.matrix()(i, j) * a[j];
    return std::clamp(q.real(), 0.0, 1.0);
}

// Traces out every factor except `keep` (0-based). Requires at least two
// factors; the result is a valid single-factor density operator.
inline density_operator partial_trace(const density_operator& rho, std::size_t keep) {
    const std::vector<std::size_t>& dims = rho.factor_dims();
    if (dims.size() < 2)
        throw std::invalid_argument("partial_trace: need at least two factors");
    if (keep >= dims.size()) throw std::out_of_range("partial_trace: keep index out of range");

    // strides of each factor in the flattened index (left factor most significant)
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t f = dims.size() - 1; f-- > 0;) stride[f] = stride[f + 1] * dims[f + 1];

    std::size_t dk = dims[keep];
    std::size_t rest = rho.dim() / dk;
    std::vector<cplx> out(dk * dk, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < rest; ++r) {
        // unpack r into indices of the traced factors
        std::size_t base = 0, rem = r;
        for (std::size_t f = dims.size(); f-- > 0;) {
            if (f == keep) continue;
            base += (rem % dims[f]) * stride[f];
            rem /= dims[f];
        }
        for (std::size_t i = 0; i < dk; ++i)
            for (std::size_t j = 0; j < dk; ++j)
                out[i * dk + j] += rho.matrix()(base + i * stride[keep], base + j * stride[keep]);
    }
    return density_operator(matrix_operator(dk, std::move(out)), {dk});
}

// d(rho)/dt = i [rho, H] for hermitian H (hbar = 1). The result is hermitian
// and traceless; it is a tangent, not a state, so it is returned as a plain
// matrix.
inline matrix_operator liouville_rhs(const density_operator& rho, const matrix_operator& h) {
    if (h.dim() != rho.dim()) throw std::invalid_argument("liouville_rhs: dimension mismatch");
    if (!h.is_hermitian(eq_tol))
        throw std::invalid_argument("liouville_rhs: hamiltonian not hermitian");
    return cplx{0.0, 1.0} * commutator(rho.matrix(), h);
}

// ============================================================================
// No-signaling experiment on H_A (x) H_U (x) H_V (x) H_B (qubit factors)
// ============================================================================

struct no_signaling_result {
    double theta_v_with_u_ua;     // <theta_V> after U_VB . U_UA
    double theta_v_without_u_ua;  // <theta_V> after U_VB alone
    double difference() const { return theta_v_with_u_ua - theta_v_without_u_ua; }
};

namespace detail {
inline void require_supported_on(const matrix_operator& u, const char* who,
                                 const std::vector<std::size_t>& trivial_slots) {
    // an operator acting as the identity on a factor commutes with every
    // local test operator on that factor
    static const std::vector<std::size_t> dims{2, 2, 2, 2};
    for (std::size_t slot : trivial_slots) {
        for (const matrix_operator& p : {pauli_x(), pauli_y(), pauli_z()}) {
            matrix_operator test = embed(p, slot, dims);
            if (max_abs_diff(commutator(u, test), matrix_operator::zero(16)) > eq_tol)
                throw std::invalid_argument(std::string(who) +
                                            ": acts nontrivially outside its factors");
        }
    }
}
}  // namespace detail

// Prepares rho0 = rho_A (x) rho_UV (x) rho_B, applies U_VB with and without a
// preceding U_UA, and returns <theta_V> for both runs. U_UA and U_VB are
// full 16-dimensional unitaries required to commute and to act only on
// (A, U) and (V, B) respectively; theta_V is a single-qubit observable on V.
inline no_signaling_result no_signaling_experiment(const density_operator& rho_a,
                                                   const density_operator& rho_uv,
                                                   const density_operator& rho_b,
                                                   const matrix_operator& u_ua,
                                                   const matrix_operator& u_vb,
                                                   const matrix_operator& theta_v) {
    if (rho_a.dim() != 2 || rho_uv.dim() != 4 || rho_b.dim() != 2)
        throw std::invalid_argument("no_signaling_experiment: factor dimensions must be 2,4,2");
    if (u_ua.dim() != 16 || u_vb.dim() != 16)
        throw std::invalid_argument("no_signaling_experiment: unitaries must be 16-dimensional");
    if (theta_v.dim() != 2)
        throw std::invalid_argument("no_signaling_experiment: theta_V must act on the V qubit");
    if (!theta_v.is_hermitian(eq_tol))
        throw std::invalid_argument("no_signaling_experiment: theta_V not hermitian");
    if (!u_ua.is_unitary(eq_tol) || !u_vb.is_unitary(eq_tol))
        throw std::invalid_argument("no_signaling_experiment: operator not unitary");
    if (max_abs_diff(commutator(u_ua, u_vb), matrix_operator::zero(16)) > eq_tol)
        throw std::invalid_argument("no_signaling_experiment: [U_UA, U_VB] != 0");
    detail::require_supported_on(u_ua, "U_UA", {2, 3});
    detail::require_supported_on(u_vb, "U_VB", {0, 1});

    matrix_operator rho0 =
        tensor_op(tensor_op(rho_a.matrix(), rho_uv.matrix()), rho_b.matrix());
    std::vector<std::size_t> dims{2, 2, 2, 2};
    matrix_operator theta_emb = embed(theta_v, 2, dims);

    auto evolve_expect = [&](const matrix_operator& u) {
        matrix_operator evolved = matmul(matmul(u, rho0), adjoint(u));
        density_operator rho(evolved, dims);  // revalidates state invariants
        return expectation(rho, theta_emb);
    };

    return {evolve_expect(matmul(u_vb, u_ua)), evolve_expect(u_vb)};
}

// One seeded trial: random 4-dim unitaries embedded on (A,U) and (V,B),
// random pure states on A and B, the singlet on (U, V), sigma_z as theta_V.
inline no_signaling_result no_signaling_trial(std::uint64_t seed) {
    rng_stream rng(seed);
    matrix_operator w = random_unitary(4, rng);
    matrix_operator x = random_unitary(4, rng);
    matrix_operator u_ua = tensor_op(w, matrix_operator::identity(4));
    matrix_operator u_vb = tensor_op(matrix_operator::identity(4), x);
    density_operator rho_a = from_pure(random_pure_state(2, rng));
    density_operator rho_b = from_pure(random_pure_state(2, rng));
    density_operator rho_uv = from_pure(singlet(), {2, 2});
    return no_signaling_experiment(rho_a, rho_uv, rho_b, u_ua, u_vb, pauli_z());
}

}  // namespace qfound
