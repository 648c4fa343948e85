// linalg.hpp
//
// Dense complex linear algebra for small Hilbert spaces (dimension <= 16 in
// practice): state vectors, square operators, tensor products, adjoints,
// traces, commutators. Every constructed value is finite; all comparisons
// against golden values use absolute tolerances.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qfound {

using cplx = std::complex<double>;

// Absolute tolerance for entrywise agreement with golden values.
inline constexpr double eq_tol = 1e-12;
// Absolute tolerance on |norm^2 - 1| for normalized states.
inline constexpr double norm_tol = 1e-12;

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool approx(double a, double b, double tol = eq_tol) {
    return std::abs(a - b) <= tol;
}

inline bool approx(const cplx& a, const cplx& b, double tol = eq_tol) {
    return std::abs(a - b) <= tol;
}

// ============================================================================
// state_vector: immutable ket with optional basis-label metadata
// ============================================================================

class state_vector {
public:
    explicit state_vector(std::vector<cplx> amplitudes,
                          std::optional<std::vector<std::string>> basis_labels = std::nullopt)
        : amps_(std::move(amplitudes)), labels_(std::move(basis_labels)) {
        if (amps_.empty())
            throw std::invalid_argument("state_vector: dimension must be positive");
        for (const cplx& a : amps_)
            if (!is_finite(a))
                throw std::invalid_argument("state_vector: non-finite amplitude");
        if (labels_ && labels_->size() != amps_.size())
            throw std::invalid_argument("state_vector: basis label count != dimension");
    }

    // Computational basis ket |index> in a dim-dimensional space.
    static state_vector basis(std::size_t dim, std::size_t index) {
        if (index >= dim)
            throw std::out_of_range("state_vector::basis: index out of range");
        std::vector<cplx> a(dim, cplx{0.0, 0.0});
        a[index] = cplx{1.0, 0.0};
        return state_vector(std::move(a));
    }

    std::size_t dim() const { return amps_.size(); }

    const cplx& operator[](std::size_t i) const {
        if (i >= amps_.size())
            throw std::out_of_range("state_vector: index out of range");
        return amps_[i];
    }

    const std::vector<cplx>& amplitudes() const { return amps_; }
    const std::optional<std::vector<std::string>>& basis_labels() const { return labels_; }

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& a : amps_) s += std::norm(a);
        return s;
    }

    double norm() const { return std::sqrt(norm_sq()); }

    bool is_normalized(double tol = norm_tol) const {
        return std::abs(norm_sq() - 1.0) <= tol;
    }

    state_vector normalized() const {
        double n = norm();
        if (n <= 0.0)
            throw std::invalid_argument("state_vector::normalized: zero vector");
        std::vector<cplx> a(amps_);
        for (cplx& x : a) x /= n;
        return state_vector(std::move(a), labels_);
    }

private:
    std::vector<cplx> amps_;
    std::optional<std::vector<std::string>> labels_;
};

inline state_vector operator*(const cplx& c, const state_vector& v) {
    std::vector<cplx> a(v.amplitudes());
    for (cplx& x : a) x *= c;
    return state_vector(std::move(a), v.basis_labels());
}

inline state_vector operator+(const state_vector& u, const state_vector& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("state_vector +: dimension mismatch");
    std::vector<cplx> a(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) a[i] = u[i] + v[i];
    return state_vector(std::move(a));
}

inline state_vector operator-(const state_vector& u, const state_vector& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("state_vector -: dimension mismatch");
    std::vector<cplx> a(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) a[i] = u[i] - v[i];
    return state_vector(std::move(a));
}

// Hermitian inner product <u|v>, conjugate-linear in the first argument.
inline cplx inner(const state_vector& u, const state_vector& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("inner: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

// Tensor product with the left factor most significant:
// (u (x) v)[i * dim(v) + j] = u[i] * v[j].
inline state_vector tensor(const state_vector& u, const state_vector& v) {
    std::vector<cplx> a(u.dim() * v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j)
            a[i * v.dim() + j] = u[i] * v[j];
    std::optional<std::vector<std::string>> labels;
    if (u.basis_labels() && v.basis_labels()) {
        labels.emplace();
        labels->reserve(a.size());
        for (const std::string& lu : *u.basis_labels())
            for (const std::string& lv : *v.basis_labels())
                labels->push_back(lu + lv);
    }
    return state_vector(std::move(a), std::move(labels));
}

// True when u and v describe the same physical state: both normalized and
// |<u|v>| = 1 within tolerance.
inline bool equal_up_to_global_phase(const state_vector& u, const state_vector& v,
                                     double tol = eq_tol) {
    if (u.dim() != v.dim()) return false;
    if (!u.is_normalized(tol) || !v.is_normalized(tol)) return false;
    return std::abs(std::abs(inner(u, v)) - 1.0) <= tol;
}

// ============================================================================
// matrix_operator: immutable square operator, row-major storage
// ============================================================================

class matrix_operator {
public:
    matrix_operator(std::size_t dim, std::vector<cplx> entries)
        : dim_(dim), e_(std::move(entries)) {
        if (dim_ == 0)
            throw std::invalid_argument("matrix_operator: dimension must be positive");
        if (e_.size() != dim_ * dim_)
            throw std::invalid_argument("matrix_operator: entry count != dim^2");
        for (const cplx& x : e_)
            if (!is_finite(x))
                throw std::invalid_argument("matrix_operator: non-finite entry");
    }

    static matrix_operator identity(std::size_t dim) {
        std::vector<cplx> e(dim * dim, cplx{0.0, 0.0});
        for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = cplx{1.0, 0.0};
        return matrix_operator(dim, std::move(e));
    }

    static matrix_operator zero(std::size_t dim) {
        return matrix_operator(dim, std::vector<cplx>(dim * dim, cplx{0.0, 0.0}));
    }

    static matrix_operator from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        std::size_t dim = rows.size();
        std::vector<cplx> e;
        e.reserve(dim * dim);
        for (const auto& row : rows) {
            if (row.size() != dim)
                throw std::invalid_argument("matrix_operator::from_rows: ragged rows");
            for (const cplx& x : row) e.push_back(x);
        }
        return matrix_operator(dim, std::move(e));
    }

    std::size_t dim() const { return dim_; }

    const cplx& operator()(std::size_t i, std::size_t j) const {
        if (i >= dim_ || j >= dim_)
            throw std::out_of_range("matrix_operator: index out of range");
        return e_[i * dim_ + j];
    }

    const std::vector<cplx>& entries() const { return e_; }

    bool is_hermitian(double tol = eq_tol) const {
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j)
                if (!approx(e_[i * dim_ + j], std::conj(e_[j * dim_ + i]), tol))
                    return false;
        return true;
    }

    bool is_unitary(double tol = eq_tol) const;

private:
    std::size_t dim_;
    std::vector<cplx> e_;
};

inline matrix_operator operator+(const matrix_operator& a, const matrix_operator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix_operator +: dimension mismatch");
    std::vector<cplx> e(a.entries());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries()[i];
    return matrix_operator(a.dim(), std::move(e));
}

inline matrix_operator operator-(const matrix_operator& a, const matrix_operator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matrix_operator -: dimension mismatch");
    std::vector<cplx> e(a.entries());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= b.entries()[i];
    return matrix_operator(a.dim(), std::move(e));
}

inline matrix_operator operator*(const cplx& c, const matrix_operator& a) {
    std::vector<cplx> e(a.entries());
    for (cplx& x : e) x *= c;
    return matrix_operator(a.dim(), std::move(e));
}

inline matrix_operator matmul(const matrix_operator& a, const matrix_operator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("matmul: dimension mismatch");
    std::size_t n = a.dim();
    std::vector<cplx> e(n * n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) e[i * n + j] += aik * b(k, j);
        }
    return matrix_operator(n, std::move(e));
}

inline state_vector apply(const matrix_operator& m, const state_vector& v) {
    if (m.dim() != v.dim())
        throw std::invalid_argument("apply: dimension mismatch");
    std::size_t n = m.dim();
    std::vector<cplx> a(n, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i] += m(i, j) * v[j];
    return state_vector(std::move(a));
}

inline matrix_operator adjoint(const matrix_operator& m) {
    std::size_t n = m.dim();
    std::vector<cplx> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = std::conj(m(j, i));
    return matrix_operator(n, std::move(e));
}

inline cplx trace(const matrix_operator& m) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < m.dim(); ++i) s += m(i, i);
    return s;
}

inline matrix_operator commutator(const matrix_operator& a, const matrix_operator& b) {
    return matmul(a, b) - matmul(b, a);
}

// Kronecker product with the left factor most significant.
inline matrix_operator tensor_op(const matrix_operator& a, const matrix_operator& b) {
    std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    std::vector<cplx> e(n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l)
                    e[(i * nb + k) * n + (j * nb + l)] = a(i, j) * b(k, l);
    return matrix_operator(n, std::move(e));
}

// |u><v|
inline matrix_operator outer(const state_vector& u, const state_vector& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("outer: dimension mismatch");
    std::size_t n = u.dim();
    std::vector<cplx> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = u[i] * std::conj(v[j]);
    return matrix_operator(n, std::move(e));
}

inline bool matrix_operator::is_unitary(double tol) const {
    matrix_operator self(dim_, e_);
    matrix_operator p = matmul(self, adjoint(self));
    matrix_operator id = identity(dim_);
    for (std::size_t i = 0; i < dim_ * dim_; ++i)
        if (!approx(p.entries()[i], id.entries()[i], tol)) return false;
    return true;
}

inline double max_abs_diff(const matrix_operator& a, const matrix_operator& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline double max_abs_diff(const state_vector& u, const state_vector& v) {
    if (u.dim() != v.dim())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i)
        m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

// ============================================================================
// Multi-factor index plumbing
// ============================================================================

// Embeds a single-factor operator at position slot of a tensor-factor list,
// acting as the identity on every other factor.
inline matrix_operator embed(const matrix_operator& op, std::size_t slot,
                             const std::vector<std::size_t>& factor_dims) {
    if (slot >= factor_dims.size())
        throw std::out_of_range("embed: factor slot out of range");
    if (op.dim() != factor_dims[slot])
        throw std::invalid_argument("embed: operator dimension != factor dimension");
    matrix_operator acc = matrix_operator::identity(1);
    for (std::size_t f = 0; f < factor_dims.size(); ++f)
        acc = tensor_op(acc, f == slot ? op : matrix_operator::identity(factor_dims[f]));
    return acc;
}

// Reorders tensor factors: factor perm[k] of the input becomes factor k of
// the result. perm must be a permutation of 0..factor_dims.size()-1.
inline state_vector permute_factors(const state_vector& v,
                                    const std::vector<std::size_t>& factor_dims,
                                    const std::vector<std::size_t>& perm) {
    std::size_t nf = factor_dims.size();
    if (perm.size() != nf)
        throw std::invalid_argument("permute_factors: permutation size mismatch");
    std::size_t total = 1;
    for (std::size_t d : factor_dims) total *= d;
    if (total != v.dim())
        throw std::invalid_argument("permute_factors: factor dimensions do not match state");
    std::vector<bool> seen(nf, false);
    for (std::size_t p : perm) {
        if (p >= nf || seen[p])
            throw std::invalid_argument("permute_factors: not a permutation");
        seen[p] = true;
    }
    std::vector<std::size_t> out_dims(nf);
    for (std::size_t k = 0; k < nf; ++k) out_dims[k] = factor_dims[perm[k]];

    std::vector<cplx> a(v.dim());
    std::vector<std::size_t> digits(nf);
    for (std::size_t idx = 0; idx < v.dim(); ++idx) {
        // digits of idx in the mixed radix of the input factor list
        std::size_t rem = idx;
        for (std::size_t f = nf; f-- > 0;) {
            digits[f] = rem % factor_dims[f];
            rem /= factor_dims[f];
        }
        std::size_t out = 0;
        for (std::size_t k = 0; k < nf; ++k) out = out * out_dims[k] + digits[perm[k]];
        a[out] = v[idx];
    }
    return state_vector(std::move(a));
}

// ============================================================================
// Standard operators
// ============================================================================

inline matrix_operator pauli_x() {
    return matrix_operator::from_rows({{cplx{0, 0}, cplx{1, 0}}, {cplx{1, 0}, cplx{0, 0}}});
}

inline matrix_operator pauli_y() {
    return matrix_operator::from_rows({{cplx{0, 0}, cplx{0, -1}}, {cplx{0, 1}, cplx{0, 0}}});
}

inline matrix_operator pauli_z() {
    return matrix_operator::from_rows({{cplx{1, 0}, cplx{0, 0}}, {cplx{0, 0}, cplx{-1, 0}}});
}

// Spin-1/2 component operators (hbar = 1): S_k = pauli_k / 2.
inline matrix_operator spin_x() { return cplx{0.5, 0.0} * pauli_x(); }
inline matrix_operator spin_y() { return cplx{0.5, 0.0} * pauli_y(); }
inline matrix_operator spin_z() { return cplx{0.5, 0.0} * pauli_z(); }

}  // namespace qfound
