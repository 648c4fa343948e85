// ghz.hpp
//
// The three-particle GHZ argument, run entirely in finite arithmetic: build
// the four product observables (one sigma_x/sigma_y on each particle), check
// their algebra, read off their eigenvalues on the GHZ state, and enumerate
// every deterministic value assignment to show that the eigenvalue pattern
// quantum mechanics fixes is the one pattern no assignment can produce.
// Also the two-box analysis of a single particle split across separated
// boxes.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qfound/correlations.hpp"
#include "qfound/density.hpp"
#include "qfound/linalg.hpp"
#include "qfound/states.hpp"

namespace qfound {

enum class pauli_axis { x, y };

struct ghz_operator {
    std::string name;                  // "A", "B", "C", "D"
    std::array<pauli_axis, 3> pattern; // per-particle component
    matrix_operator matrix;
};

struct ghz_operator_set {
    ghz_operator a, b, c, d;
};

namespace detail {
inline matrix_operator pauli_of(pauli_axis ax) {
    return ax == pauli_axis::x ? pauli_x() : pauli_y();
}

inline ghz_operator make_ghz_op(std::string name, std::array<pauli_axis, 3> pattern) {
    matrix_operator m = tensor_op(tensor_op(pauli_of(pattern[0]), pauli_of(pattern[1])),
                                  pauli_of(pattern[2]));
    return {std::move(name), pattern, std::move(m)};
}
}  // namespace detail

// A = x y y, B = y x y, C = y y x, D = x x x.
inline ghz_operator_set build_operators() {
    using ax = pauli_axis;
    return {detail::make_ghz_op("A", {ax::x, ax::y, ax::y}),
            detail::make_ghz_op("B", {ax::y, ax::x, ax::y}),
            detail::make_ghz_op("C", {ax::y, ax::y, ax::x}),
            detail::make_ghz_op("D", {ax::x, ax::x, ax::x})};
}

struct ghz_algebra_report {
    std::array<bool, 4> hermitian;        // A, B, C, D
    std::array<bool, 6> pairs_commute;    // AB, AC, AD, BC, BD, CD
    std::array<bool, 4> square_to_identity;
    double max_abs_d_plus_abc;            // entrywise |D + ABC|
    bool d_equals_minus_abc;

    bool all_pass() const {
        for (bool h : hermitian)
            if (!h) return false;
        for (bool c : pairs_commute)
            if (!c) return false;
        for (bool s : square_to_identity)
            if (!s) return false;
        return d_equals_minus_abc;
    }
};

inline ghz_algebra_report verify_algebra(const ghz_operator_set& ops) {
    std::array<const ghz_operator*, 4> all{&ops.a, &ops.b, &ops.c, &ops.d};
    ghz_algebra_report rep{};
    for (std::size_t i = 0; i < 4; ++i)
        rep.hermitian[i] = all[i]->matrix.is_hermitian(eq_tol);
    std::size_t pair = 0;
    matrix_operator zero8 = matrix_operator::zero(8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            rep.pairs_commute[pair++] =
                max_abs_diff(commutator(all[i]->matrix, all[j]->matrix), zero8) <= eq_tol;
    matrix_operator id8 = matrix_operator::identity(8);
    for (std::size_t i = 0; i < 4; ++i)
        rep.square_to_identity[i] =
            max_abs_diff(matmul(all[i]->matrix, all[i]->matrix), id8) <= eq_tol;
    matrix_operator abc = matmul(matmul(ops.a.matrix, ops.b.matrix), ops.c.matrix);
    rep.max_abs_d_plus_abc = max_abs_diff(ops.d.matrix, cplx{-1.0, 0.0} * abc);
    rep.d_equals_minus_abc = rep.max_abs_d_plus_abc <= eq_tol;
    return rep;
}

// If psi is an eigenvector of op with eigenvalue +1 or -1 (within
// tolerance), returns that integer value exactly; otherwise nullopt.
inline std::optional<int> eigenvalue_check(const ghz_operator& op, const state_vector& psi) {
    if (op.matrix.dim() != psi.dim()) return std::nullopt;
    state_vector image = apply(op.matrix, psi);
    for (int c : {1, -1}) {
        bool match = true;
        for (std::size_t i = 0; i < psi.dim(); ++i)
            if (!approx(image[i], cplx{static_cast<double>(c), 0.0} * psi[i], eq_tol)) {
                match = false;
                break;
            }
        if (match) return c;
    }
    return std::nullopt;
}

// One deterministic assignment of preexisting +-1 values: m_x[k] and m_y[k]
// are particle k's answers to an x or y measurement.
struct realism_assignment {
    std::array<int, 3> m_x;
    std::array<int, 3> m_y;

    int product_a() const { return m_x[0] * m_y[1] * m_y[2]; }
    int product_b() const { return m_y[0] * m_x[1] * m_y[2]; }
    int product_c() const { return m_y[0] * m_y[1] * m_x[2]; }
    int product_d() const { return m_x[0] * m_x[1] * m_x[2]; }
};

struct realism_report {
    std::vector<realism_assignment> satisfying;  // assignments matching A=B=C=+1
    bool every_survivor_has_positive_d;          // their m_x products are all +1
    int assignment_d_value;                      // the forced +1
    int quantum_d_value;                         // eigenvalue of D on the GHZ state
    bool contradiction;                          // the two disagree
};

// Enumerates all 64 assignments, keeps those reproducing the three +1
// eigenvalues, and compares the x-product they force with the quantum
// eigenvalue of D.
inline realism_report realism_contradiction_report() {
    realism_report rep{};
    for (int bits = 0; bits < 64; ++bits) {
        realism_assignment as{};
        for (int k = 0; k < 3; ++k) {
            as.m_x[k] = (bits >> k) & 1 ? 1 : -1;
            as.m_y[k] = (bits >> (3 + k)) & 1 ? 1 : -1;
        }
        if (as.product_a() == 1 && as.product_b() == 1 && as.product_c() == 1)
            rep.satisfying.push_back(as);
    }
    rep.every_survivor_has_positive_d = true;
    for (const realism_assignment& as : rep.satisfying)
        if (as.product_d() != 1) rep.every_survivor_has_positive_d = false;
    rep.assignment_d_value = 1;

    ghz_operator_set ops = build_operators();
    std::optional<int> qd = eigenvalue_check(ops.d, ghz_state());
    rep.quantum_d_value = qd.value_or(0);
    rep.contradiction = rep.every_survivor_has_positive_d && qd.has_value() &&
                        *qd != rep.assignment_d_value;
    return rep;
}

// ============================================================================
// One particle, two boxes
// ============================================================================

struct boxes_report {
    double p_a;               // probability the particle is found in box A
    double p_b;
    double p_not_a_given_b;   // opening B and finding it there empties A
    double p_a_given_not_b;
    double state_purity;      // 1: the split state is pure, not a mixture
};

inline boxes_report boxes_analysis() {
    state_vector psi = box_state();
    density_operator rho = from_pure(psi);
    state_vector in_a = state_vector::basis(2, 0);
    state_vector in_b = state_vector::basis(2, 1);
    double p_a = born_probability(rho, in_a);
    double p_b = born_probability(rho, in_b);
    // a single particle: "found in B" and "absent from A" are the same event
    double p_not_a_and_b = p_b;
    double p_a_and_not_b = p_a;
    return {p_a, p_b, conditional_probability(p_not_a_and_b, p_b),
            conditional_probability(p_a_and_not_b, 1.0 - p_b), purity(rho)};
}

}  // namespace qfound
