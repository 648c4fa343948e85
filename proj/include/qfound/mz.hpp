// mz.hpp
//
// Sparse mode-amplitude propagation through Mach-Zehnder interferometers:
// the single-particle interferometer, and the crossed positron/electron pair
// with an annihilation region where the two inner arms meet. States are maps
// from occupation labels to amplitudes; optical elements rewrite labels
// linearly and preserve total probability at every step.
//
// Element conventions: a beam splitter scales both outputs by 1/sqrt(2) and
// tags the reflected one with a factor i; a mirror reflects with a factor i;
// transmission is unscaled; a removed splitter passes straight through; pair
// annihilation converts the joint inner-arm occupation into a photon-pair
// label of the same amplitude.

#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qfound/linalg.hpp"

namespace qfound {

enum class arm : std::uint8_t { a, b, c, d, e, f, g };

inline char arm_letter(arm x) { return static_cast<char>('a' + static_cast<int>(x)); }

enum class particle_tag : std::uint8_t { positron, electron };

// A detector or waveguide occupation for one named particle.
struct mode_label {
    particle_tag particle;
    arm on_arm;
};

// One basis term of a propagating state. Three shapes:
//   single: one unnamed or named particle on an arm          "d", "e-"
//   pair:   positron and electron arms, positron written first   "f+g-"
//   annihilated: both inner arms met and became photons          "gamma"
struct mode_term {
    enum class shape : std::uint8_t { annihilated, single, pair };

    shape kind;
    std::int8_t who;  // single only: -1 untagged, 0 positron, 1 electron
    arm first;        // single arm, or the positron arm of a pair
    arm second;       // the electron arm of a pair

    auto operator<=>(const mode_term&) const = default;

    static mode_term gamma() { return {shape::annihilated, -1, arm::a, arm::a}; }
    static mode_term single(arm x) { return {shape::single, -1, x, arm::a}; }
    static mode_term single(particle_tag t, arm x) {
        return {shape::single, t == particle_tag::positron ? std::int8_t{0} : std::int8_t{1},
                x, arm::a};
    }
    static mode_term pair(arm positron_arm, arm electron_arm) {
        return {shape::pair, -1, positron_arm, electron_arm};
    }

    std::string to_string() const {
        switch (kind) {
            case shape::annihilated:
                return "gamma";
            case shape::single: {
                std::string s(1, arm_letter(first));
                if (who == 0) s += '+';
                if (who == 1) s += '-';
                return s;
            }
            case shape::pair:
            default:
                return std::string(1, arm_letter(first)) + "+" + arm_letter(second) + "-";
        }
    }
};

class mode_state {
public:
    mode_state() = default;

    explicit mode_state(std::map<mode_term, cplx> terms) : terms_(std::move(terms)) {
        prune();
        for (const auto& [t, amp] : terms_)
            if (!is_finite(amp)) throw std::invalid_argument("mode_state: non-finite amplitude");
    }

    static mode_state single_particle(arm start) {
        return mode_state({{mode_term::single(start), cplx{1.0, 0.0}}});
    }

    static mode_state particle_pair(arm positron_start, arm electron_start) {
        return mode_state({{mode_term::pair(positron_start, electron_start), cplx{1.0, 0.0}}});
    }

    const std::map<mode_term, cplx>& terms() const { return terms_; }

    cplx amplitude(const mode_term& t) const {
        auto it = terms_.find(t);
        return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
    }

    double probability(const mode_term& t) const { return std::norm(amplitude(t)); }

    double total_probability() const {
        double s = 0.0;
        for (const auto& [t, amp] : terms_) s += std::norm(amp);
        return s;
    }

    void add(const mode_term& t, const cplx& amp) {
        auto [it, inserted] = terms_.emplace(t, amp);
        if (!inserted) it->second += amp;
    }

    // exact zeros appear whenever two paths cancel; they carry no physics
    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second == cplx{0.0, 0.0} ? terms_.erase(it) : std::next(it);
    }

private:
    std::map<mode_term, cplx> terms_;
};

// Terms agree up to one overall unit-modulus phase shared by every entry.
inline bool equal_up_to_global_phase(const mode_state& u, const mode_state& v,
                                     double tol = eq_tol) {
    if (u.terms().size() != v.terms().size()) return false;
    cplx ratio{0.0, 0.0};
    bool have_ratio = false;
    for (const auto& [t, amp_u] : u.terms()) {
        cplx amp_v = v.amplitude(t);
        if (!approx(std::abs(amp_u), std::abs(amp_v), tol)) return false;
        if (std::abs(amp_u) <= tol) continue;
        cplx r = amp_v / amp_u;
        if (!have_ratio) {
            if (!approx(std::abs(r), 1.0, tol)) return false;
            ratio = r;
            have_ratio = true;
        } else if (!approx(r, ratio, tol)) {
            return false;
        }
    }
    return true;
}

// ============================================================================
// Optical elements
// ============================================================================

// image of one arm under an element: list of (arm, coefficient)
using arm_rule = std::vector<std::pair<arm, cplx>>;
using element_rule = std::map<arm, arm_rule>;

namespace detail {

inline const cplx i_unit{0.0, 1.0};

inline element_rule entry_splitter_rule() {
    double r = 1.0 / std::numbers::sqrt2;
    return {{arm::a, {{arm::b, cplx{r, 0.0}}, {arm::c, i_unit * r}}}};
}

inline element_rule mirror_rule() {
    return {{arm::b, {{arm::d, i_unit}}}, {arm::c, {{arm::e, i_unit}}}};
}

inline element_rule exit_splitter_present_rule() {
    double r = 1.0 / std::numbers::sqrt2;
    return {{arm::d, {{arm::f, i_unit * r}, {arm::g, cplx{r, 0.0}}}},
            {arm::e, {{arm::f, cplx{r, 0.0}}, {arm::g, i_unit * r}}}};
}

inline element_rule exit_splitter_removed_rule() {
    return {{arm::d, {{arm::g, cplx{1.0, 0.0}}}}, {arm::e, {{arm::f, cplx{1.0, 0.0}}}}};
}

// Applies a rule to the arm of one particle slot; other labels ride along.
// which: -1 single-particle terms, 0 positron side, 1 electron side.
inline mode_state apply_rule(const mode_state& s, const element_rule& rule, int which) {
    mode_state out;
    for (const auto& [t, amp] : s.terms()) {
        arm moving;
        bool applies;
        if (which < 0) {
            applies = t.kind == mode_term::shape::single;
            moving = t.first;
        } else if (which == 0) {
            applies = t.kind == mode_term::shape::pair;
            moving = t.first;
        } else {
            applies = t.kind == mode_term::shape::pair;
            moving = t.second;
        }
        if (!applies) {
            out.add(t, amp);
            continue;
        }
        auto it = rule.find(moving);
        if (it == rule.end()) {
            out.add(t, amp);
            continue;
        }
        for (const auto& [target, coeff] : it->second) {
            mode_term nt = t;
            if (which == 1)
                nt.second = target;
            else
                nt.first = target;
            out.add(nt, coeff * amp);
        }
    }
    out.prune();
    return out;
}

// Both inner arms occupied by the pair: the occupation becomes photons.
inline mode_state apply_annihilation(const mode_state& s) {
    mode_state out;
    for (const auto& [t, amp] : s.terms()) {
        if (t.kind == mode_term::shape::pair && t.first == arm::c && t.second == arm::c)
            out.add(mode_term::gamma(), amp);
        else
            out.add(t, amp);
    }
    out.prune();
    return out;
}

inline void require_unit_norm(const mode_state& s, const char* where) {
    if (!approx(s.total_probability(), 1.0, eq_tol))
        throw std::logic_error(std::string(where) + ": propagation lost probability");
}

}  // namespace detail

// ============================================================================
// Single-particle interferometer
// ============================================================================

enum class bs_state { present, removed };

// One particle enters on arm a. With the exit splitter in place the two
// paths interfere and the f detector fires with certainty; with it removed
// each detector fires half the time.
inline mode_state propagate_single_mz(bs_state exit_splitter) {
    using namespace detail;
    mode_state s = mode_state::single_particle(arm::a);
    s = apply_rule(s, entry_splitter_rule(), -1);
    require_unit_norm(s, "single_mz entry splitter");
    s = apply_rule(s, mirror_rule(), -1);
    require_unit_norm(s, "single_mz mirrors");
    s = apply_rule(s,
                   exit_splitter == bs_state::present ? exit_splitter_present_rule()
                                                      : exit_splitter_removed_rule(),
                   -1);
    require_unit_norm(s, "single_mz exit splitter");
    return s;
}

// ============================================================================
// Crossed pair interferometer
// ============================================================================

struct hardy_config {
    bs_state bs2_plus;   // exit splitter on the positron side
    bs_state bs2_minus;  // exit splitter on the electron side
};

// Pair state after both entry splitters, the annihilation region, and the
// mirrors: the common source of all four exit configurations.
inline mode_state hardy_state_after_mirrors() {
    using namespace detail;
    mode_state s = mode_state::particle_pair(arm::a, arm::a);
    s = apply_rule(s, entry_splitter_rule(), 0);
    s = apply_rule(s, entry_splitter_rule(), 1);
    require_unit_norm(s, "hardy entry splitters");
    s = apply_annihilation(s);
    require_unit_norm(s, "hardy annihilation");
    s = apply_rule(s, mirror_rule(), 0);
    s = apply_rule(s, mirror_rule(), 1);
    require_unit_norm(s, "hardy mirrors");
    return s;
}

inline mode_state propagate_hardy(const hardy_config& config) {
    using namespace detail;
    mode_state s = hardy_state_after_mirrors();
    s = apply_rule(s,
                   config.bs2_plus == bs_state::present ? exit_splitter_present_rule()
                                                        : exit_splitter_removed_rule(),
                   0);
    s = apply_rule(s,
                   config.bs2_minus == bs_state::present ? exit_splitter_present_rule()
                                                         : exit_splitter_removed_rule(),
                   1);
    require_unit_norm(s, "hardy exit splitters");
    return s;
}

inline double detection_probability(const mode_state& s, const mode_term& t) {
    return s.probability(t);
}

// ============================================================================
// Reference frames and reality values
// ============================================================================

// k0: both exit splitters still ahead (the lab midpoint). k_plus: the
// positron has crossed its exit splitter, the electron has not. k_minus:
// the reverse. Both splitters are in place.
enum class frame { k0, k_plus, k_minus };

inline mode_state frame_intermediate(frame f) {
    using namespace detail;
    mode_state s = hardy_state_after_mirrors();
    if (f == frame::k0) return s;
    s = apply_rule(s, exit_splitter_present_rule(), f == frame::k_plus ? 0 : 1);
    require_unit_norm(s, "frame intermediate");
    return s;
}

// Conditions a pair state on detecting one named particle on one arm and
// returns the other particle's normalized state. Errors if that detection
// has zero probability.
inline mode_state collapse_after_detection(const mode_state& s, const mode_label& detected) {
    double marginal = 0.0;
    std::map<mode_term, cplx> kept;
    for (const auto& [t, amp] : s.terms()) {
        if (t.kind != mode_term::shape::pair) continue;
        arm side = detected.particle == particle_tag::positron ? t.first : t.second;
        if (side != detected.on_arm) continue;
        marginal += std::norm(amp);
        particle_tag partner = detected.particle == particle_tag::positron
                                   ? particle_tag::electron
                                   : particle_tag::positron;
        arm partner_arm = detected.particle == particle_tag::positron ? t.second : t.first;
        mode_term nt = mode_term::single(partner, partner_arm);
        auto [it, inserted] = kept.emplace(nt, amp);
        if (!inserted) it->second += amp;
    }
    if (marginal <= eq_tol)
        throw std::invalid_argument("collapse_after_detection: detection has zero probability");
    double scale = 1.0 / std::sqrt(marginal);
    for (auto& [t, amp] : kept) amp *= scale;
    return mode_state(std::move(kept));
}

// <psi| E+ E- |psi> with E+- the projectors onto the inner exit arms e+-:
// the probability of finding both particles on their e arms.
inline double joint_e_expectation(const mode_state& s) {
    return s.probability(mode_term::pair(arm::e, arm::e));
}

// ============================================================================
// Derived no-go reports
// ============================================================================

// One conditional detection fact: conditioned on the trigger arm firing, the
// implied far arm fires with probability `conditional`; the conditioning
// branch itself occurs with probability `branch_fraction`.
struct hardy_implication {
    double branch_fraction;
    double conditional;
    bool holds;  // conditional is exactly 1 within tolerance
};

struct local_realism_report {
    double p_joint_f_both_removed;          // both f detectors, both splitters out: 0
    hardy_implication g_plus_forces_f_minus;  // splitter in on +, out on -: branch 1/8
    hardy_implication g_minus_forces_f_plus;  // mirror image: branch 1/8
    double p_joint_g_both_present;          // both g detectors, both splitters in: 1/16
    bool facts_hold;
    bool contradiction;
    std::string verdict;
};

namespace detail {
inline hardy_implication conditional_g_to_f(const mode_state& s, particle_tag trigger) {
    double p_trigger = 0.0;
    for (const auto& [t, amp] : s.terms()) {
        if (t.kind != mode_term::shape::pair) continue;
        arm side = trigger == particle_tag::positron ? t.first : t.second;
        if (side == arm::g) p_trigger += std::norm(amp);
    }
    double p_joint = trigger == particle_tag::positron
                         ? s.probability(mode_term::pair(arm::g, arm::f))
                         : s.probability(mode_term::pair(arm::f, arm::g));
    double conditional = p_trigger > eq_tol ? p_joint / p_trigger : 0.0;
    return {p_joint, conditional, std::abs(conditional - 1.0) <= eq_tol};
}
}  // namespace detail

// Runs all four exit configurations and derives the deterministic-value
// contradiction: the two single-splitter configurations force a far-detector
// value wherever a g detector fires; the both-in configuration shows both g
// detectors firing together in 1/16 of runs; the both-out configuration
// shows the forced joint far-detector event never happens.
inline local_realism_report local_realism_table() {
    mode_state both_removed = propagate_hardy({bs_state::removed, bs_state::removed});
    mode_state plus_only = propagate_hardy({bs_state::present, bs_state::removed});
    mode_state minus_only = propagate_hardy({bs_state::removed, bs_state::present});
    mode_state both_present = propagate_hardy({bs_state::present, bs_state::present});

    local_realism_report rep{};
    rep.p_joint_f_both_removed = both_removed.probability(mode_term::pair(arm::f, arm::f));
    rep.g_plus_forces_f_minus = detail::conditional_g_to_f(plus_only, particle_tag::positron);
    rep.g_minus_forces_f_plus = detail::conditional_g_to_f(minus_only, particle_tag::electron);
    rep.p_joint_g_both_present = both_present.probability(mode_term::pair(arm::g, arm::g));

    rep.facts_hold = rep.p_joint_f_both_removed <= eq_tol &&
                     rep.g_plus_forces_f_minus.holds && rep.g_minus_forces_f_plus.holds &&
                     rep.p_joint_g_both_present > eq_tol;
    rep.contradiction = rep.facts_hold;

    std::ostringstream v;
    v << "deterministic local values are inconsistent: both g detectors fire together in "
      << rep.p_joint_g_both_present
      << " of runs, each g click forces the opposite far detector (branch fractions "
      << rep.g_plus_forces_f_minus.branch_fraction << " and "
      << rep.g_minus_forces_f_plus.branch_fraction
      << "), yet the joint far-detector event with both splitters removed has probability "
      << rep.p_joint_f_both_removed;
    rep.verdict = v.str();
    return rep;
}

enum class reality_observable { e_plus, e_minus, joint_e };

struct reality_value {
    reality_observable observable;
    double value;
    frame frame_of;
};

struct frame_reality_report {
    reality_value e_minus_in_k_plus;  // 1: after a g+ click the electron is surely on e-
    reality_value e_plus_in_k_minus;  // 1: mirror image
    reality_value joint_in_k0;        // 0: yet both-on-e never happens
    bool product_rule_violated;
};

inline frame_reality_report make_frame_reality_report() {
    mode_state k_plus = frame_intermediate(frame::k_plus);
    mode_state k_minus = frame_intermediate(frame::k_minus);
    mode_state k0 = frame_intermediate(frame::k0);

    mode_state electron_after_gplus =
        collapse_after_detection(k_plus, {particle_tag::positron, arm::g});
    mode_state positron_after_gminus =
        collapse_after_detection(k_minus, {particle_tag::electron, arm::g});

    double e_minus_val =
        electron_after_gplus.probability(mode_term::single(particle_tag::electron, arm::e));
    double e_plus_val =
        positron_after_gminus.probability(mode_term::single(particle_tag::positron, arm::e));
    double joint_val = joint_e_expectation(k0);

    frame_reality_report rep{};
    rep.e_minus_in_k_plus = {reality_observable::e_minus, e_minus_val, frame::k_plus};
    rep.e_plus_in_k_minus = {reality_observable::e_plus, e_plus_val, frame::k_minus};
    rep.joint_in_k0 = {reality_observable::joint_e, joint_val, frame::k0};
    rep.product_rule_violated = std::abs(e_minus_val - 1.0) <= eq_tol &&
                                std::abs(e_plus_val - 1.0) <= eq_tol && joint_val <= eq_tol;
    return rep;
}

// ============================================================================
// Experiment files
// ============================================================================

// Two assignments, one per line, in either order:
//   bs2_plus = present|removed
//   bs2_minus = present|removed
// Blank lines are ignored. Any other content is an error naming its line.
inline hardy_config parse_experiment_stream(std::istream& in) {
    std::optional<bs_state> plus, minus;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(line);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("experiment file line " + std::to_string(line_no) +
                                     ": expected 'key = value', got '" + body + "'");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        std::optional<bs_state>* slot = nullptr;
        if (key == "bs2_plus")
            slot = &plus;
        else if (key == "bs2_minus")
            slot = &minus;
        else
            throw std::runtime_error("experiment file line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        if (slot->has_value())
            throw std::runtime_error("experiment file line " + std::to_string(line_no) +
                                     ": duplicate key '" + key + "'");
        if (value == "present")
            *slot = bs_state::present;
        else if (value == "removed")
            *slot = bs_state::removed;
        else
            throw std::runtime_error("experiment file line " + std::to_string(line_no) +
                                     ": value for '" + key +
                                     "' must be 'present' or 'removed', got '" + value + "'");
    }
    if (!plus) throw std::runtime_error("experiment file: missing 'bs2_plus' line");
    if (!minus) throw std::runtime_error("experiment file: missing 'bs2_minus' line");
    return {*plus, *minus};
}

}  // namespace qfound
