// Acceptance gate: one line per criterion, nonzero exit if anything fails.
// argv[1] names the command-line binary used by the determinism checks.

#include <qfound/qfound.hpp>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

using namespace qfound;

namespace {

constexpr double pi = std::numbers::pi;
int failures = 0;

void criterion(int num, const char* label, bool ok) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", num, label);
  if (!ok) ++failures;
}

void extra(const char* label, bool ok) {
  std::printf("[%s] extra: %s\n", ok ? "PASS" : "FAIL", label);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct cli_run {
  int status;
  std::string out;
};

cli_run run_cli(const std::string& command) {
  FILE* p = popen(command.c_str(), "r");
  if (!p) return {-1, {}};
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
  const int raw = pclose(p);
  if (raw == -1) return {-1, std::move(out)};
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -2, std::move(out)};
}

mode_state state_from(std::initializer_list<std::pair<mode_term, cplx>> terms) {
  mode_state s;
  for (const auto& [t, a] : terms) s.add(t, a);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <cli-binary>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const cplx iu{0.0, 1.0};

  // 1. same-axis outcome probabilities, timed
  {
    const auto t0 = std::chrono::steady_clock::now();
    const direction z{0.0, 0.0};
    const direction n{1.234, 4.321};
    bool ok = true;
    for (const direction& d : {z, n}) {
      ok = ok && std::abs(singlet_joint_probability(d, d)) <= 1e-12;
      ok = ok && std::abs(singlet_joint_probability(d, d.antipode()) - 0.5) <= 1e-12;
    }
    const double dt = seconds_since(t0);
    criterion(1, "same-axis singlet probabilities (1/2 and 0) under 1 ms",
              ok && dt < 1e-3);
  }

  // 2. closed form vs direct contraction over 1000 seeded pairs
  {
    rng_stream rng(2024);
    double max_diff = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto a = random_direction(rng);
      const auto b = random_direction(rng);
      max_diff = std::max(max_diff, std::abs(singlet_joint_probability(a, b) -
                                             singlet_joint_probability_direct(a, b)));
    }
    criterion(2, "joint probability closed form matches the contraction",
              max_diff <= 1e-12);
  }

  // 3. reduced singlet: I/2, purity 1/2, vanishing spin expectations
  {
    const auto rho = from_pure(singlet(), {2, 2});
    bool ok = true;
    for (std::size_t keep : {std::size_t{0}, std::size_t{1}}) {
      const auto red = partial_trace(rho, keep);
      const auto half_id = cplx{0.5, 0.0} * matrix_operator::identity(2);
      ok = ok && max_abs_diff(red.matrix(), half_id) <= 1e-12;
      ok = ok && std::abs(purity(red) - 0.5) <= 1e-12;
      for (const auto& s : {pauli_x(), pauli_y(), pauli_z()})
        ok = ok && std::abs(expectation(red, s)) <= 1e-12;
    }
    criterion(3, "reduced singlet is maximally mixed", ok);
  }

  // 4. no-signaling over 100 seeded trials, timed
  {
    const auto t0 = std::chrono::steady_clock::now();
    double max_diff = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
      max_diff = std::max(max_diff, std::abs(no_signaling_trial(seed).difference()));
    const double dt = seconds_since(t0);
    criterion(4, "remote unitaries never move local expectations (100 trials, <1 s)",
              max_diff <= 1e-12 && dt < 1.0);
  }

  // 5. photon channel probabilities over 100 random angle pairs
  {
    rng_stream rng(5150);
    using exit = polarizer_exit;
    bool ok = true;
    for (int k = 0; k < 100; ++k) {
      const polarization_angle t1{rng.uniform(-pi, pi)};
      const polarization_angle t2{rng.uniform(-pi, pi)};
      const double d = t1.theta - t2.theta;
      const double half_sin2 = 0.5 * std::sin(d) * std::sin(d);
      const double half_cos2 = 0.5 * std::cos(d) * std::cos(d);
      const photon_channel same{exit::parallel, exit::parallel};
      const photon_channel both_perp{exit::perpendicular, exit::perpendicular};
      const photon_channel mixed{exit::parallel, exit::perpendicular};
      const photon_channel mixed2{exit::perpendicular, exit::parallel};
      ok = ok &&
           std::abs(photon_joint_probability(photon_kind::type_i, same, t1, t2) -
                    half_sin2) <= 1e-12 &&
           std::abs(photon_joint_probability(photon_kind::type_i, both_perp, t1, t2) -
                    half_sin2) <= 1e-12 &&
           std::abs(photon_joint_probability(photon_kind::type_i, mixed, t1, t2) -
                    half_cos2) <= 1e-12 &&
           std::abs(photon_joint_probability(photon_kind::type_ii, same, t1, t2) -
                    half_cos2) <= 1e-12 &&
           std::abs(photon_joint_probability(photon_kind::type_ii, mixed2, t1, t2) -
                    half_sin2) <= 1e-12;
      double sum_i = 0.0, sum_ii = 0.0;
      for (const auto& ch : {same, mixed, mixed2, both_perp}) {
        sum_i += photon_joint_probability(photon_kind::type_i, ch, t1, t2);
        sum_ii += photon_joint_probability(photon_kind::type_ii, ch, t1, t2);
      }
      ok = ok && std::abs(sum_i - 1.0) <= 1e-12 && std::abs(sum_ii - 1.0) <= 1e-12;
    }
    criterion(5, "photon channel laws and unit four-channel sums", ok);
  }

  // 6. correlation outcome sum equals -a.b; perfect anticorrelation
  {
    rng_stream rng(606);
    bool ok = true;
    for (int k = 0; k < 1000; ++k) {
      const auto a = random_direction(rng);
      const auto b = random_direction(rng);
      ok = ok && std::abs(quantum_correlation(a, b) -
                          quantum_correlation_closed_form(a, b)) <= 1e-12;
    }
    const direction n{0.4, 2.0};
    ok = ok && std::abs(quantum_correlation(n, n) + 1.0) <= 1e-12;
    criterion(6, "correlation equals -a.b with perfect same-axis anticorrelation", ok);
  }

  // 7. 181-point scan: violated exactly on the open interior
  {
    std::vector<double> grid;
    for (int k = 0; k <= 180; ++k) grid.push_back(0.5 * pi * k / 180.0);
    const auto rows = bell_scan(grid);
    bool ok = rows.size() == 181;
    for (std::size_t k = 0; ok && k < rows.size(); ++k) {
      const bool interior = k > 0 && k + 1 < rows.size();
      ok = rows[k].violated == interior;
    }
    criterion(7, "scan flags violations exactly on the interior of (0, pi/2)", ok);
  }

  // 8. CHSH extreme and the 16-case identity
  {
    const auto q = chsh_quantum_fan();
    const bool ok = std::abs(q.s - (-2.0 * std::numbers::sqrt2)) <= 1e-12 &&
                    q.violates_classical_bound && chsh_identity_check();
    criterion(8, "standard fan reaches -2*sqrt(2); deterministic |S| stays 2", ok);
  }

  // 9. LHV harness: ten seeds, three angles, a million samples each
  {
    const sign_model model{};
    bool ok = true;
    double worst_seed_time = 0.0;
    for (std::uint64_t seed = 0; seed < 10 && ok; ++seed) {
      const auto t0 = std::chrono::steady_clock::now();
      for (double theta : {pi / 6.0, pi / 4.0, pi / 3.0}) {
        const auto a = direction::in_plane(0.0);
        const auto b = direction::in_plane(theta);
        const auto est = lhv_correlation(model, a, b, 1000000, seed);
        ok = ok && std::abs(est.mean - sign_model_closed_form(theta)) <= 0.01;
        const auto bell = lhv_bell_report(model, theta, 1000000, seed);
        ok = ok && bell.check.margin >= -4.0 * bell.combined_standard_error;
        const auto chsh = lhv_chsh_report(model, theta, 1000000, seed);
        ok = ok && std::abs(chsh.s) <= 2.0 + 4.0 * chsh.combined_standard_error;
      }
      worst_seed_time = std::max(worst_seed_time, seconds_since(t0));
    }
    criterion(9, "sign-model estimates track -1 + 2*theta/pi within 0.01 (<10 s/seed)",
              ok && worst_seed_time < 10.0);
  }

  // 10. operator algebra, eigenvalues, and the assignment enumeration
  {
    const auto ops = build_operators();
    const auto alg = verify_algebra(ops);
    const auto psi = ghz_state();
    const auto rep = realism_contradiction_report();
    const bool ok = alg.all_pass() && eigenvalue_check(ops.a, psi) == 1 &&
                    eigenvalue_check(ops.b, psi) == 1 &&
                    eigenvalue_check(ops.c, psi) == 1 &&
                    eigenvalue_check(ops.d, psi) == -1 &&
                    rep.satisfying.size() == 8 && rep.every_survivor_has_positive_d &&
                    rep.contradiction;
    criterion(10, "three-particle algebra and the eight surviving assignments", ok);
  }

  // 11. single interferometer output statistics
  {
    const auto with_bs = propagate_single_mz(bs_state::present);
    const auto without = propagate_single_mz(bs_state::removed);
    const bool ok =
        std::abs(with_bs.probability(mode_term::single(arm::f)) - 1.0) <= 1e-12 &&
        std::abs(with_bs.probability(mode_term::single(arm::g))) <= 1e-12 &&
        std::abs(without.probability(mode_term::single(arm::f)) - 0.5) <= 1e-12 &&
        std::abs(without.probability(mode_term::single(arm::g)) - 0.5) <= 1e-12;
    criterion(11, "exit splitter toggles interference on and off", ok);
  }

  // 12. four pair configurations against their reference states
  {
    const double r = 1.0 / std::numbers::sqrt2;
    const double q = 1.0 / (2.0 * std::numbers::sqrt2);
    using mt = mode_term;
    const auto pp = state_from({{mt::gamma(), cplx{-0.5, 0.0}},
                                {mt::pair(arm::f, arm::f), cplx{0.75, 0.0}},
                                {mt::pair(arm::f, arm::g), -iu * cplx{0.25, 0.0}},
                                {mt::pair(arm::g, arm::f), -iu * cplx{0.25, 0.0}},
                                {mt::pair(arm::g, arm::g), cplx{0.25, 0.0}}});
    const auto rp = state_from({{mt::gamma(), cplx{-0.5, 0.0}},
                                {mt::pair(arm::f, arm::f), cplx{q, 0.0}},
                                {mt::pair(arm::f, arm::g), -iu * cplx{q, 0.0}},
                                {mt::pair(arm::g, arm::f), -iu * cplx{r, 0.0}}});
    const auto pr = state_from({{mt::gamma(), cplx{-0.5, 0.0}},
                                {mt::pair(arm::f, arm::f), cplx{q, 0.0}},
                                {mt::pair(arm::g, arm::f), -iu * cplx{q, 0.0}},
                                {mt::pair(arm::f, arm::g), -iu * cplx{r, 0.0}}});
    // reference form carries the opposite overall sign; compared up to global phase
    const auto rr = state_from({{mt::gamma(), cplx{0.5, 0.0}},
                                {mt::pair(arm::g, arm::g), cplx{0.5, 0.0}},
                                {mt::pair(arm::g, arm::f), iu * cplx{0.5, 0.0}},
                                {mt::pair(arm::f, arm::g), iu * cplx{0.5, 0.0}}});

    bool ok = true;
    const struct {
      hardy_config cfg;
      const mode_state* reference;
    } cases[] = {
        {{bs_state::present, bs_state::present}, &pp},
        {{bs_state::removed, bs_state::present}, &rp},
        {{bs_state::present, bs_state::removed}, &pr},
        {{bs_state::removed, bs_state::removed}, &rr},
    };
    for (const auto& c : cases) {
      const auto s = propagate_hardy(c.cfg);
      ok = ok && std::abs(s.total_probability() - 1.0) <= 1e-12;
      ok = ok && equal_up_to_global_phase(s, *c.reference);
    }

    const auto facts = local_realism_table();
    ok = ok && std::abs(facts.p_joint_g_both_present - 1.0 / 16.0) <= 1e-12 &&
         std::abs(facts.p_joint_f_both_removed) <= 1e-12 &&
         std::abs(facts.g_plus_forces_f_minus.branch_fraction - 0.125) <= 1e-12 &&
         std::abs(facts.g_minus_forces_f_plus.branch_fraction - 0.125) <= 1e-12 &&
         facts.g_plus_forces_f_minus.holds && facts.g_minus_forces_f_plus.holds &&
         facts.contradiction;
    criterion(12, "four exit configurations and the forced-detection facts", ok);
  }

  // 13. moving-frame intermediate states and collapse values
  {
    const double r = 1.0 / std::numbers::sqrt2;
    const double q = 1.0 / (2.0 * std::numbers::sqrt2);
    using mt = mode_term;
    const auto k_plus_reference =
        state_from({{mt::gamma(), cplx{-0.5, 0.0}},
                    {mt::pair(arm::f, arm::d), -iu * cplx{r, 0.0}},
                    {mt::pair(arm::f, arm::e), cplx{q, 0.0}},
                    {mt::pair(arm::g, arm::e), -iu * cplx{q, 0.0}}});
    const auto k_minus_reference =
        state_from({{mt::gamma(), cplx{-0.5, 0.0}},
                    {mt::pair(arm::d, arm::f), -iu * cplx{r, 0.0}},
                    {mt::pair(arm::e, arm::f), cplx{q, 0.0}},
                    {mt::pair(arm::e, arm::g), -iu * cplx{q, 0.0}}});
    const auto kp = frame_intermediate(frame::k_plus);
    const auto km = frame_intermediate(frame::k_minus);
    bool ok = equal_up_to_global_phase(kp, k_plus_reference) &&
              equal_up_to_global_phase(km, k_minus_reference);

    const auto electron = collapse_after_detection(kp, {particle_tag::positron, arm::g});
    const auto positron = collapse_after_detection(km, {particle_tag::electron, arm::g});
    ok = ok && electron.terms().size() == 1 &&
         std::abs(electron.probability(mt::single(particle_tag::electron, arm::e)) -
                  1.0) <= 1e-12;
    ok = ok && positron.terms().size() == 1 &&
         std::abs(positron.probability(mt::single(particle_tag::positron, arm::e)) -
                  1.0) <= 1e-12;
    ok = ok && std::abs(joint_e_expectation(frame_intermediate(frame::k0))) <= 1e-12;
    const auto rep = make_frame_reality_report();
    ok = ok && rep.product_rule_violated;
    criterion(13, "frame-dependent certainties never combine in the lab frame", ok);
  }

  // 14. byte-identical CSV across identical seeded invocations
  {
    const std::string cmd =
        "\"" + cli + "\" lhv-sim --n 200000 --seed 123 --format csv";
    const auto first = run_cli(cmd);
    const auto second = run_cli(cmd);
    const bool ok = first.status == 0 && second.status == 0 &&
                    !first.out.empty() && first.out == second.out;
    criterion(14, "identical argv produces byte-identical csv", ok);
  }

  // Interface spot checks beyond the numbered criteria.
  {
    const auto ghz = run_cli("\"" + cli + "\" ghz-verify --format csv");
    extra("ghz-verify csv pins the D eigenvalue row",
          ghz.status == 0 &&
              ghz.out.find("D_eigenvalue,-1,Eq 4.11") != std::string::npos);

    const auto chsh = run_cli("\"" + cli + "\" chsh --config paper --format csv");
    extra("chsh paper preset prints the extreme value and exits 0",
          chsh.status == 0 &&
              chsh.out.find("s_value,-2.8284271247461903,Eq 3.7") !=
                  std::string::npos);

    const auto coincident = run_cli(
        "\"" + cli + "\" correlation --theta-a 0 --theta-b 0 --format csv");
    extra("coincident axes report perfect anticorrelation",
          coincident.status == 0 &&
              coincident.out.find("correlation,-1,Eq 3.3") != std::string::npos);

    const auto bad = run_cli("\"" + cli + "\" --no-such-flag 2>/dev/null");
    extra("unknown flag exits 2", bad.status == 2);

    const auto scan = run_cli("\"" + cli + "\" bell-scan --steps 3");
    int lines = 0;
    for (char ch : scan.out) lines += ch == '\n';
    // header comment + column header + 3 data rows + verdict
    extra("bell-scan --steps 3 table carries exactly 3 data rows",
          scan.status == 0 && lines == 6);

    const auto hardy = run_cli(
        "\"" + cli + "\" hardy --bs2-plus present --bs2-minus present --format csv");
    extra("hardy both-present csv reports the 1/16 row",
          hardy.status == 0 &&
              hardy.out.find("p_g+g-,0.0625,Eq 5.11") != std::string::npos);
  }

  if (failures == 0) {
    std::printf("all acceptance criteria hold\n");
    return 0;
  }
  std::printf("%d acceptance check(s) failed\n", failures);
  return 1;
}
