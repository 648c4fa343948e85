#include <catch2/catch_amalgamated.hpp>
#include <qfound/bell.hpp>

#include <array>
#include <cmath>
#include <numbers>

using namespace qfound;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("bell_check evaluates the three-correlation inequality", "[bell]") {
  // coplanar settings at 60 degree spacing: lhs 1, rhs 1/2 -> violated
  const auto r = bell_check(-0.5, 0.5, -0.5);
  REQUIRE(std::abs(r.lhs - 1.0) <= eq_tol);
  REQUIRE(std::abs(r.rhs - 0.5) <= eq_tol);
  REQUIRE(std::abs(r.margin + 0.5) <= eq_tol);
  REQUIRE_FALSE(r.satisfied);

  // boundary saturation counts as satisfied
  const auto b = bell_check(-1.0, -1.0, -1.0);
  REQUIRE(std::abs(b.margin) <= eq_tol);
  REQUIRE(b.satisfied);

  REQUIRE_THROWS_AS(bell_check(1.5, 0.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(bell_check(0.0, -1.2, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(bell_check(0.0, 0.0, std::nan("")), std::invalid_argument);
}

TEST_CASE("chsh_value and the sixteen-case identity", "[bell]") {
  REQUIRE(std::abs(chsh_value(1.0, -1.0, 1.0, 1.0) - 4.0) <= eq_tol);
  REQUIRE(std::abs(chsh_value(0.5, -0.5, 0.5, 0.5) - 2.0) <= eq_tol);
  REQUIRE_THROWS_AS(chsh_value(3.0, 0.0, 0.0, 0.0), std::invalid_argument);
  // deterministic +-1 assignments always give |S| = 2
  REQUIRE(chsh_identity_check());
}

TEST_CASE("quantum chsh at the standard fan", "[bell]") {
  const auto q = chsh_quantum_fan();
  const double v = -std::numbers::sqrt2 / 2.0;
  REQUIRE(std::abs(q.p_ab - v) <= eq_tol);
  REQUIRE(std::abs(q.p_ab_prime + v) <= eq_tol);
  REQUIRE(std::abs(q.p_ap_b - v) <= eq_tol);
  REQUIRE(std::abs(q.p_ap_bp - v) <= eq_tol);
  REQUIRE(std::abs(q.s - (-2.0 * std::numbers::sqrt2)) <= eq_tol);
  REQUIRE(q.s == Catch::Approx(-2.8284271247461903).margin(1e-12));
  REQUIRE(q.violates_classical_bound);

  // any nonzero spacing violates: S(s) = -3 cos s + cos 3s = -2 - 3 s^2 + O(s^4)
  const auto gentle = chsh_quantum(0.0, 0.01, 0.02, 0.03);
  REQUIRE(gentle.violates_classical_bound);
  REQUIRE(gentle.s == Catch::Approx(-2.0 - 3.0 * 1e-4).margin(1e-7));

  // a quarter-turn fan kills every correlation and the bound holds
  const auto flat = chsh_quantum(0.0, pi / 2.0, pi, 1.5 * pi);
  REQUIRE(std::abs(flat.s) <= eq_tol);
  REQUIRE_FALSE(flat.violates_classical_bound);
}

TEST_CASE("bell_scan flags the interior and clears the endpoints", "[bell]") {
  const auto rows = bell_scan({0.0, pi / 4.0, pi / 2.0});
  REQUIRE(rows.size() == 3);
  REQUIRE_FALSE(rows[0].violated);
  REQUIRE(rows[1].violated);
  REQUIRE_FALSE(rows[2].violated);
  // margin at pi/4 is 1 - sqrt(2)
  REQUIRE(std::abs((rows[1].rhs - rows[1].lhs) - (1.0 - std::numbers::sqrt2)) <=
          1e-12);
  // endpoints saturate: margin 0
  REQUIRE(std::abs(rows[0].rhs - rows[0].lhs) <= 1e-12);
  REQUIRE(std::abs(rows[2].rhs - rows[2].lhs) <= 1e-12);

  REQUIRE_THROWS_AS(bell_scan({-0.1}), std::invalid_argument);
  REQUIRE_THROWS_AS(bell_scan({pi / 2.0 + 0.1}), std::invalid_argument);

  // a denser grid is violated at every interior point
  std::vector<double> grid;
  for (int k = 0; k < 181; ++k) grid.push_back(0.5 * pi * k / 180.0);
  const auto dense = bell_scan(grid);
  REQUIRE(dense.size() == 181);
  for (std::size_t k = 1; k + 1 < dense.size(); ++k) REQUIRE(dense[k].violated);
  REQUIRE_FALSE(dense.front().violated);
  REQUIRE_FALSE(dense.back().violated);
}

static_assert(lhv_model<sign_model>);

TEST_CASE("lhv_correlation basics", "[bell]") {
  const sign_model model{};
  const auto a = direction::in_plane(0.7);

  // identical settings: the product is -1 on every draw
  const auto same = lhv_correlation(model, a, a, 5000, 3);
  REQUIRE(same.mean == -1.0);
  REQUIRE(same.standard_error == 0.0);
  REQUIRE(same.n_samples == 5000);

  // bit-reproducible across calls
  const auto b = direction::in_plane(1.2);
  const auto e1 = lhv_correlation(model, a, b, 20000, 9);
  const auto e2 = lhv_correlation(model, a, b, 20000, 9);
  REQUIRE(e1.mean == e2.mean);
  REQUIRE(e1.standard_error == e2.standard_error);
  REQUIRE(e1.mean >= -1.0);
  REQUIRE(e1.mean <= 1.0);
  REQUIRE(e1.standard_error > 0.0);

  REQUIRE_THROWS_AS(lhv_correlation(model, a, b, 0, 1), std::invalid_argument);
}

TEST_CASE("chunked sampling matches a direct pass over the substreams", "[bell]") {
  const sign_model model{};
  const auto a = direction::in_plane(0.0);
  const auto b = direction::in_plane(1.0);
  const std::size_t n = 70000;  // crosses one chunk boundary
  const std::uint64_t seed = 17;

  long long sum = 0;
  std::size_t done = 0;
  for (std::uint64_t chunk = 0; done < n; ++chunk) {
    rng_stream rng = rng_stream::substream(seed, chunk);
    const std::size_t count = std::min<std::size_t>(std::size_t{1} << 16, n - done);
    for (std::size_t i = 0; i < count; ++i) {
      const auto lam = model.sample(rng);
      sum += model.response_a(a, lam) * model.response_b(b, lam);
    }
    done += count;
  }
  const double mean = static_cast<double>(sum) / static_cast<double>(n);
  const auto est = lhv_correlation(model, a, b, n, seed);
  REQUIRE(est.mean == mean);
}

TEST_CASE("sign model tracks its closed form", "[bell]") {
  const sign_model model{};
  for (double theta : {pi / 6.0, pi / 4.0, pi / 3.0}) {
    const auto a = direction::in_plane(0.0);
    const auto b = direction::in_plane(theta);
    const auto est = lhv_correlation(model, a, b, 200000, 5);
    const double target = sign_model_closed_form(theta);
    REQUIRE(std::abs(est.mean - target) <= 0.015);
    // the closed form differs visibly from the quantum value at pi/4
  }
  REQUIRE(std::abs(sign_model_closed_form(pi / 2.0)) <= eq_tol);
  REQUIRE(std::abs(sign_model_closed_form(0.0) + 1.0) <= eq_tol);
  REQUIRE(std::abs(sign_model_closed_form(pi) - 1.0) <= eq_tol);
}

TEST_CASE("shared-ensemble reports respect the classical bounds in sample",
          "[bell]") {
  const sign_model model{};
  for (double theta : {0.3, pi / 4.0, 1.2}) {
    const auto bell = lhv_bell_report(model, theta, 50000, 11);
    // perfect anticorrelation models satisfy the inequality exactly in sample
    REQUIRE(bell.check.margin >= -1e-9);
    REQUIRE(bell.check.satisfied);
    REQUIRE(bell.combined_standard_error >= bell.p_ab.standard_error);

    const auto chsh = lhv_chsh_report(model, theta, 50000, 11);
    // the pointwise identity caps |S| at 2 for any shared ensemble
    REQUIRE(std::abs(chsh.s) <= 2.0 + 1e-9);
    REQUIRE(chsh.within_classical_bound);
  }
}

namespace {
// deterministic model with unrelated responses on the two sides; exercises
// the harness bound for models without built-in anticorrelation
struct skew_model {
  using lambda_type = std::array<double, 3>;
  lambda_type sample(rng_stream& rng) const { return rng.unit_vector3(); }
  int response_a(const direction& d, const lambda_type& lam) const {
    auto u = d.unit_vector();
    return (u[0] * lam[0] + u[1] * lam[1] + u[2] * lam[2]) >= 0.0 ? 1 : -1;
  }
  int response_b(const direction& d, const lambda_type& lam) const {
    auto u = d.unit_vector();
    return (u[0] * lam[1] - u[2] * lam[0] + 0.2 * lam[2]) >= 0.0 ? 1 : -1;
  }
};
}  // namespace

static_assert(lhv_model<skew_model>);

TEST_CASE("the chsh bound holds in sample for any lhv model", "[bell]") {
  const skew_model model{};
  for (std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
    const auto chsh = lhv_chsh_report(model, pi / 4.0, 30000, seed);
    REQUIRE(std::abs(chsh.s) <= 2.0 + 1e-9);
    REQUIRE(chsh.within_classical_bound);
  }
}
