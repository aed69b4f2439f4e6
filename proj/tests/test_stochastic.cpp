#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "tline/collocation.hpp"
#include "tline/ensemble.hpp"
#include "tline/errors.hpp"

using namespace tline;

namespace {

// Uniform parameter on [a,b] through the mean/half-width parameterization.
uq::RandomParam uniform_on(const std::string& name, double a, double b) {
  const double mean = 0.5 * (a + b);
  return uq::RandomParam{name, mean, (b - a) / (2.0 * mean)};
}

std::vector<std::vector<double>> scalar_samples(const uq::CollocationGrid& grid,
                                                const std::function<double(const std::vector<double>&)>& f) {
  std::vector<std::vector<double>> samples(grid.total_points());
  for (std::size_t p = 0; p < grid.total_points(); ++p) {
    samples[p] = {f(grid.parameter_values(p))};
  }
  return samples;
}

}  // namespace

TEST_CASE("gauss rule matches the textbook low orders") {
  const auto one = uq::gauss_legendre(1);
  CHECK(one.nodes[0] == 0.0);
  CHECK(one.weights[0] == 2.0);

  const auto two = uq::gauss_legendre(2);
  CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(uq::gauss_legendre(0), validation_error);
  CHECK_THROWS_AS(uq::gauss_legendre(101), validation_error);
}

TEST_CASE("five-point rule integrates degree eight exactly") {
  const auto rule = uq::gauss_legendre(5);
  double integral = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    integral += rule.weights[i] * std::pow(rule.nodes[i], 8);
  }
  CHECK(integral == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("weights sum to two for every order") {
  for (std::size_t n : {1u, 2u, 3u, 5u, 10u, 33u, 100u}) {
    const auto rule = uq::gauss_legendre(n);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("normalization: E[1] = 1 for one to six dimensions") {
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<uq::RandomParam> dims;
    for (std::size_t d = 0; d < k; ++d) {
      dims.push_back(uq::RandomParam{"p" + std::to_string(d), 2.0 + static_cast<double>(d), 0.1});
    }
    const uq::CollocationGrid grid(dims, 3);
    const auto mean = uq::expectation(
        grid, std::vector<std::vector<double>>(grid.total_points(), {1.0}));
    CHECK(mean[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("grid bookkeeping: counts, bounds, mapped nodes") {
  const uq::CollocationGrid grid({uniform_on("a", 1.0, 3.0), uniform_on("b", 10.0, 14.0)}, 5);
  CHECK(grid.total_points() == 25);
  CHECK(grid.dim_count() == 2);
  for (std::size_t p = 0; p < grid.total_points(); ++p) {
    const auto values = grid.parameter_values(p);
    CHECK(values[0] > 1.0);
    CHECK(values[0] < 3.0);
    CHECK(values[1] > 10.0);
    CHECK(values[1] < 14.0);
  }

  // 4 dims at n=5 is exactly 625 realizations; 5 dims is 3125.
  std::vector<uq::RandomParam> four(4, uniform_on("x", 1.0, 2.0));
  CHECK(uq::CollocationGrid(four, 5).total_points() == 625);
  std::vector<uq::RandomParam> five(5, uniform_on("x", 1.0, 2.0));
  CHECK(uq::CollocationGrid(five, 5).total_points() == 3125);
}

TEST_CASE("expectation matches uniform moments") {
  const double a = 2.0, b = 5.0;
  const uq::CollocationGrid grid({uniform_on("x", a, b)}, 5);

  SUBCASE("constant") {
    const auto mean = uq::expectation(
        grid, std::vector<std::vector<double>>(grid.total_points(), {7.5}));
    CHECK(mean[0] == doctest::Approx(7.5).epsilon(1e-14));
  }

  SUBCASE("linear: E = (a+b)/2") {
    const auto samples = scalar_samples(grid, [](const std::vector<double>& v) { return v[0]; });
    const auto mean = uq::expectation(grid, samples);
    CHECK(mean[0] == doctest::Approx((a + b) / 2.0).epsilon(1e-14));
  }

  SUBCASE("quadratic: E = (a^2+ab+b^2)/3") {
    const auto samples =
        scalar_samples(grid, [](const std::vector<double>& v) { return v[0] * v[0]; });
    const auto mean = uq::expectation(grid, samples);
    CHECK(mean[0] == doctest::Approx((a * a + a * b + b * b) / 3.0).epsilon(1e-14));
  }

  SUBCASE("missing realizations are rejected") {
    std::vector<std::vector<double>> short_set(grid.total_points() - 1, {1.0});
    CHECK_THROWS_AS(uq::expectation(grid, short_set), validation_error);
  }
}

TEST_CASE("standard deviation matches uniform variance") {
  const double a = 2.0, b = 5.0;
  const uq::CollocationGrid grid({uniform_on("x", a, b)}, 5);

  SUBCASE("constant has zero spread") {
    const std::vector<std::vector<double>> samples(grid.total_points(), {3.0});
    const auto mean = uq::expectation(grid, samples);
    const auto sd = uq::std_dev(grid, samples, mean);
    CHECK(sd[0] == doctest::Approx(0.0));
  }

  SUBCASE("linear: sigma = (b-a)/sqrt(12)") {
    const auto samples = scalar_samples(grid, [](const std::vector<double>& v) { return v[0]; });
    const auto mean = uq::expectation(grid, samples);
    const auto sd = uq::std_dev(grid, samples, mean);
    CHECK(sd[0] == doctest::Approx((b - a) / std::sqrt(12.0)).epsilon(1e-13));
  }

  SUBCASE("independent linear terms add in variance") {
    const uq::CollocationGrid grid2({uniform_on("x", 2.0, 5.0), uniform_on("y", 1.0, 2.0)}, 5);
    const auto samples = scalar_samples(
        grid2, [](const std::vector<double>& v) { return 3.0 * v[0] + 4.0 * v[1]; });
    const auto mean = uq::expectation(grid2, samples);
    const auto sd = uq::std_dev(grid2, samples, mean);
    const double var_x = 9.0 * 9.0 / 12.0;   // 3^2 (b-a)^2/12
    const double var_y = 16.0 * 1.0 / 12.0;  // 4^2 (b-a)^2/12
    CHECK(sd[0] == doctest::Approx(std::sqrt(var_x + var_y)).epsilon(1e-13));
  }
}

TEST_CASE("first-order Sobol indices") {
  const uq::CollocationGrid grid({uniform_on("x", 1.0, 3.0), uniform_on("y", 4.0, 6.0)}, 5);

  SUBCASE("single-input dependence puts everything on that input") {
    const auto samples = scalar_samples(
        grid, [](const std::vector<double>& v) { return v[0] * v[0] + 2.0 * v[0]; });
    const auto sobol = uq::sobol_first_order(grid, samples);
    CHECK(sobol.defined[0] == 1);
    CHECK(sobol.indices[0][0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sobol.indices[1][0] == doctest::Approx(0.0).epsilon(1e-10));
  }

  SUBCASE("additive model splits the variance exactly") {
    const auto samples = scalar_samples(
        grid, [](const std::vector<double>& v) { return v[0] * v[0] + 3.0 * v[1]; });
    const auto sobol = uq::sobol_first_order(grid, samples);
    const double s1 = sobol.indices[0][0];
    const double s2 = sobol.indices[1][0];
    CHECK(s1 + s2 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s1 >= 0.0);
    CHECK(s2 >= 0.0);

    // Analytic split: Var(x^2) on [1,3] vs 9 Var(y) on [4,6].
    // E[x^2] = 13/3, E[x^4] = 121/5 -> Var = 121/5 - 169/9
    const double var1 = 121.0 / 5.0 - 169.0 / 9.0;
    const double var2 = 9.0 * (1.0 / 3.0);
    CHECK(s1 == doctest::Approx(var1 / (var1 + var2)).epsilon(1e-10));
  }

  SUBCASE("pure interaction leaves first-order indices at zero") {
    const auto samples = scalar_samples(grid, [](const std::vector<double>& v) {
      return (v[0] - 2.0) * (v[1] - 5.0);  // both factors are zero-mean
    });
    const auto sobol = uq::sobol_first_order(grid, samples);
    CHECK(sobol.defined[0] == 1);
    CHECK(sobol.indices[0][0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sobol.indices[1][0] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sobol.indices[0][0] + sobol.indices[1][0] < 1.0);
  }

  SUBCASE("vanishing variance is flagged undefined") {
    const std::vector<std::vector<double>> samples(grid.total_points(), {42.0});
    const auto sobol = uq::sobol_first_order(grid, samples);
    CHECK(sobol.defined[0] == 0);
  }
}

TEST_CASE("failure probability from indicator series") {
  const uq::CollocationGrid grid({uniform_on("x", 0.0, 2.0)}, 5);

  SUBCASE("nobody fails") {
    const std::vector<std::vector<double>> h(grid.total_points(), {0.0, 0.0, 0.0});
    const auto pf = uq::probability_of_failure(grid, h);
    for (double v : pf) CHECK(v == 0.0);
  }

  SUBCASE("everyone fails from step two") {
    const std::vector<std::vector<double>> h(grid.total_points(), {0.0, 1.0, 1.0});
    const auto pf = uq::probability_of_failure(grid, h);
    CHECK(pf[0] == 0.0);
    CHECK(pf[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pf[2] == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("upper half of the grid failing sums those weights") {
    // Nodes 3 and 4 of the ascending 5-point rule fail at the only step.
    std::vector<std::vector<double>> h(grid.total_points(), {0.0});
    h[3] = {1.0};
    h[4] = {1.0};
    const auto pf = uq::probability_of_failure(grid, h);
    const auto rule = uq::gauss_legendre(5);
    const double expected = 0.5 * (rule.weights[3] + rule.weights[4]);
    CHECK(pf[0] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("probability of failure is monotone when indicators are absorbing") {
  const uq::CollocationGrid grid({uniform_on("x", 1.0, 2.0)}, 5);
  std::vector<std::vector<double>> h(grid.total_points());
  for (std::size_t p = 0; p < h.size(); ++p) {
    h[p].assign(10, 0.0);
    for (std::size_t t = 3 + p; t < 10; ++t) h[p][t] = 1.0;
  }
  const auto pf = uq::probability_of_failure(grid, h);
  for (std::size_t t = 1; t < pf.size(); ++t) {
    CHECK(pf[t] >= pf[t - 1]);
    CHECK(pf[t] <= 1.0);
  }
}

TEST_CASE("relative error definition") {
  const std::vector<double> ref = {1.0, 2.0, 3.0};
  CHECK(uq::relative_error(ref, ref) == 0.0);

  std::vector<double> scaled = ref;
  for (double& v : scaled) v *= 1.01;
  CHECK(uq::relative_error(scaled, ref) == doctest::Approx(0.01).epsilon(1e-12));

  // Independent norm computation on a random perturbation.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> delta(-0.1, 0.1);
  std::vector<double> perturbed = ref;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = delta(rng);
    perturbed[i] += d;
    num += d * d;
    den += ref[i] * ref[i];
  }
  CHECK(uq::relative_error(perturbed, ref) ==
        doctest::Approx(std::sqrt(num / den)).epsilon(1e-12));

  CHECK_THROWS_AS(uq::relative_error({1.0}, {0.0}), validation_error);
  CHECK_THROWS_AS(uq::relative_error({1.0, 2.0}, {1.0}), validation_error);
}

TEST_CASE("sample statistics for the Monte Carlo path") {
  SUBCASE("constant input") {
    const std::vector<std::vector<double>> samples(17, {4.0});
    const auto stats = uq::sample_stats(samples);
    CHECK(stats.mean[0] == doctest::Approx(4.0));
    CHECK(stats.stddev[0] == 0.0);
  }

  SUBCASE("mean of uniform draws approaches the midpoint at the CLT rate") {
    std::mt19937_64 rng(2024);
    const double a = 2.0, b = 4.0;
    std::uniform_real_distribution<double> dist(a, b);
    const double sigma = (b - a) / std::sqrt(12.0);

    int within = 0;
    const int trials = 40;
    const std::size_t n = 4000;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<std::vector<double>> samples(n);
      for (auto& s : samples) s = {dist(rng)};
      const auto stats = uq::sample_stats(samples);
      const double err = std::abs(stats.mean[0] - (a + b) / 2.0);
      if (err <= 3.0 * sigma / std::sqrt(static_cast<double>(n))) ++within;
    }
    CHECK(within >= trials - 2);  // ~99.7% inside three standard errors
  }
}

TEST_CASE("synthetic pcm ensemble via evaluate_grid is deterministic") {
  const uq::CollocationGrid grid({uniform_on("x", 1.0, 2.0)}, 4);
  auto fn = [](const std::vector<double>& v) {
    return std::vector<double>{v[0], v[0] * v[0]};
  };
  const auto a = uq::evaluate_grid(grid, fn, 4);
  const auto b = uq::evaluate_grid(grid, fn, 1);
  REQUIRE(a.size() == b.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    CHECK(a[p][0] == b[p][0]);
    CHECK(a[p][1] == b[p][1]);
  }
}
