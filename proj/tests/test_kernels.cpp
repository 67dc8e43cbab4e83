#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "whitham/errors.hpp"
#include "whitham/kernels.hpp"

using namespace whitham;

namespace {
std::vector<double> half_step_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(0.5 * i);
  return g;
}
}  // namespace

TEST_CASE("multiplier spot values") {
  CHECK(multiplier(PhaseVelocity::whitham(), 0.0) == 1.0);
  // sqrt(tanh 2 / 2) to 40 digits: 0.69427212967100187...
  CHECK(std::abs(multiplier(PhaseVelocity::whitham(), 2.0) - 0.69427212967100187) <= 1e-15);
  CHECK(multiplier(PhaseVelocity::exponential(1), 0.0) == 2.0);
  CHECK(multiplier(PhaseVelocity::gaussian(1), 0.0) == doctest::Approx(std::sqrt(2 * std::numbers::pi)));
}

TEST_CASE("whitham symbol is continuous across the small-kappa patches") {
  const auto w = PhaseVelocity::whitham();
  for (double k : {0.5e-8, 2e-8, 0.5e-4, 2e-4, 1e-3}) {
    const double direct = std::sqrt(std::tanh(k) / k);
    CHECK(multiplier(w, k) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("multiplier is even for every variant") {
  const auto tab = PhaseVelocity::tabulated({{0, 1}, {1, 0.5}, {3, 0.1}});
  for (const auto& pv : {PhaseVelocity::gaussian(0.7), PhaseVelocity::exponential(2.5), PhaseVelocity::whitham(), tab}) {
    for (double k : {0.0, 1e-9, 1e-5, 0.3, 1.0, 2.9, 2.999}) CHECK(multiplier(pv, k) == multiplier(pv, -k));
  }
}

TEST_CASE("tabulated symbol validates input and range") {
  CHECK_THROWS_AS(PhaseVelocity::tabulated({{0, 1}}), DomainError);
  CHECK_THROWS_AS(PhaseVelocity::tabulated({{0, 1}, {0, 2}}), DomainError);
  CHECK_THROWS_AS(PhaseVelocity::tabulated({{-1, 1}, {1, 2}}), DomainError);
  const auto tab = PhaseVelocity::tabulated({{0, 1}, {2, 0}});
  CHECK(multiplier(tab, 1.0) == 0.5);
  CHECK(multiplier(tab, -1.5) == 0.25);
  CHECK_THROWS_AS(multiplier(tab, 2.5), RangeError);
}

TEST_CASE("kernel_eval closed forms") {
  CHECK(kernel_eval(PhaseVelocity::gaussian(1), 0.0) == 1.0);
  CHECK(kernel_eval(PhaseVelocity::exponential(1), 0.5) == doctest::Approx(0.60653065971263342).epsilon(1e-15));
  CHECK(kernel_eval(PhaseVelocity::gaussian(1), -2.0) == kernel_eval(PhaseVelocity::gaussian(1), 2.0));
  CHECK(kernel_eval(PhaseVelocity::exponential(3), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(kernel_eval(PhaseVelocity::gaussian(2.5), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(kernel_eval(PhaseVelocity::whitham(), 0.0), SingularityError);
}

TEST_CASE("quadrature inverse transform agrees with the closed forms") {
  const auto g = PhaseVelocity::gaussian(1);
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    CHECK(std::abs(kernel_eval_quadrature(g, x) - kernel_eval(g, x)) <= 1e-8);
  }
  const auto e = PhaseVelocity::exponential(1);
  CHECK(std::abs(kernel_eval_quadrature(e, 0.5, 1e-6) - std::exp(-0.5)) <= 1e-6);
}

TEST_CASE("quadrature reports unmet tolerance with the achieved error") {
  const auto e = PhaseVelocity::exponential(1);
  // The 1/kappa^2 tail truncated where c < 1e-12 leaves ~5e-7 at x = 0.
  try {
    kernel_eval_quadrature(e, 0.0, 1e-10);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& err) {
    CHECK(err.achieved() > 1e-10);
    CHECK(err.achieved() < 1e-5);
  }
  CHECK_THROWS_AS(kernel_eval_quadrature(PhaseVelocity::whitham(), 1.0), DomainError);
}

TEST_CASE("tabulated Gaussian symbol reproduces the Gaussian kernel") {
  const auto g = PhaseVelocity::gaussian(1);
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i <= 4000; ++i) {
    const double k = 10.0 * i / 4000;
    samples.emplace_back(k, multiplier(g, k));
  }
  const auto tab = PhaseVelocity::tabulated(samples);
  // Piecewise-linear symbol: error O(h^2) = O(6e-6) on the integral.
  CHECK(kernel_eval(tab, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-5));
}

TEST_CASE("admissibility checks") {
  const auto grid = half_step_grid();
  const auto g = check_admissibility(PhaseVelocity::gaussian(1), grid);
  CHECK(g.bounded);
  CHECK(g.integrable);
  CHECK(g.symmetric);
  CHECK(g.monotone_decreasing_on_right);
  REQUIRE(g.k_at_zero);
  CHECK(*g.k_at_zero == 1.0);
  CHECK(g.probe_grid == grid);

  const auto w = check_admissibility(PhaseVelocity::whitham(), grid);
  CHECK_FALSE(w.bounded);
  CHECK_FALSE(w.k_at_zero);

  const auto e = check_admissibility(PhaseVelocity::exponential(1), grid);
  CHECK(e.bounded);
  CHECK(e.integrable);
  CHECK(e.symmetric);
  CHECK(e.monotone_decreasing_on_right);
  REQUIRE(e.k_at_zero);
  CHECK(*e.k_at_zero == 1.0);
  CHECK(e.notes.find("Lipschitz") != std::string::npos);

  // A symbol whose kernel oscillates is not monotone on the right.
  const auto box = PhaseVelocity::tabulated({{0, 1}, {3, 1}, {3.001, 0}, {5, 0}});
  const auto b = check_admissibility(box, grid);
  CHECK(b.bounded);
  CHECK_FALSE(b.monotone_decreasing_on_right);

  CHECK_THROWS(check_admissibility(PhaseVelocity::gaussian(1), {}));
  CHECK_THROWS(check_admissibility(PhaseVelocity::gaussian(1), {1.0, 0.5}));
}

TEST_CASE("parse_kernel") {
  CHECK(kernel_name(parse_kernel("gaussian:1")) == "gaussian:1");
  CHECK(kernel_name(parse_kernel("exponential:2.5")) == "exponential:2.5");
  CHECK(parse_kernel("whitham").is_whitham());
  CHECK_THROWS_AS(parse_kernel("lorentz:1"), ConfigError);
  CHECK_THROWS_AS(parse_kernel("gaussian"), ConfigError);
  CHECK_THROWS_AS(parse_kernel("gaussian:abc"), ConfigError);
  CHECK_THROWS_AS(parse_kernel("gaussian:-1"), DomainError);

  const auto path = std::filesystem::temp_directory_path() / "whitham_kernel_table.csv";
  {
    std::ofstream os(path);
    os << "kappa,c\n0,1\n1,0.5\n2,0.25\n";
  }
  const auto tab = parse_kernel("tabulated:" + path.string());
  CHECK(multiplier(tab, 1.5) == doctest::Approx(0.375));
  std::filesystem::remove(path);
}
