#include <doctest.h>

#include <cmath>
#include <numbers>

#include "whitham/errors.hpp"
#include "whitham/solver.hpp"

using namespace whitham;

namespace {

const double kL = 40;

PhaseVelocity zero_symbol() { return PhaseVelocity::tabulated({{0, 0}, {1e4, 0}}, "zero"); }

RealArray grid_points(Eigen::Index n) { return RealArray::LinSpaced(n, 0, double(n - 1)) * (kL / double(n)); }

}  // namespace

TEST_CASE("rhs of the zero state vanishes") {
  const WhithamSolver solver(PhaseVelocity::gaussian(1), 256, kL);
  const ComplexArray zero = ComplexArray::Zero(solver.grid().modes());
  CHECK(solver.rhs(zero).abs().maxCoeff() == 0.0);
}

TEST_CASE("rhs of a cosine without dispersion is the Burgers flux") {
  const Eigen::Index n = 256;
  const WhithamSolver solver(zero_symbol(), n, kL);
  const RealArray x = grid_points(n);
  const RealArray u = (x * (2 * std::numbers::pi / kL)).cos();
  const RealArray expected = (std::numbers::pi / kL) * (x * (4 * std::numbers::pi / kL)).sin();
  const RealArray got = solver.grid().inverse(solver.rhs(solver.grid().forward(u)));
  CHECK((got - expected).abs().maxCoeff() <= 1e-13);
}

TEST_CASE("linear step reproduces the exact phase shift") {
  const Eigen::Index n = 256;
  SolverConfig cfg;
  cfg.nonlinear = false;
  for (const auto& pv : {PhaseVelocity::gaussian(1), PhaseVelocity::whitham()}) {
    const WhithamSolver solver(pv, n, kL, cfg);
    const RealArray x = grid_points(n);
    const RealArray u0 = (x * (2 * std::numbers::pi / kL)).cos();
    const ComplexArray u_hat0 = solver.grid().forward(u0);
    ComplexArray u_hat = u_hat0;
    double t = 0;
    solver.step(u_hat, t, 0.73);
    CHECK(t == 0.73);
    // Traveling wave with speed c(2 pi / L).
    const double kappa = 2 * std::numbers::pi / kL;
    const double speed = multiplier(pv, kappa);
    const RealArray exact = (kappa * (x - speed * 0.73)).cos();
    CHECK((solver.grid().inverse(u_hat) - exact).abs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("linear evolution is exact for any step sequence") {
  const Eigen::Index n = 512;
  SolverConfig cfg;
  cfg.nonlinear = false;
  cfg.dealias_fraction = 1;
  const auto ic = build_profile(-4, 2, kL, 2, n);
  for (const auto& pv : {PhaseVelocity::gaussian(1), PhaseVelocity::whitham()}) {
    const WhithamSolver solver(pv, n, kL, cfg);
    const ComplexArray u_hat0 = solver.dealias(solver.grid().forward(ic.samples));
    ComplexArray u_hat = u_hat0;
    double t = 0;
    for (double dt : {0.1, 0.013, 0.25, 0.3, 0.007, 0.2}) solver.step(u_hat, t, dt);
    solver.step(u_hat, t, 1.0 - t);
    const RealArray exact = solver.grid().inverse(solver.linear_evolution(u_hat0, 1.0));
    CHECK((solver.grid().inverse(u_hat) - exact).abs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("zero state stays zero and the mean is conserved") {
  const Eigen::Index n = 256;
  const WhithamSolver solver(PhaseVelocity::gaussian(1), n, kL);
  ComplexArray zero = ComplexArray::Zero(solver.grid().modes());
  double t = 0;
  solver.step(zero, t, 0.01);
  CHECK(zero.abs().maxCoeff() == 0.0);

  const auto ic = build_profile(-0.5, 0.5, kL, 2, n);
  RealArray shifted = ic.samples + 0.3;
  ComplexArray u_hat = solver.dealias(solver.grid().forward(shifted));
  const double mean0 = u_hat(0).real() / double(n);
  t = 0;
  for (int i = 0; i < 1000; ++i) solver.step(u_hat, t, 1e-3);
  CHECK(std::abs(u_hat(0).real() / double(n) - mean0) <= 1e-13);
  CHECK(u_hat(0).imag() == 0.0);
}

TEST_CASE("non-finite state raises the blowup signal") {
  const WhithamSolver solver(PhaseVelocity::gaussian(1), 256, kL);
  ComplexArray u_hat = ComplexArray::Zero(solver.grid().modes());
  u_hat(3) = std::complex<double>(NAN, 0);
  double t = 0;
  CHECK_THROWS_AS(solver.step(u_hat, t, 0.01), BlowupSignal);
  CHECK(t == 0.0);
}

TEST_CASE("configuration errors") {
  SolverConfig bad;
  bad.cfl = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.dealias_fraction = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  SolverConfig mismatch;
  mismatch.grid_size = 512;
  CHECK_THROWS_AS(run(build_profile(-1, 1, kL, 2, 256), PhaseVelocity::gaussian(1), mismatch), ConfigError);
  CHECK_THROWS_AS(WhithamSolver(PhaseVelocity::tabulated({{0, 1}, {1, 1}}), 256, kL), ConfigError);
}

TEST_CASE("zero initial data resolves to the horizon") {
  SolverConfig cfg;
  cfg.max_time = 0.5;
  const auto report = run(from_samples(RealArray::Zero(256), kL), PhaseVelocity::gaussian(1), cfg);
  CHECK(report.verdict.kind == VerdictKind::ResolvedToHorizon);
  CHECK(report.verdict.time == 0.5);
  CHECK(report.series.back().t == 0.5);
  for (const auto& s : report.series) {
    CHECK(s.m1 == 0.0);
    CHECK(s.m2 == 0.0);
  }
}

TEST_CASE("mild data does not trigger the detector") {
  SolverConfig cfg;
  cfg.max_time = 5;
  cfg.output_stride = 10;
  const auto report = run(build_profile(-0.2, 0.2, kL, 2, 1024), PhaseVelocity::gaussian(1), cfg);
  CHECK(report.verdict.kind == VerdictKind::ResolvedToHorizon);
  double t_prev = -1;
  for (const auto& s : report.series) {
    CHECK(s.t > t_prev);
    t_prev = s.t;
    CHECK(s.m1 <= 0.0);
    CHECK(s.m2 >= -1e-12);
    CHECK(std::abs(s.m1) <= 1.0);
    CHECK(s.xi1 >= 0.0);
    CHECK(s.xi1 < kL);
  }
  CHECK(report.series.back().t == 5.0);
}

TEST_CASE("steep data breaks before the theoretical deadline") {
  SolverConfig cfg;
  cfg.max_time = 1;
  const auto report = run(build_profile(-4, 2, kL, 2, 2048), PhaseVelocity::gaussian(1), cfg);
  REQUIRE(report.verdict.kind == VerdictKind::BrokeAt);
  const double T = breaking_time_bound(SlopePair<double>{-4, 2});
  CHECK(report.verdict.time <= T + 0.05);
  CHECK(report.series.back().m1 <= report.slope_threshold());
  const auto summary = summary_record(report);
  CHECK(summary[0].first == "verdict");
  CHECK(summary[0].second == "BrokeAt");
  CHECK(summary[4].second == "true");
}

TEST_CASE("whitham kernel runs but carries no bounds") {
  SolverConfig cfg;
  cfg.max_time = 0.05;
  const auto report = run(build_profile(-1, 1, kL, 2, 256), PhaseVelocity::whitham(), cfg);
  CHECK_FALSE(report.kernel_at_zero);
  const auto summary = summary_record(report);
  CHECK(summary[2].second == "none");
  CHECK(summary.back().second.find("do not apply") != std::string::npos);
}

TEST_CASE("series CSV round trip") {
  SolverConfig cfg;
  cfg.max_time = 0.2;
  const auto report = run(build_profile(-2.5, 1, kL, 2, 256), PhaseVelocity::exponential(1), cfg);
  const auto text = format_series_csv(report.series);
  CHECK(text.rfind("t,m1,m2,xi1,xi2,dt,tail_ratio\n", 0) == 0);
  CHECK(parse_series_csv(text) == report.series);
}
