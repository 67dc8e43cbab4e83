#include <doctest.h>

#include <cmath>
#include <random>

#include "whitham/ode_phase.hpp"

using namespace whitham;
using P = SlopePair<double>;

TEST_CASE("vector field spot values") {
  CHECK(vector_field(0.0, 0.0) == Eigen::Vector2d(0, 0));
  CHECK(vector_field(-2.0, 2.0) == Eigen::Vector2d(0, 0));
  CHECK(vector_field(-3.0, 4.0) == Eigen::Vector2d(-2, -9));
  CHECK(vector_field(Eigen::Vector2d(-3, 4)) == Eigen::Vector2d(-2, -9));
}

TEST_CASE("field points into omega along its edges") {
  // On m1 = -2 with 0 <= m2 < 2 the m1-component is negative.
  for (double m2 = 0; m2 < 2; m2 += 0.1) CHECK(vector_field(-2.0, m2)(0) < 0);
  // On the parabola, d/dt (m1^2 + m1 - m2) equals m1^3 (2 + m1) > 0.
  for (double m1 = -2.1; m1 > -9; m1 -= 0.3) {
    const double m2 = parabola_height(m1);
    const auto v = vector_field(m1, m2);
    const double f_dot = (2 * m1 + 1) * v(0) - v(1);
    CHECK(f_dot == doctest::Approx(boundary_identity(m1)).epsilon(1e-12));
    CHECK(f_dot > 0);
  }
  // On m2 = 0 inside omega the m2-component is positive.
  for (double m1 = -2.1; m1 > -9; m1 -= 0.5) CHECK(vector_field(m1, 0.0)(1) > 0);
}

TEST_CASE("trajectory from (-4, 2) blows up before the deadline") {
  const auto traj = integrate(P{-4, 2}, 1.0);
  REQUIRE(traj.events.blowup);
  CHECK(*traj.events.blowup < breaking_time_bound(P{-4, 2}));
  CHECK_FALSE(traj.events.omega_exit);
  CHECK(traj.events.s_hit == 0.0);
  // Step-halving cross-check: a tighter tolerance moves the blowup time very little.
  OdeOptions tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-14;
  const auto ref = integrate(P{-4, 2}, 1.0, tight);
  REQUIRE(ref.events.blowup);
  CHECK(std::abs(*ref.events.blowup - *traj.events.blowup) <= 1e-7);
}

TEST_CASE("trajectory from (-3, 4) enters S in time and then blows up") {
  const auto traj = integrate(P{-3, 4}, 1.0);
  REQUIRE(traj.events.s_hit);
  CHECK(*traj.events.s_hit <= hitting_time_bound(P{-3, 4}) + 1e-8);
  CHECK(*traj.events.s_hit > 0);
  REQUIRE(traj.events.blowup);
  CHECK(*traj.events.blowup < breaking_time_bound(P{-3, 4}));
  CHECK(*traj.events.blowup > *traj.events.s_hit);
}

TEST_CASE("equilibrium stays put") {
  const auto traj = integrate(P{0, 0}, 1.0);
  CHECK_FALSE(traj.events.blowup);
  CHECK_FALSE(traj.events.escape);
  CHECK(traj.points.back().t == 1.0);
  for (const auto& p : traj.points) {
    CHECK(p.x == 0.0);
    CHECK(p.y == 0.0);
  }
}

TEST_CASE("trajectory points increase in time with bounded growth") {
  const auto traj = integrate(P{-6, 20}, 1.0);
  for (std::size_t i = 1; i < traj.points.size(); ++i) {
    CHECK(traj.points[i].t > traj.points[i - 1].t);
    const auto& a = traj.points[i - 1];
    const auto& b = traj.points[i];
    CHECK(std::abs(b.x) <= 2 * std::max(std::abs(a.x), 1.0));
  }
}

TEST_CASE("strict decrease and decay bound on omega minus S") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> um1(-8, -2.05), unit(0, 1);
  int tested = 0;
  while (tested < 50) {
    const double m1 = um1(rng);
    const P p0{m1, unit(rng) * parabola_height(m1)};
    if (!in_omega(p0) || p0.m1 + p0.m2 <= 0) continue;
    ++tested;
    const double rate = triangle_decay_rate(p0);
    const auto traj = integrate(p0, 2.0);
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
      const auto& a = traj.points[i - 1];
      const auto& b = traj.points[i];
      if (a.x + a.y <= 0) break;
      CHECK(b.x < a.x);
      CHECK(b.y < a.y);
      const P q{b.x, b.y};
      if (in_decay_triangle(p0, q, 1e-9) && b.x + b.y > 0) {
        CHECK(vector_field(b.x, b.y).sum() <= rate + 1e-6);
        CHECK((b.x + b.y - a.x - a.y) / (b.t - a.t) <= rate + 1e-6);
      }
    }
  }
}

TEST_CASE("integrator failure carries the partial trajectory") {
  OdeOptions opts;
  opts.max_steps = 5;
  try {
    integrate(P{-4, 2}, 1.0, opts);
    FAIL("expected IntegratorFailure");
  } catch (const IntegratorFailure& e) {
    CHECK(e.partial().points.size() >= 1);
    CHECK(e.partial().points.front().x == -4.0);
  }
}

TEST_CASE("batch integration keeps input order") {
  const std::vector<P> starts{{-4, 2}, {-3, 4}, {0, 0}, {-5, 1}};
  const auto batch = integrate_batch(starts, 1.0, {}, 3);
  REQUIRE(batch.size() == starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    CHECK(batch[i].initial == starts[i]);
    CHECK(batch[i].points.size() == integrate(starts[i], 1.0).points.size());
  }
}

TEST_CASE("portrait") {
  const auto p = portrait({-6, 1, -1, 7}, 20, 20);
  CHECK(p.arrows.size() == 400);
  for (const auto& idx : {std::size_t{0}, std::size_t{19}, std::size_t{399}}) {
    const auto& a = p.arrows[idx];
    const auto v = vector_field(a.x, a.y);
    CHECK(a.dx == v(0));
    CHECK(a.dy == v(1));
  }
  CHECK(p.arrows[0].x == -6.0);
  CHECK(p.arrows[399].x == 1.0);
  CHECK(p.arrows[399].y == 7.0);

  // Parabola arc starts at the corner (-2, 2) and runs leftward.
  std::vector<CurvePoint> arc;
  for (const auto& c : p.boundary)
    if (c.curve == "omega_parabola") arc.push_back(c);
  REQUIRE(arc.size() > 10);
  CHECK(arc.front().x == -2.0);
  CHECK(arc.front().y == 2.0);
  for (std::size_t i = 1; i < arc.size(); ++i) CHECK(arc[i].x < arc[i - 1].x);

  const auto with_corner = portrait({-6, 2, -2, 6}, 9, 9);
  bool found = false;
  for (const auto& a : with_corner.arrows) {
    if (a.x == -2.0 && a.y == 2.0) {
      found = true;
      CHECK(a.dx == 0.0);
      CHECK(a.dy == 0.0);
    }
  }
  CHECK(found);

  const auto empty = portrait({0, 0, -1, 1}, 10, 10);
  CHECK(empty.arrows.empty());
  CHECK(empty.boundary.empty());
}

TEST_CASE("trajectory and portrait CSV round trips") {
  const auto traj = integrate(P{-3, 4}, 1.0);
  const auto back = parse_trajectory_csv(format_trajectory_csv(traj));
  CHECK(back.points == traj.points);
  CHECK(back.initial == traj.initial);
  CHECK(back.events.s_hit == traj.events.s_hit);
  CHECK(back.events.blowup == traj.events.blowup);
  CHECK(back.events.omega_exit == traj.events.omega_exit);

  const auto p = portrait({-6, 1, -1, 7}, 7, 5);
  CHECK(parse_arrows_csv(format_arrows_csv(p)) == p.arrows);
  CHECK(parse_boundary_csv(format_boundary_csv(p)) == p.boundary);
}
