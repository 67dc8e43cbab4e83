#include <doctest.h>

#include <cmath>
#include <random>

#include "whitham/breaking_theory.hpp"

using namespace whitham;
using P = SlopePair<double>;

TEST_CASE("omega membership follows the strict and weak edges") {
  CHECK(in_omega(P{-2.5, 3}));
  CHECK_FALSE(in_omega(P{-2.5, 3.75}));  // on the parabola
  CHECK_FALSE(in_omega(P{-2, 0}));       // on m1 = -2
  CHECK(in_omega(P{-3, 0}));             // m2 = 0 included
  CHECK_FALSE(in_omega(P{-3, -1e-300}));
  CHECK(in_omega(P{-2, 0}, 1e-6));
  CHECK(in_omega_closure(P{-2.5, 3.75}));
  CHECK(in_omega_closure(P{-2, 2}));
  CHECK_FALSE(in_omega_closure(P{-2, 2.1}));
}

TEST_CASE("seliger condition") {
  CHECK(seliger(P{-3, 1}, 1.0));
  CHECK_FALSE(seliger(P{-2.5, 3}, 1.0));
  CHECK_FALSE(seliger(P{-3, 1}, 2.0));
  CHECK_THROWS_AS(seliger(P{-3, 1}, 0.0), DomainError);
}

TEST_CASE("classify combines both tests after normalization") {
  CHECK(classify(P{-2.5, 3}, 1.0) == RegionLabel::OmegaOnly);
  CHECK(classify(P{-3, 1}, 1.0) == RegionLabel::Both);
  CHECK(classify(P{-1, 0.5}, 1.0) == RegionLabel::Neither);
  // (-2, 0) meets the classical condition but sits on Omega's open edge.
  CHECK(classify(P{-2, 0}, 1.0) == RegionLabel::SeligerOnly);
}

TEST_CASE("normalize") {
  CHECK(normalize(P{-4, 2}, 1.0) == P{-4, 2});
  CHECK(normalize(P{-8, 4}, 2.0) == P{-4, 2});
  CHECK(normalize(P{0, 0}, 5.0) == P{0, 0});
}

TEST_CASE("normalization maps the K(0) inequalities onto the unit ones") {
  // With m = k0 n and t = s / k0: dm/dt = k0^2 dn/ds, and the right-hand
  // side -m^2 + k0 (m2 - m1) = k0^2 (-n^2 + n2 - n1). Check numerically by
  // comparing difference quotients of a smooth test path.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3), k(0.2, 5);
  for (int i = 0; i < 200; ++i) {
    const double k0 = k(rng), m1 = u(rng), m2 = u(rng);
    const auto n = normalize(P{m1, m2}, k0);
    const double rhs_phys = -m1 * m1 + k0 * (m2 - m1);
    const double rhs_norm = -n.m1 * n.m1 + (n.m2 - n.m1);
    CHECK(rhs_phys == doctest::Approx(k0 * k0 * rhs_norm).epsilon(1e-12));
  }
}

TEST_CASE("hitting time bound") {
  CHECK(hitting_time_bound(P{-4, 2}) == 0.0);
  CHECK(std::abs(hitting_time_bound(P{-3, 4}) - 1.0 / 6) <= 1e-15);
  CHECK(hitting_time_bound(P{-2.5, 3}) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(hitting_time_bound(P{-2, 1}), DomainError);
}

TEST_CASE("breaking time bound matches high-precision values") {
  // Values computed with 40-digit arithmetic.
  CHECK(std::abs(breaking_time_bound(P{-4, 2}) - 0.34657359027997265) <= 1e-12);
  CHECK(std::abs(breaking_time_bound(P{-3, 0}) - 0.54930614433405485) <= 1e-12);
  CHECK(std::abs(breaking_time_bound(P{-3, 4}) - 0.71597281100072151) <= 1e-12);
  CHECK_THROWS_AS(breaking_time_bound(P{-1, 0}), DomainError);
}

TEST_CASE("boundary identity") {
  CHECK(boundary_identity(-3.0) == 27.0);
  CHECK(boundary_identity(-2.0) == 0.0);
  CHECK(boundary_identity(-2.5) == 7.8125);
  // -(-m2^2 + m2 - m1) on the parabola, expanded independently.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 0);
  for (int i = 0; i < 1000; ++i) {
    const double m1 = u(rng);
    const double m2 = m1 * m1 + m1;
    const double expansion = m2 * m2 - m2 + m1;
    CHECK(std::abs(expansion - boundary_identity(m1)) <= 1e-9 * std::max(1.0, std::pow(std::abs(m1), 4)));
  }
}

TEST_CASE("triangle decay rate") {
  CHECK(triangle_decay_rate(P{-3, 4}) == -6.0);
  CHECK(triangle_decay_rate(P{-4, 5}) == -16.0);
  CHECK_THROWS_AS(triangle_decay_rate(P{-2, 1}), DomainError);
  CHECK_THROWS_AS(triangle_decay_rate(P{-4, 2}), DomainError);  // already in S
}

TEST_CASE("riccati envelope") {
  CHECK(riccati_envelope(-4.0, 0.3, 0.3) == -0.25);
  CHECK(std::abs(riccati_envelope(-4.0, 0.0, 0.5 * std::log(2.0))) <= 1e-15);
  CHECK(std::abs(riccati_envelope(-3.0, 1.0, 1.1) - (-0.29643287363997169)) <= 1e-14);
  CHECK_THROWS_AS(riccati_envelope(-2.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(riccati_envelope(-3.0, 1.0, 0.5), DomainError);
  // Zero crossing of the envelope is the deadline.
  for (double m1 : {-2.1, -3.0, -7.5}) {
    const double d = riccati_deadline(m1, 0.4);
    CHECK(std::abs(riccati_envelope(m1, 0.4, d)) <= 1e-13);
  }
}

TEST_CASE("bounds hold on random points of omega") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> um1(-10, -2), unit(0, 1);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const double m1 = um1(rng);
    if (!(m1 < -2)) continue;
    const P p{m1, unit(rng) * parabola_height(m1)};
    if (!in_omega(p)) continue;
    const auto b = bounds(p);
    CHECK(b.T_star > 0);
    CHECK(b.t_star <= b.T_star);
    CHECK(b.t_star >= 0);
    if (p.m1 + p.m2 > 0) {
      REQUIRE(b.decay_rate);
      CHECK(*b.decay_rate < 0);
    }
    ++checked;
  }
  CHECK(checked > 9900);
}

TEST_CASE("label is invariant under the normalization map") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-20, 20), k(0.1, 10);
  for (int i = 0; i < 5000; ++i) {
    const P p{u(rng), std::abs(u(rng))};
    const double k0 = k(rng);
    CHECK(classify(p, k0) == classify(normalize(p, k0), 1.0));
  }
}

TEST_CASE("deadline shrinks as the initial slope steepens") {
  double previous = INFINITY;
  for (double m1 = -2.01; m1 > -50; m1 -= 0.37) {
    const double d = riccati_deadline(m1, 0.0);
    CHECK(d < previous);
    previous = d;
  }
}

TEST_CASE("physical bounds scale with K(0)") {
  const auto unit = bounds(P{-4, 2});
  const auto scaled = bounds(P{-8, 4}, 2.0);
  CHECK(scaled.T_star == doctest::Approx(unit.T_star / 2).epsilon(1e-15));
  CHECK(scaled.t_star == 0.0);
}

TEST_CASE("templated on scalar type") {
  const SlopePair<long double> p{-3.0L, 4.0L};
  CHECK(std::abs(breaking_time_bound(p) - (std::log(3.0L) / 2 + 1.0L / 6)) < 1e-18L);
  static_assert(boundary_identity(-3) == 27);
  static_assert(in_omega(SlopePair<int>{-3, 5}));
}
