#ifndef WHITHAM_BREAKING_THEORY_HPP
#define WHITHAM_BREAKING_THEORY_HPP

// Breaking region, classical criterion and time bounds for the slope
// extrema (m1, m2) = (inf u_x, sup u_x) of a Whitham-type equation.
//
// Every formula is written once, in units where K(0) = 1. A kernel with
// K(0) = k0 is handled by `normalize` (m -> m / k0) together with the time
// map t -> k0 t; under m = k0 n, t = s / k0 the slope inequalities
//   dm_i/dt <= -m_i^2 + k0 (m2 - m1)
// become dn_i/ds <= -n_i^2 + (n2 - n1).

#include <cmath>
#include <optional>
#include <string_view>

#include "whitham/errors.hpp"

namespace whitham {

template <typename Scalar>
struct SlopePair {
  Scalar m1{0};
  Scalar m2{0};

  friend bool operator==(const SlopePair&, const SlopePair&) = default;
};

enum class RegionLabel { Both, OmegaOnly, SeligerOnly, Neither };

constexpr std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Both: return "Both";
    case RegionLabel::OmegaOnly: return "OmegaOnly";
    case RegionLabel::SeligerOnly: return "SeligerOnly";
    case RegionLabel::Neither: return "Neither";
  }
  return "Neither";
}

/// Upper edge of the breaking region: m2 < m1^2 + m1.
template <typename Scalar>
constexpr Scalar parabola_height(Scalar m1) {
  return m1 * m1 + m1;
}

/// Omega = {m1 < -2, 0 <= m2 < m1^2 + m1}. Open on m1 = -2 and on the
/// parabola, closed on m2 = 0. A positive `tol` widens every edge.
template <typename Scalar>
constexpr bool in_omega(const SlopePair<Scalar>& p, Scalar tol = Scalar(0)) {
  return p.m1 < Scalar(-2) + tol && p.m2 >= -tol && p.m2 < parabola_height(p.m1) + tol;
}

/// Closure of Omega, widened by `tol`.
template <typename Scalar>
constexpr bool in_omega_closure(const SlopePair<Scalar>& p, Scalar tol = Scalar(0)) {
  return p.m1 <= Scalar(-2) + tol && p.m2 >= -tol && p.m2 <= parabola_height(p.m1) + tol;
}

namespace detail {
template <typename Scalar>
void require_positive_k0(Scalar k0) {
  if (!(k0 > Scalar(0))) throw DomainError("K(0) must be positive");
}
}  // namespace detail

/// Classical criterion m1 + m2 <= -2 k0.
template <typename Scalar>
bool seliger(const SlopePair<Scalar>& p, Scalar k0, Scalar tol = Scalar(0)) {
  detail::require_positive_k0(k0);
  return p.m1 + p.m2 <= Scalar(-2) * k0 + tol;
}

template <typename Scalar>
SlopePair<Scalar> normalize(const SlopePair<Scalar>& p, Scalar k0) {
  detail::require_positive_k0(k0);
  return {p.m1 / k0, p.m2 / k0};
}

/// Physical time corresponding to normalized time s for a kernel with K(0) = k0.
template <typename Scalar>
Scalar physical_time(Scalar normalized_time, Scalar k0) {
  detail::require_positive_k0(k0);
  return normalized_time / k0;
}

template <typename Scalar>
RegionLabel classify(const SlopePair<Scalar>& p, Scalar k0) {
  const auto n = normalize(p, k0);
  const bool omega = in_omega(n);
  const bool classical = seliger(n, Scalar(1));
  if (omega && classical) return RegionLabel::Both;
  if (omega) return RegionLabel::OmegaOnly;
  if (classical) return RegionLabel::SeligerOnly;
  return RegionLabel::Neither;
}

namespace detail {
template <typename Scalar>
void require_omega(const SlopePair<Scalar>& p) {
  if (!in_omega(p)) throw DomainError("slope pair lies outside the breaking region");
}
}  // namespace detail

/// Upper bound on the time for a trajectory starting at p in Omega to reach
/// m1 + m2 <= 0: max{0, (m1 + m2) / (2 m1 (2 + m1))}.
template <typename Scalar>
Scalar hitting_time_bound(const SlopePair<Scalar>& p) {
  detail::require_omega(p);
  const Scalar sum = p.m1 + p.m2;
  if (sum <= Scalar(0)) return Scalar(0);
  return sum / (Scalar(2) * p.m1 * (Scalar(2) + p.m1));
}

/// Time at which the lower bound on 1/m1 started from m1(t0) = m1_origin
/// crosses zero: t0 + log(m1 / (2 + m1)) / 2.
template <typename Scalar>
Scalar riccati_deadline(Scalar m1_origin, Scalar t0) {
  using std::log;
  if (!(m1_origin < Scalar(-2))) throw DomainError("Riccati envelope needs m1 < -2");
  return t0 + log(m1_origin / (Scalar(2) + m1_origin)) / Scalar(2);
}

/// Upper bound on the breaking time for initial slopes p in Omega.
template <typename Scalar>
Scalar breaking_time_bound(const SlopePair<Scalar>& p) {
  return riccati_deadline(p.m1, hitting_time_bound(p));
}

/// m1^3 (2 + m1): the lower bound on f' = d/dt (m1^2 + m1 - m2) where the
/// trajectory touches the parabola m2 = m1^2 + m1. Equals m2^2 - m2 + m1
/// evaluated on that parabola.
template <typename Scalar>
constexpr Scalar boundary_identity(Scalar m1) {
  return m1 * m1 * m1 * (Scalar(2) + m1);
}

/// Bound -2 m1 (2 + m1) on d/dt (m1 + m2) inside the triangle with vertices
/// (m1, m2), (-m2, m2), (m1, -m1). Defined for p in Omega with m1 + m2 > 0.
template <typename Scalar>
Scalar triangle_decay_rate(const SlopePair<Scalar>& p) {
  detail::require_omega(p);
  if (!(p.m1 + p.m2 > Scalar(0)))
    throw DomainError("decay rate applies only where m1 + m2 > 0");
  return Scalar(-2) * p.m1 * (Scalar(2) + p.m1);
}

/// True when q lies in the closed triangle with vertices (m1, m2),
/// (-m2, m2), (m1, -m1) of the apex p, widened by tol.
template <typename Scalar>
bool in_decay_triangle(const SlopePair<Scalar>& apex, const SlopePair<Scalar>& q,
                       Scalar tol = Scalar(0)) {
  return q.m1 <= apex.m1 + tol && q.m2 <= apex.m2 + tol && q.m1 + q.m2 >= -tol;
}

/// Lower bound on 1/m1(t) for t >= t0 once the path is inside
/// S = Omega with m1 + m2 <= 0:
///   e^{2(t - t0)} (2/m1(t0) + 1) / 2 - 1/2.
template <typename Scalar>
Scalar riccati_envelope(Scalar m1_origin, Scalar t0, Scalar t) {
  using std::exp;
  if (!(m1_origin < Scalar(-2))) throw DomainError("Riccati envelope needs m1 < -2");
  if (t < t0) throw DomainError("Riccati envelope is defined for t >= t0 only");
  if (t == t0) return Scalar(1) / m1_origin;
  return exp(Scalar(2) * (t - t0)) * (Scalar(2) / m1_origin + Scalar(1)) / Scalar(2) -
         Scalar(1) / Scalar(2);
}

template <typename Scalar>
struct BoundsReport {
  Scalar t_star{0};
  Scalar T_star{0};
  std::optional<Scalar> decay_rate;  // only when m1 + m2 > 0
  // Worst-case point the final Riccati step starts from: by t_star the path
  // has m1 <= m1(0) and m2 <= -m1.
  SlopePair<Scalar> envelope_origin;
};

/// Bounds in normalized units (K(0) = 1). Requires p in Omega.
template <typename Scalar>
BoundsReport<Scalar> bounds(const SlopePair<Scalar>& p) {
  BoundsReport<Scalar> r;
  r.t_star = hitting_time_bound(p);
  r.T_star = breaking_time_bound(p);
  if (p.m1 + p.m2 > Scalar(0)) r.decay_rate = triangle_decay_rate(p);
  r.envelope_origin = {p.m1, p.m2 < -p.m1 ? p.m2 : -p.m1};
  return r;
}

/// Bounds for a kernel with K(0) = k0, reported in physical time; slope
/// values in the report stay in normalized units.
template <typename Scalar>
BoundsReport<Scalar> bounds(const SlopePair<Scalar>& p, Scalar k0) {
  auto r = bounds(normalize(p, k0));
  r.t_star = physical_time(r.t_star, k0);
  r.T_star = physical_time(r.T_star, k0);
  if (r.decay_rate) *r.decay_rate *= k0 * k0;
  return r;
}

}  // namespace whitham

#endif  // WHITHAM_BREAKING_THEORY_HPP
