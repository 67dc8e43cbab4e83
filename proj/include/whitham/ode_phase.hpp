#ifndef WHITHAM_ODE_PHASE_HPP
#define WHITHAM_ODE_PHASE_HPP

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "whitham/breaking_theory.hpp"

namespace whitham {

/// Comparison system x' = -x^2 + y - x, y' = -y^2 + y - x: the slope
/// inequalities with equality, in units where K(0) = 1.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> vector_field(Scalar x, Scalar y) {
  return {-x * x + y - x, -y * y + y - x};
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> vector_field(const Eigen::MatrixBase<Derived>& p) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 2);
  return vector_field(p(0), p(1));
}

struct TrajectoryPoint {
  double t{0};
  double x{0};
  double y{0};

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct TrajectoryEvents {
  std::optional<double> omega_exit;  // first step end outside closed Omega (p0 in Omega only)
  std::optional<double> s_hit;       // first time x + y <= 0
  std::optional<double> blowup;      // extrapolated time of x -> -infinity
  double blowup_uncertainty{0};
  std::optional<double> escape;      // |y| reached the threshold without x blowing up
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  TrajectoryEvents events;
  SlopePair<double> initial;
};

struct OdeOptions {
  double rtol{1e-10};
  double atol{1e-12};
  double blowup_threshold{1e6};
  double omega_tolerance{1e-8};
  double min_step{1e-14};
  long max_steps{5'000'000};
};

/// Step size fell below the floor before the blowup threshold was reached.
class IntegratorFailure : public std::runtime_error {
 public:
  IntegratorFailure(const std::string& what, Trajectory partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Adaptive Dormand-Prince 5(4) integration from p0 until `horizon` or until
/// |x| (or |y|) reaches the blowup threshold. A step is also rejected when
/// it would more than double |x| or |y|. The blowup time is extrapolated
/// from x ~ -1/(T - t).
Trajectory integrate(const SlopePair<double>& p0, double horizon, const OdeOptions& opts = {});

/// Integrates every start point; results in input order.
std::vector<Trajectory> integrate_batch(const std::vector<SlopePair<double>>& starts, double horizon,
                                        const OdeOptions& opts = {}, unsigned jobs = 0);

struct Window {
  double x_min, x_max, y_min, y_max;
};

struct Arrow {
  double x, y, dx, dy;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct CurvePoint {
  std::string curve;
  double x, y;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct Portrait {
  Window window{};
  int nx{0}, ny{0};
  std::vector<Arrow> arrows;        // row-major in y, then x
  std::vector<CurvePoint> boundary;  // omega_vertical, omega_floor, omega_parabola, seliger
};

/// Vector field on an nx-by-ny grid spanning the window (endpoints
/// included) plus the region boundaries clipped to the window. A window of
/// zero area yields an empty portrait.
Portrait portrait(const Window& window, int nx, int ny);

std::string format_trajectory_csv(const Trajectory& traj);
Trajectory parse_trajectory_csv(std::string_view text);
std::string format_arrows_csv(const Portrait& p);
std::string format_boundary_csv(const Portrait& p);
std::vector<Arrow> parse_arrows_csv(std::string_view text);
std::vector<CurvePoint> parse_boundary_csv(std::string_view text);

}  // namespace whitham

#endif  // WHITHAM_ODE_PHASE_HPP
