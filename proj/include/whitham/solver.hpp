#ifndef WHITHAM_SOLVER_HPP
#define WHITHAM_SOLVER_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "whitham/breaking_theory.hpp"
#include "whitham/csv.hpp"
#include "whitham/initial_data.hpp"
#include "whitham/kernels.hpp"
#include "whitham/spectral.hpp"

namespace whitham {

struct SolverConfig {
  double cfl{0.3};
  double dealias_fraction{2.0 / 3.0};
  double blowup_slope_factor{50};
  double tail_energy_limit{1e-4};
  double max_time{1};
  int output_stride{1};
  bool nonlinear{true};        // false: pure linear dispersion (test mode)
  Eigen::Index grid_size{0};   // 0: take from the initial condition
  long max_steps{10'000'000};

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

struct ExtremaSample {
  double t{0};
  double m1{0};
  double m2{0};
  double xi1{0};
  double xi2{0};
  double dt_used{0};
  double tail_ratio{0};

  friend bool operator==(const ExtremaSample&, const ExtremaSample&) = default;
};

enum class VerdictKind { BrokeAt, ResolvedToHorizon, ResolutionLost };

struct Verdict {
  VerdictKind kind{VerdictKind::ResolvedToHorizon};
  double time{0};  // t_break, t_lost, or the horizon
};

std::string to_string(VerdictKind kind);

struct SimReport {
  std::vector<ExtremaSample> series;
  Verdict verdict;
  SolverConfig config;
  std::string kernel;
  Eigen::Index grid_size{0};
  double domain_length{0};
  std::optional<double> kernel_at_zero;  // empty when K is unbounded

  double slope_threshold() const;
};

/// Raised by `step` when the state stops being finite.
class BlowupSignal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pseudospectral discretization of
///   u_t + u u_x + K * u_x = 0
/// on a periodic grid. The nonlocal term is diagonal in Fourier space,
/// (K * u_x)^ = i kappa c(kappa) u^, and is advanced exactly by an
/// integrating factor; the quadratic flux goes through fourth-order
/// Runge-Kutta with the dealiasing mask applied.
class WhithamSolver {
 public:
  WhithamSolver(const PhaseVelocity& pv, Eigen::Index n, double length, SolverConfig cfg = {});

  const PeriodicGrid& grid() const { return grid_; }
  const SolverConfig& config() const { return cfg_; }
  Eigen::Index retained_modes() const { return cutoff_; }

  ComplexArray dealias(ComplexArray spectrum) const;

  /// -1/2 (u^2)_x, masked; zero when the nonlinearity is disabled.
  ComplexArray nonlinear_term(const ComplexArray& u_hat) const;

  /// Full right-hand side: nonlinear term minus i kappa c(kappa) u^.
  ComplexArray rhs(const ComplexArray& u_hat) const;

  /// One integrating-factor RK4 step of size dt. Throws BlowupSignal on a
  /// non-finite result (the state is left unchanged then).
  void step(ComplexArray& u_hat, double& t, double dt) const;

  /// u^(0) exp(-i kappa c(kappa) t): exact solution without the nonlinearity.
  ComplexArray linear_evolution(const ComplexArray& u_hat0, double t) const;

  /// cfl * dx / max(1, max |u|).
  double stable_dt(const RealArray& u) const;

  /// Energy in the top eighth of the retained band over energy in modes >= 1.
  double tail_ratio(const ComplexArray& u_hat) const;

  ExtremaSample sample(const ComplexArray& u_hat, double t, double dt_used) const;

 private:
  PeriodicGrid grid_;
  SolverConfig cfg_;
  Eigen::Index cutoff_;
  RealArray mask_;
  ComplexArray linear_;  // -i kappa c(kappa) on retained modes
};

/// Integrates from `ic` until breaking is detected, resolution is lost or
/// the horizon is reached.
SimReport run(const InitialCondition& ic, const PhaseVelocity& pv, const SolverConfig& cfg);

void write_series_csv(const std::filesystem::path& path, const std::vector<ExtremaSample>& series);
std::string format_series_csv(const std::vector<ExtremaSample>& series);
std::vector<ExtremaSample> parse_series_csv(std::string_view text);
std::vector<ExtremaSample> read_series_csv(const std::filesystem::path& path);

/// Flat summary: verdict, t_break, T_star, t_star, in_omega_initial, kernel,
/// grid, then margin and theory. Bounds are in physical time and omitted
/// ("none") when K(0) is undefined or the initial slopes lie outside Omega.
io::Record summary_record(const SimReport& report);

}  // namespace whitham

#endif  // WHITHAM_SOLVER_HPP
