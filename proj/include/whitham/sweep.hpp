#ifndef WHITHAM_SWEEP_HPP
#define WHITHAM_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "whitham/breaking_theory.hpp"
#include "whitham/kernels.hpp"
#include "whitham/solver.hpp"

namespace whitham {

struct SweepRange {
  double lo{0};
  double hi{0};
  int count{1};

  /// count evenly spaced values from lo to hi inclusive (lo alone when count == 1).
  std::vector<double> values() const;
};

enum class M2Mode { Absolute, FractionOfParabola };
enum class Backend { Pde, Ode };

struct SweepSpec {
  SweepRange m1{-6, -2.05, 8};
  M2Mode m2_mode{M2Mode::FractionOfParabola};
  SweepRange m2{0.1, 0.9, 5};
  PhaseVelocity kernel{PhaseVelocity::gaussian(1)};
  SolverConfig solver{};
  Backend backend{Backend::Ode};

  // PDE profile geometry.
  double domain_length{40};
  double bump_width{2};
  Eigen::Index grid_size{1024};

  // When > 0, draw this many points uniformly from the ranges instead of
  // using the grid; `seed` makes the draw reproducible.
  int random_samples{0};
  std::uint64_t seed{0};
  unsigned jobs{0};

  void validate() const;
};

struct SweepRow {
  SlopePair<double> p0;
  RegionLabel label{RegionLabel::Neither};
  std::optional<double> t_star;
  std::optional<double> T_star;
  std::optional<double> t_break;
  std::optional<double> margin;
  std::string verdict;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Start points in grid order (m1 outer, m2 inner) or drawn with the seed.
std::vector<SlopePair<double>> sweep_points(const SweepSpec& spec);

/// Runs one simulation per point on a bounded worker pool; rows come back
/// in point order.
SweepResult run_sweep(const SweepSpec& spec);

std::string format_sweep_csv(const SweepResult& result);
SweepResult parse_sweep_csv(std::string_view text);

std::string to_string(M2Mode mode);
std::string to_string(Backend backend);
M2Mode parse_m2_mode(const std::string& s);
Backend parse_backend(const std::string& s);
RegionLabel parse_region_label(const std::string& s);

}  // namespace whitham

#endif  // WHITHAM_SWEEP_HPP
