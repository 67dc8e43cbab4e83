#ifndef WHITHAM_INITIAL_DATA_HPP
#define WHITHAM_INITIAL_DATA_HPP

#include <filesystem>

#include "whitham/breaking_theory.hpp"
#include "whitham/spectral.hpp"

namespace whitham {

/// Smooth periodic profile with prescribed slope extrema.
///
/// The derivative is built from two compactly supported bumps,
///   u0'(x) = (a - c) B((x - L/4)/w) + (b - c) B((x - 3L/4)/w) + c,
/// B(s) = exp(1 - 1/(1 - s^2)) on |s| < 1, with the constant c chosen so
/// that u0' has zero mean. `slope_samples` is the band-limited projection of
/// that closed form onto the grid (mean and Nyquist modes removed), so it is
/// exactly the spectral derivative of `samples`.
struct InitialCondition {
  double domain_length{0};
  RealArray samples;
  RealArray slope_samples;
  double target_min_slope{0};
  double target_max_slope{0};
  double bump_width{0};
  double offset{0};  // the mean-zeroing constant c
};

/// exp(1 - 1/(1 - s^2)) on |s| < 1, else 0. Peak value 1 at s = 0.
double bump(double s);

/// int_{-1}^{1} bump(s) ds.
double bump_integral();

/// Mean-zeroing constant c = -(a + b) I / (L - 2I), I = w * bump_integral().
double slope_offset(double a, double b, double length, double width);

/// Closed-form u0'(x) for the given construction parameters.
double profile_slope(double x, double a, double b, double length, double width);

/// Throws DomainError unless a < 0 <= b, w <= L/8 and n is a power of two
/// >= 256; GeometryError when the offset falls outside [a, b].
InitialCondition build_profile(double a, double b, double length, double width, Eigen::Index n);

/// Wraps arbitrary periodic samples (e.g. imported from CSV); slope_samples
/// is the spectral derivative.
InitialCondition from_samples(RealArray samples, double length);

/// (min, max) of the spectral derivative, each parabola-refined.
SlopePair<double> measured_extrema(const InitialCondition& ic);

/// CSV "x,u0" with '#' metadata lines (L, a, b, w, n).
void write_profile_csv(const std::filesystem::path& path, const InitialCondition& ic);
InitialCondition read_profile_csv(const std::filesystem::path& path);

}  // namespace whitham

#endif  // WHITHAM_INITIAL_DATA_HPP
