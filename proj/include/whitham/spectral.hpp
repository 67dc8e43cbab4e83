#ifndef WHITHAM_SPECTRAL_HPP
#define WHITHAM_SPECTRAL_HPP

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace whitham {

using RealArray = Eigen::ArrayXd;
using ComplexArray = Eigen::ArrayXcd;

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

/// Uniform periodic grid x_j = j L / n with its real-to-half-complex FFT.
/// Spectra hold modes 0..n/2; wavenumbers are 2 pi j / L.
///
/// Not safe for concurrent use: the FFT object caches twiddle tables.
class PeriodicGrid {
 public:
  PeriodicGrid(Eigen::Index n, double length);

  Eigen::Index size() const { return n_; }
  Eigen::Index modes() const { return n_ / 2 + 1; }
  double length() const { return length_; }
  double spacing() const { return length_ / double(n_); }
  const RealArray& wavenumbers() const { return kappa_; }
  RealArray points() const;

  ComplexArray forward(const RealArray& values) const;
  RealArray inverse(const ComplexArray& spectrum) const;

  /// i kappa u_hat, with the Nyquist mode dropped (its derivative is not
  /// representable on the grid).
  ComplexArray derivative(const ComplexArray& spectrum) const;
  RealArray derivative(const RealArray& values) const;

  /// Mean-free antiderivative: u_hat / (i kappa) for kappa != 0; the mean and
  /// Nyquist modes are set to zero.
  ComplexArray antiderivative(const ComplexArray& spectrum) const;

 private:
  Eigen::Index n_;
  double length_;
  RealArray kappa_;
  mutable Eigen::FFT<double> fft_;
};

/// Location and value of an extremum refined by a parabola through the
/// extremal sample and its periodic neighbours.
struct RefinedExtremum {
  double value;
  double position;  // in [0, L)
};

RefinedExtremum refined_min(const RealArray& samples, double length);
RefinedExtremum refined_max(const RealArray& samples, double length);

}  // namespace whitham

#endif  // WHITHAM_SPECTRAL_HPP
