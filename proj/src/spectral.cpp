#include "whitham/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace whitham {

PeriodicGrid::PeriodicGrid(Eigen::Index n, double length) : n_(n), length_(length) {
  if (!is_power_of_two(n) || n < 4) throw std::invalid_argument("grid size must be a power of two >= 4");
  if (!(length > 0)) throw std::invalid_argument("domain length must be positive");
  kappa_ = RealArray::LinSpaced(modes(), 0.0, double(n_ / 2)) * (2 * std::numbers::pi / length_);
  fft_.SetFlag(Eigen::FFT<double>::HalfSpectrum);
}

RealArray PeriodicGrid::points() const {
  return RealArray::LinSpaced(n_, 0.0, double(n_ - 1)) * spacing();
}

ComplexArray PeriodicGrid::forward(const RealArray& values) const {
  if (values.size() != n_) throw std::invalid_argument("sample count does not match grid");
  std::vector<double> in(values.data(), values.data() + n_);
  std::vector<std::complex<double>> out;
  fft_.fwd(out, in);
  return Eigen::Map<const ComplexArray>(out.data(), modes());
}

RealArray PeriodicGrid::inverse(const ComplexArray& spectrum) const {
  if (spectrum.size() != modes()) throw std::invalid_argument("spectrum size does not match grid");
  std::vector<std::complex<double>> in(spectrum.data(), spectrum.data() + modes());
  std::vector<double> out;
  fft_.inv(out, in, n_);
  return Eigen::Map<const RealArray>(out.data(), n_);
}

ComplexArray PeriodicGrid::derivative(const ComplexArray& spectrum) const {
  ComplexArray d = spectrum * (std::complex<double>(0, 1) * kappa_);
  d(modes() - 1) = 0;
  return d;
}

RealArray PeriodicGrid::derivative(const RealArray& values) const {
  return inverse(derivative(forward(values)));
}

ComplexArray PeriodicGrid::antiderivative(const ComplexArray& spectrum) const {
  ComplexArray a(modes());
  a(0) = 0;
  for (Eigen::Index j = 1; j < modes(); ++j)
    a(j) = spectrum(j) / std::complex<double>(0, kappa_(j));
  a(modes() - 1) = 0;
  return a;
}

namespace {

RefinedExtremum refine(const RealArray& s, Eigen::Index i, double length) {
  const Eigen::Index n = s.size();
  const double dx = length / double(n);
  const double fm = s((i + n - 1) % n), f0 = s(i), fp = s((i + 1) % n);
  const double curvature = fm - 2 * f0 + fp;
  double offset = 0, value = f0;
  if (curvature != 0) {
    offset = 0.5 * (fm - fp) / curvature;
    // A genuine grid extremum keeps the vertex within half a cell.
    if (std::abs(offset) <= 0.5) {
      value = f0 - 0.25 * (fm - fp) * offset;
    } else {
      offset = 0;
    }
  }
  double pos = (double(i) + offset) * dx;
  pos = std::fmod(pos, length);
  if (pos < 0) pos += length;
  return {value, pos};
}

}  // namespace

RefinedExtremum refined_min(const RealArray& samples, double length) {
  Eigen::Index i = 0;
  samples.minCoeff(&i);
  return refine(samples, i, length);
}

RefinedExtremum refined_max(const RealArray& samples, double length) {
  Eigen::Index i = 0;
  samples.maxCoeff(&i);
  return refine(samples, i, length);
}

}  // namespace whitham
