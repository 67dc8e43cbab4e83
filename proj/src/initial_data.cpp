#include "whitham/initial_data.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "whitham/csv.hpp"
#include "whitham/errors.hpp"
#include "whitham/quadrature.hpp"

namespace whitham {

double bump(double s) {
  const double r = 1 - s * s;
  if (r <= 0) return 0;
  return std::exp(1 - 1 / r);
}

double bump_integral() {
  static const double value = [] {
    auto r = integrate_adaptive<double>(bump, -1.0, 1.0, 1e-14, 2);
    return r.value;
  }();
  return value;
}

double slope_offset(double a, double b, double length, double width) {
  const double i = width * bump_integral();
  return -(a + b) * i / (length - 2 * i);
}

double profile_slope(double x, double a, double b, double length, double width) {
  const double c = slope_offset(a, b, length, width);
  auto periodic_bump = [&](double center) {
    double d = std::remainder(x - center, length);
    return bump(d / width);
  };
  return (a - c) * periodic_bump(length / 4) + (b - c) * periodic_bump(3 * length / 4) + c;
}

InitialCondition build_profile(double a, double b, double length, double width, Eigen::Index n) {
  if (!(a < 0)) throw DomainError("minimum slope must be negative");
  if (!(b >= 0)) throw DomainError("maximum slope must be nonnegative");
  if (!(length > 0) || !std::isfinite(length)) throw DomainError("domain length must be positive");
  if (!(width > 0) || !(width <= length / 8)) throw DomainError("bump width must lie in (0, L/8]");
  if (!is_power_of_two(n) || n < 256) throw DomainError("grid size must be a power of two >= 256");

  const double c = slope_offset(a, b, length, width);
  if (c < a || c > b)
    throw GeometryError("mean-zeroing offset " + io::format_double(c) + " lies outside [" +
                        io::format_double(a) + ", " + io::format_double(b) +
                        "]; use a smaller bump width");

  const PeriodicGrid grid(n, length);
  const RealArray x = grid.points();
  const RealArray slope = x.unaryExpr([&](double xi) { return profile_slope(xi, a, b, length, width); });

  const ComplexArray u_hat = grid.antiderivative(grid.forward(slope));
  RealArray u = grid.inverse(u_hat);
  u -= u(0);

  InitialCondition ic;
  ic.domain_length = length;
  ic.samples = std::move(u);
  ic.slope_samples = grid.inverse(grid.derivative(u_hat));
  ic.target_min_slope = a;
  ic.target_max_slope = b;
  ic.bump_width = width;
  ic.offset = c;
  return ic;
}

InitialCondition from_samples(RealArray samples, double length) {
  const PeriodicGrid grid(samples.size(), length);
  InitialCondition ic;
  ic.domain_length = length;
  ic.slope_samples = grid.derivative(samples);
  ic.samples = std::move(samples);
  ic.target_min_slope = ic.slope_samples.minCoeff();
  ic.target_max_slope = ic.slope_samples.maxCoeff();
  return ic;
}

SlopePair<double> measured_extrema(const InitialCondition& ic) {
  const PeriodicGrid grid(ic.samples.size(), ic.domain_length);
  const RealArray slope = grid.derivative(ic.samples);
  return {refined_min(slope, ic.domain_length).value, refined_max(slope, ic.domain_length).value};
}

void write_profile_csv(const std::filesystem::path& path, const InitialCondition& ic) {
  using io::format_double;
  std::string out;
  out += "# L=" + format_double(ic.domain_length) + "\n";
  out += "# a=" + format_double(ic.target_min_slope) + "\n";
  out += "# b=" + format_double(ic.target_max_slope) + "\n";
  out += "# w=" + format_double(ic.bump_width) + "\n";
  out += "# n=" + std::to_string(ic.samples.size()) + "\n";
  out += "x,u0\n";
  const double dx = ic.domain_length / double(ic.samples.size());
  for (Eigen::Index j = 0; j < ic.samples.size(); ++j)
    out += format_double(double(j) * dx) + "," + format_double(ic.samples(j)) + "\n";
  io::write_text(path, out);
}

InitialCondition read_profile_csv(const std::filesystem::path& path) {
  const auto table = io::read_csv(path);
  auto meta = [&](const std::string& key) -> std::optional<double> {
    for (const auto& [k, v] : table.metadata)
      if (k == key) return io::parse_double(v);
    return std::nullopt;
  };
  const auto u = table.numeric_column("u0");
  const auto length = meta("L");
  if (!length) throw ParseError("profile CSV lacks '# L=' metadata");
  if (const auto n = meta("n"); n && std::size_t(*n) != u.size())
    throw ParseError("profile CSV row count does not match '# n=' metadata");
  RealArray samples = Eigen::Map<const RealArray>(u.data(), Eigen::Index(u.size()));
  auto ic = from_samples(std::move(samples), *length);
  if (auto a = meta("a")) ic.target_min_slope = *a;
  if (auto b = meta("b")) ic.target_max_slope = *b;
  if (auto w = meta("w")) ic.bump_width = *w;
  return ic;
}

}  // namespace whitham
