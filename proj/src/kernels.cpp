#include "whitham/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "whitham/csv.hpp"
#include "whitham/errors.hpp"
#include "whitham/quadrature.hpp"

namespace whitham {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kSymbolTail = 1e-12;

double tabulated_value(const Tabulated& t, double kappa) {
  const double k = std::abs(kappa);
  const auto& s = t.samples;
  if (k < s.front().first || k > s.back().first) {
    std::ostringstream msg;
    msg << "wavenumber " << kappa << " outside tabulated range [" << s.front().first << ", "
        << s.back().first << "]";
    throw RangeError(msg.str());
  }
  auto hi = std::lower_bound(s.begin(), s.end(), k,
                             [](const auto& p, double v) { return p.first < v; });
  if (hi == s.begin()) return hi->second;
  auto lo = hi - 1;
  const double frac = (k - lo->first) / (hi->first - lo->first);
  return lo->second + frac * (hi->second - lo->second);
}

// Upper wavenumber beyond which the symbol is below kSymbolTail.
double truncation_wavenumber(const PhaseVelocity& pv) {
  return std::visit(
      Overloaded{
          [](const Gaussian& g) {
            const double c0 = g.width * std::sqrt(2 * std::numbers::pi);
            return std::sqrt(2 * std::log(c0 / kSymbolTail)) / g.width;
          },
          [](const Exponential& e) { return std::sqrt(2 * e.rate / kSymbolTail); },
          [](const WhithamSymbol&) { return std::numeric_limits<double>::infinity(); },
          [](const Tabulated& t) { return t.samples.back().first; }},
      pv.variant());
}

}  // namespace

PhaseVelocity PhaseVelocity::gaussian(double width) {
  if (!(width > 0) || !std::isfinite(width))
    throw DomainError("gaussian width must be positive and finite");
  return {Gaussian{width}, "gaussian:" + io::format_double(width)};
}

PhaseVelocity PhaseVelocity::exponential(double rate) {
  if (!(rate > 0) || !std::isfinite(rate))
    throw DomainError("exponential rate must be positive and finite");
  return {Exponential{rate}, "exponential:" + io::format_double(rate)};
}

PhaseVelocity PhaseVelocity::whitham() { return {WhithamSymbol{}, "whitham"}; }

PhaseVelocity PhaseVelocity::tabulated(std::vector<std::pair<double, double>> samples,
                                       std::string description) {
  if (samples.size() < 2) throw DomainError("tabulated symbol needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [k, c] = samples[i];
    if (!std::isfinite(k) || !std::isfinite(c))
      throw DomainError("tabulated symbol has non-finite sample");
    if (k < 0) throw DomainError("tabulated symbol stores kappa >= 0 only");
    if (i > 0 && !(k > samples[i - 1].first))
      throw DomainError("tabulated kappa must be strictly increasing");
  }
  return {Tabulated{std::move(samples)}, std::move(description)};
}

double PhaseVelocity::max_wavenumber() const {
  if (const auto* t = std::get_if<Tabulated>(&variant_)) return t->samples.back().first;
  return std::numeric_limits<double>::infinity();
}

double multiplier(const PhaseVelocity& pv, double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("wavenumber must be finite");
  return std::visit(
      Overloaded{[&](const Gaussian& g) {
                   const double s = g.width * kappa;
                   return g.width * std::sqrt(2 * std::numbers::pi) * std::exp(-0.5 * s * s);
                 },
                 [&](const Exponential& e) { return 2 * e.rate / (e.rate * e.rate + kappa * kappa); },
                 [&](const WhithamSymbol&) {
                   const double k = std::abs(kappa);
                   if (k < 1e-8) return 1.0;
                   if (k < 1e-4) {
                     const double k2 = k * k;
                     return std::sqrt(1 - k2 / 3 + 2 * k2 * k2 / 15);
                   }
                   return std::sqrt(std::tanh(k) / k);
                 },
                 [&](const Tabulated& t) { return tabulated_value(t, kappa); }},
      pv.variant());
}

double kernel_eval_quadrature(const PhaseVelocity& pv, double x, double abs_tol) {
  if (pv.is_whitham()) {
    if (x == 0) throw SingularityError("Whitham kernel is singular at x = 0");
    throw DomainError("Whitham symbol decays like |kappa|^(-1/2); inverse transform by quadrature is refused");
  }
  const double ax = std::abs(x);
  // K(x) = (1/pi) int_0^kmax c(kappa) cos(kappa x) dkappa for even c.
  auto integrand = [&](double k) { return multiplier(pv, k) * std::cos(k * ax); };
  const double kmax = truncation_wavenumber(pv);
  const double quad_tol = abs_tol * std::numbers::pi / 4;

  double value = 0, error = 0;
  if (const auto* t = std::get_if<Tabulated>(&pv.variant())) {
    // Linear interpolation has kinks at the nodes; integrate node to node.
    const auto& s = t->samples;
    const double per_segment = quad_tol / double(s.size());
    for (std::size_t i = 1; i < s.size(); ++i) {
      const double len = s[i].first - s[i - 1].first;
      const auto panels = static_cast<std::size_t>(std::min(1e4, len * ax / (2 * std::numbers::pi) + 1));
      auto r = integrate_adaptive<double>(integrand, s[i - 1].first, s[i].first, per_segment, panels);
      value += r.value;
      error += r.error;
    }
  } else {
    const auto panels =
        static_cast<std::size_t>(std::min(2e5, kmax * ax / (2 * std::numbers::pi) + 1));
    auto r = integrate_adaptive<double>(integrand, 0.0, kmax, quad_tol, panels, 2000000);
    value = r.value;
    error = r.error;
  }
  const double c_end = std::abs(multiplier(pv, kmax));
  const double tail = c_end * (ax > 0 ? std::min(kmax, 2 / ax) : kmax);
  const double achieved = (error + tail) / std::numbers::pi;
  if (!(achieved <= abs_tol)) {
    std::ostringstream msg;
    msg << "inverse-transform quadrature for " << pv.description() << " at x=" << x
        << " reached error " << achieved << " > " << abs_tol;
    throw AccuracyError(msg.str(), achieved);
  }
  return value / std::numbers::pi;
}

double kernel_eval(const PhaseVelocity& pv, double x) {
  if (!std::isfinite(x)) throw DomainError("kernel argument must be finite");
  if (const auto* g = std::get_if<Gaussian>(&pv.variant())) {
    const double s = x / g->width;
    return std::exp(-0.5 * s * s);
  }
  if (const auto* e = std::get_if<Exponential>(&pv.variant())) return std::exp(-e->rate * std::abs(x));
  return kernel_eval_quadrature(pv, x);
}

KernelAdmissibility check_admissibility(const PhaseVelocity& pv,
                                        const std::vector<double>& probe_grid) {
  if (probe_grid.empty()) throw std::invalid_argument("probe grid must be nonempty");
  for (std::size_t i = 0; i < probe_grid.size(); ++i) {
    if (!(probe_grid[i] >= 0)) throw std::invalid_argument("probe grid must be nonnegative");
    if (i > 0 && !(probe_grid[i] > probe_grid[i - 1]))
      throw std::invalid_argument("probe grid must be strictly increasing");
  }

  KernelAdmissibility out;
  out.probe_grid = probe_grid;
  out.tolerance = 1e-12;

  std::vector<double> right, left;
  right.reserve(probe_grid.size());
  left.reserve(probe_grid.size());
  try {
    for (double x : probe_grid) {
      right.push_back(kernel_eval(pv, x));
      left.push_back(kernel_eval(pv, -x));
    }
  } catch (const std::exception& e) {
    out.notes = std::string("kernel not evaluable on probe grid: ") + e.what();
    // Symmetry of K follows from evenness of its real symbol.
    bool even = true;
    for (double x : probe_grid) {
      try {
        if (multiplier(pv, x) != multiplier(pv, -x)) even = false;
      } catch (const std::exception&) {
        even = false;
      }
    }
    out.symmetric = even;
    return out;
  }

  double kzero = 0;
  try {
    kzero = kernel_eval(pv, 0.0);
  } catch (const std::exception& e) {
    out.notes = std::string("K(0) undefined: ") + e.what();
    return out;
  }
  const bool all_finite = std::isfinite(kzero) &&
                          std::all_of(right.begin(), right.end(), [](double v) { return std::isfinite(v); });
  out.bounded = all_finite;
  if (out.bounded) out.k_at_zero = kzero;

  const double scale = std::max(1.0, std::abs(kzero));
  const double tol = out.tolerance * scale;

  out.symmetric = true;
  for (std::size_t i = 0; i < right.size(); ++i)
    if (std::abs(right[i] - left[i]) > tol) out.symmetric = false;

  out.monotone_decreasing_on_right = true;
  for (std::size_t i = 1; i < right.size(); ++i)
    if (right[i] - right[i - 1] > tol) out.monotone_decreasing_on_right = false;

  // Tail decay: a power-law fit of log|K| against log x over the outer half of
  // the grid must fall off faster than 1/x.
  std::vector<std::pair<double, double>> tail;
  for (std::size_t i = probe_grid.size() / 2; i < probe_grid.size(); ++i)
    if (probe_grid[i] > 0) tail.emplace_back(probe_grid[i], std::abs(right[i]));
  if (!out.bounded || tail.size() < 2) {
    out.integrable = false;
    out.notes += "tail too short for decay fit; ";
  } else if (std::any_of(tail.begin(), tail.end(), [](const auto& p) { return p.second == 0; })) {
    out.integrable = true;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, k] : tail) {
      const double lx = std::log(x), ly = std::log(k);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double n = double(tail.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.integrable = slope < -1;
    out.notes += "tail log-log slope " + io::format_double(slope) + "; ";
  }
  if (std::holds_alternative<Exponential>(pv.variant()))
    out.notes += "exponential kernel is only Lipschitz at x=0; smoothness not checked; ";
  return out;
}

PhaseVelocity load_tabulated(const std::string& path) {
  const auto table = io::read_csv(path);
  const auto k = table.numeric_column("kappa");
  const auto c = table.numeric_column("c");
  std::vector<std::pair<double, double>> samples;
  samples.reserve(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) samples.emplace_back(k[i], c[i]);
  return PhaseVelocity::tabulated(std::move(samples), "tabulated:" + path);
}

PhaseVelocity parse_kernel(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&]() {
    if (arg.empty()) throw ConfigError("kernel '" + name + "' needs a parameter, e.g. " + name + ":1");
    try {
      return io::parse_double(arg);
    } catch (const ParseError&) {
      throw ConfigError("bad kernel parameter in '" + spec + "'");
    }
  };
  if (name == "gaussian") return PhaseVelocity::gaussian(number());
  if (name == "exponential") return PhaseVelocity::exponential(number());
  if (name == "whitham" && arg.empty()) return PhaseVelocity::whitham();
  if (name == "tabulated" && !arg.empty()) return load_tabulated(arg);
  throw ConfigError("unknown kernel '" + spec +
                    "' (expected gaussian:s, exponential:l, whitham, tabulated:<path>)");
}

std::string kernel_name(const PhaseVelocity& pv) { return pv.description(); }

}  // namespace whitham
