#include "whitham/solver.hpp"

#include <algorithm>
#include <cmath>

#include "whitham/errors.hpp"

namespace whitham {

namespace {
const std::complex<double> kI(0, 1);
}

void SolverConfig::validate() const {
  if (!(cfl > 0 && cfl <= 1)) throw ConfigError("cfl must lie in (0, 1]");
  if (!(dealias_fraction > 0 && dealias_fraction <= 1))
    throw ConfigError("dealias_fraction must lie in (0, 1]");
  if (!(blowup_slope_factor > 0)) throw ConfigError("blowup_slope_factor must be positive");
  if (!(tail_energy_limit >= 0)) throw ConfigError("tail_energy_limit must be nonnegative");
  if (!(max_time > 0) || !std::isfinite(max_time)) throw ConfigError("max_time must be positive");
  if (output_stride < 1) throw ConfigError("output_stride must be >= 1");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
}

std::string to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::BrokeAt: return "BrokeAt";
    case VerdictKind::ResolvedToHorizon: return "ResolvedToHorizon";
    case VerdictKind::ResolutionLost: return "ResolutionLost";
  }
  return "ResolvedToHorizon";
}

double SimReport::slope_threshold() const {
  const double m10 = series.empty() ? 0.0 : series.front().m1;
  return -config.blowup_slope_factor * std::max(std::abs(m10), 2.0);
}

WhithamSolver::WhithamSolver(const PhaseVelocity& pv, Eigen::Index n, double length, SolverConfig cfg)
    : grid_(n, length), cfg_(cfg) {
  cfg_.validate();
  cutoff_ = static_cast<Eigen::Index>(std::floor(cfg_.dealias_fraction * double(n / 2)));
  const auto modes = grid_.modes();
  mask_ = RealArray::Zero(modes);
  mask_.head(cutoff_ + 1).setOnes();
  linear_ = ComplexArray::Zero(modes);
  const auto& kappa = grid_.wavenumbers();
  for (Eigen::Index j = 0; j <= cutoff_; ++j) {
    try {
      linear_(j) = -kI * kappa(j) * multiplier(pv, kappa(j));
    } catch (const RangeError& e) {
      throw ConfigError(std::string("kernel does not cover the grid wavenumbers: ") + e.what());
    }
  }
}

ComplexArray WhithamSolver::dealias(ComplexArray spectrum) const { return spectrum * mask_; }

ComplexArray WhithamSolver::nonlinear_term(const ComplexArray& u_hat) const {
  if (!cfg_.nonlinear) return ComplexArray::Zero(u_hat.size());
  const RealArray u = grid_.inverse(u_hat);
  const ComplexArray flux = grid_.forward(u.square());
  return (-0.5 * kI) * grid_.wavenumbers() * flux * mask_;
}

ComplexArray WhithamSolver::rhs(const ComplexArray& u_hat) const {
  return nonlinear_term(u_hat) + linear_ * u_hat;
}

void WhithamSolver::step(ComplexArray& u_hat, double& t, double dt) const {
  if (!(dt > 0)) throw std::invalid_argument("time step must be positive");
  const ComplexArray half = (linear_ * (0.5 * dt)).exp();
  const ComplexArray full = half * half;

  const ComplexArray k1 = nonlinear_term(u_hat);
  const ComplexArray k2 = nonlinear_term(half * (u_hat + (0.5 * dt) * k1));
  const ComplexArray k3 = nonlinear_term(half * u_hat + (0.5 * dt) * k2);
  const ComplexArray k4 = nonlinear_term(full * u_hat + dt * half * k3);
  ComplexArray next = full * u_hat + (dt / 6) * (full * k1 + 2 * half * (k2 + k3) + k4);

  if (!next.allFinite()) throw BlowupSignal("non-finite spectral coefficients");
  u_hat = std::move(next);
  t += dt;
}

ComplexArray WhithamSolver::linear_evolution(const ComplexArray& u_hat0, double t) const {
  return (linear_ * t).exp() * u_hat0 * mask_;
}

double WhithamSolver::stable_dt(const RealArray& u) const {
  return cfg_.cfl * grid_.spacing() / std::max(1.0, u.abs().maxCoeff());
}

double WhithamSolver::tail_ratio(const ComplexArray& u_hat) const {
  if (cutoff_ < 1) return 0;
  const RealArray energy = u_hat.abs2();
  const double total = energy.segment(1, cutoff_).sum();
  if (total == 0) return 0;
  const Eigen::Index width = std::max<Eigen::Index>(1, cutoff_ / 8);
  return energy.segment(cutoff_ - width + 1, width).sum() / total;
}

ExtremaSample WhithamSolver::sample(const ComplexArray& u_hat, double t, double dt_used) const {
  const RealArray slope = grid_.inverse(grid_.derivative(u_hat));
  const auto lo = refined_min(slope, grid_.length());
  const auto hi = refined_max(slope, grid_.length());
  return {t, lo.value, hi.value, lo.position, hi.position, dt_used, tail_ratio(u_hat)};
}

SimReport run(const InitialCondition& ic, const PhaseVelocity& pv, const SolverConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = ic.samples.size();
  if (cfg.grid_size != 0 && cfg.grid_size != n)
    throw ConfigError("configured grid size " + std::to_string(cfg.grid_size) +
                      " does not match initial condition with " + std::to_string(n) + " samples");
  if (!is_power_of_two(n)) throw ConfigError("initial condition grid size must be a power of two");

  const WhithamSolver solver(pv, n, ic.domain_length, cfg);
  const auto& grid = solver.grid();

  SimReport report;
  report.config = cfg;
  report.kernel = kernel_name(pv);
  report.grid_size = n;
  report.domain_length = ic.domain_length;
  if (!pv.is_whitham()) {
    try {
      report.kernel_at_zero = kernel_eval(pv, 0.0);
    } catch (const std::exception&) {
    }
  }

  ComplexArray u_hat = solver.dealias(grid.forward(ic.samples));
  double t = 0;
  RealArray u = grid.inverse(u_hat);
  double dt = solver.stable_dt(u);
  report.series.push_back(solver.sample(u_hat, t, dt));
  const double threshold = report.slope_threshold();

  auto finish = [&](VerdictKind kind, double when, const ExtremaSample* last) {
    if (last && report.series.back().t != last->t) report.series.push_back(*last);
    report.verdict = {kind, when};
  };

  if (report.series.front().m1 <= threshold) {
    report.verdict = {VerdictKind::BrokeAt, 0};
    return report;
  }

  for (long steps = 1;; ++steps) {
    if (steps > cfg.max_steps) {
      finish(VerdictKind::ResolutionLost, t, nullptr);
      return report;
    }
    dt = solver.stable_dt(u);
    const double remaining = cfg.max_time - t;
    const bool last_step = dt >= remaining;
    if (last_step) dt = remaining;
    const double t_before = t;
    try {
      solver.step(u_hat, t, dt);
    } catch (const BlowupSignal&) {
      finish(VerdictKind::ResolutionLost, t_before, nullptr);
      return report;
    }
    if (last_step) t = cfg.max_time;
    u = grid.inverse(u_hat);

    const ExtremaSample s = solver.sample(u_hat, t, dt);
    const bool resolved = s.tail_ratio <= cfg.tail_energy_limit;
    if (s.m1 <= threshold && resolved) {
      finish(VerdictKind::BrokeAt, t, &s);
      return report;
    }
    if (!resolved) {
      finish(VerdictKind::ResolutionLost, t, &s);
      return report;
    }
    if (last_step) {
      finish(VerdictKind::ResolvedToHorizon, t, &s);
      return report;
    }
    if (steps % cfg.output_stride == 0) report.series.push_back(s);
  }
}

std::string format_series_csv(const std::vector<ExtremaSample>& series) {
  using io::format_double;
  std::string out = "t,m1,m2,xi1,xi2,dt,tail_ratio\n";
  for (const auto& s : series) {
    out += format_double(s.t) + "," + format_double(s.m1) + "," + format_double(s.m2) + "," +
           format_double(s.xi1) + "," + format_double(s.xi2) + "," + format_double(s.dt_used) + "," +
           format_double(s.tail_ratio) + "\n";
  }
  return out;
}

void write_series_csv(const std::filesystem::path& path, const std::vector<ExtremaSample>& series) {
  io::write_text(path, format_series_csv(series));
}

std::vector<ExtremaSample> parse_series_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto t = table.numeric_column("t");
  const auto m1 = table.numeric_column("m1");
  const auto m2 = table.numeric_column("m2");
  const auto xi1 = table.numeric_column("xi1");
  const auto xi2 = table.numeric_column("xi2");
  const auto dt = table.numeric_column("dt");
  const auto tail = table.numeric_column("tail_ratio");
  std::vector<ExtremaSample> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = {t[i], m1[i], m2[i], xi1[i], xi2[i], dt[i], tail[i]};
  return out;
}

std::vector<ExtremaSample> read_series_csv(const std::filesystem::path& path) {
  return parse_series_csv(io::read_text(path));
}

io::Record summary_record(const SimReport& report) {
  using io::format_double;
  const auto& v = report.verdict;
  const std::string none = "none";

  std::string t_break = v.kind == VerdictKind::BrokeAt ? format_double(v.time) : none;
  std::string T_star = none, t_star = none, in_omega_initial = none, margin = none;
  std::string theory = "no K(0): breaking bounds do not apply to this kernel";
  if (report.kernel_at_zero && !report.series.empty()) {
    const double k0 = *report.kernel_at_zero;
    const SlopePair<double> p0{report.series.front().m1, report.series.front().m2};
    const bool inside = in_omega(normalize(p0, k0));
    in_omega_initial = inside ? "true" : "false";
    theory = "K(0)=" + format_double(k0);
    if (inside) {
      const auto b = bounds(p0, k0);
      T_star = format_double(b.T_star);
      t_star = format_double(b.t_star);
      if (v.kind == VerdictKind::BrokeAt) margin = format_double(b.T_star - v.time);
    }
  }
  return {{"verdict", to_string(v.kind)},
          {"t_break", t_break},
          {"T_star", T_star},
          {"t_star", t_star},
          {"in_omega_initial", in_omega_initial},
          {"kernel", report.kernel},
          {"grid", std::to_string(report.grid_size) + "x" + format_double(report.domain_length)},
          {"verdict_time", format_double(v.time)},
          {"margin", margin},
          {"theory", theory}};
}

}  // namespace whitham
