#include "whitham/sweep.hpp"

#include <random>

#include "whitham/csv.hpp"
#include "whitham/errors.hpp"
#include "whitham/initial_data.hpp"
#include "whitham/ode_phase.hpp"
#include "whitham/parallel.hpp"

namespace whitham {

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  out.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? lo : (i == count - 1 ? hi : lo + (hi - lo) * double(i) / double(count - 1)));
  return out;
}

void SweepSpec::validate() const {
  for (const auto* r : {&m1, &m2}) {
    if (r->count < 1) throw ConfigError("sweep counts must be >= 1");
    if (!(r->lo <= r->hi)) throw ConfigError("sweep ranges must be ordered (lo <= hi)");
  }
  if (random_samples < 0) throw ConfigError("random sample count must be >= 0");
  solver.validate();
}

std::vector<SlopePair<double>> sweep_points(const SweepSpec& spec) {
  spec.validate();
  auto second = [&](double m1, double v) {
    return spec.m2_mode == M2Mode::FractionOfParabola ? v * parabola_height(m1) : v;
  };
  std::vector<SlopePair<double>> out;
  if (spec.random_samples > 0) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> d1(spec.m1.lo, spec.m1.hi), d2(spec.m2.lo, spec.m2.hi);
    for (int i = 0; i < spec.random_samples; ++i) {
      const double m1 = d1(rng);
      out.push_back({m1, second(m1, d2(rng))});
    }
    return out;
  }
  for (double m1 : spec.m1.values())
    for (double v : spec.m2.values()) out.push_back({m1, second(m1, v)});
  return out;
}

namespace {

double kernel_origin_value(const PhaseVelocity& pv) {
  if (pv.is_whitham()) throw DomainError("Whitham kernel is unbounded at the origin");
  return kernel_eval(pv, 0.0);
}

SweepRow sweep_row(const SweepSpec& spec, const SlopePair<double>& p0, double k0) {
  SweepRow row;
  row.p0 = p0;
  row.label = classify(p0, k0);
  if (in_omega(normalize(p0, k0))) {
    const auto b = bounds(p0, k0);
    row.t_star = b.t_star;
    row.T_star = b.T_star;
  }

  if (spec.backend == Backend::Ode) {
    try {
      const auto traj = integrate(normalize(p0, k0), spec.solver.max_time * k0);
      if (traj.events.blowup) {
        row.verdict = "BrokeAt";
        row.t_break = physical_time(*traj.events.blowup, k0);
      } else {
        row.verdict = "ResolvedToHorizon";
      }
    } catch (const IntegratorFailure&) {
      row.verdict = "IntegratorFailure";
    }
  } else {
    try {
      const auto ic = build_profile(p0.m1, p0.m2, spec.domain_length, spec.bump_width, spec.grid_size);
      const auto report = run(ic, spec.kernel, spec.solver);
      row.verdict = to_string(report.verdict.kind);
      if (report.verdict.kind == VerdictKind::BrokeAt) row.t_break = report.verdict.time;
    } catch (const GeometryError&) {
      row.verdict = "GeometryError";
    } catch (const DomainError&) {
      row.verdict = "DomainError";
    }
  }
  if (row.t_break && row.T_star) row.margin = *row.T_star - *row.t_break;
  return row;
}

std::string opt(const std::optional<double>& v) { return v ? io::format_double(*v) : "none"; }

std::optional<double> parse_opt(const std::string& s) {
  if (s == "none") return std::nullopt;
  return io::parse_double(s);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
  const auto points = sweep_points(spec);
  const double k0 = kernel_origin_value(spec.kernel);
  const unsigned jobs = spec.jobs == 0 ? default_jobs() : spec.jobs;
  SweepResult result;
  result.rows = parallel_map(points.size(), jobs, [&](std::size_t i) { return sweep_row(spec, points[i], k0); });
  return result;
}

std::string format_sweep_csv(const SweepResult& result) {
  using io::format_double;
  std::string out = "m1,m2,label,t_star,T_star,t_break,margin,verdict\n";
  for (const auto& r : result.rows) {
    out += format_double(r.p0.m1) + "," + format_double(r.p0.m2) + "," + std::string(to_string(r.label)) +
           "," + opt(r.t_star) + "," + opt(r.T_star) + "," + opt(r.t_break) + "," + opt(r.margin) + "," +
           r.verdict + "\n";
  }
  return out;
}

SweepResult parse_sweep_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto c_m1 = table.column("m1"), c_m2 = table.column("m2"), c_label = table.column("label"),
             c_ts = table.column("t_star"), c_T = table.column("T_star"), c_tb = table.column("t_break"),
             c_margin = table.column("margin"), c_verdict = table.column("verdict");
  SweepResult result;
  for (const auto& f : table.rows) {
    SweepRow r;
    r.p0 = {io::parse_double(f[c_m1]), io::parse_double(f[c_m2])};
    r.label = parse_region_label(f[c_label]);
    r.t_star = parse_opt(f[c_ts]);
    r.T_star = parse_opt(f[c_T]);
    r.t_break = parse_opt(f[c_tb]);
    r.margin = parse_opt(f[c_margin]);
    r.verdict = f[c_verdict];
    result.rows.push_back(std::move(r));
  }
  return result;
}

std::string to_string(M2Mode mode) {
  return mode == M2Mode::Absolute ? "absolute" : "fraction_of_parabola";
}

std::string to_string(Backend backend) { return backend == Backend::Pde ? "pde" : "ode"; }

M2Mode parse_m2_mode(const std::string& s) {
  if (s == "absolute") return M2Mode::Absolute;
  if (s == "fraction_of_parabola" || s == "fraction") return M2Mode::FractionOfParabola;
  throw ConfigError("unknown m2 mode '" + s + "' (absolute | fraction_of_parabola)");
}

Backend parse_backend(const std::string& s) {
  if (s == "pde") return Backend::Pde;
  if (s == "ode") return Backend::Ode;
  throw ConfigError("unknown backend '" + s + "' (pde | ode)");
}

RegionLabel parse_region_label(const std::string& s) {
  for (auto l : {RegionLabel::Both, RegionLabel::OmegaOnly, RegionLabel::SeligerOnly, RegionLabel::Neither})
    if (to_string(l) == s) return l;
  throw ParseError("unknown region label '" + s + "'");
}

}  // namespace whitham
