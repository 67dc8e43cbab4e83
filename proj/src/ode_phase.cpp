#include "whitham/ode_phase.hpp"

#include <algorithm>
#include <cmath>

#include "whitham/csv.hpp"
#include "whitham/errors.hpp"
#include "whitham/parallel.hpp"

namespace whitham {

namespace {

using State = Eigen::Vector2d;

struct DpStep {
  State next;
  State error;
};

// Dormand-Prince 5(4), FSAL not exploited.
DpStep dormand_prince(const State& y, double h) {
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  const State k1 = vector_field(y);
  const State k2 = vector_field(State(y + h * a21 * k1));
  const State k3 = vector_field(State(y + h * (a31 * k1 + a32 * k2)));
  const State k4 = vector_field(State(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const State k5 = vector_field(State(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const State k6 = vector_field(State(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
  const State next = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = vector_field(next);
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  return {next, err};
}

bool bounded_growth(const State& from, const State& to) {
  return to.allFinite() && std::abs(to(0)) <= 2 * std::max(std::abs(from(0)), 1.0) &&
         std::abs(to(1)) <= 2 * std::max(std::abs(from(1)), 1.0);
}

// Smallest tau in (0, h] with x + y <= 0 after a single step of size tau.
std::pair<double, State> locate_s_hit(const State& y, double h) {
  double lo = 0, hi = h;
  double g_lo = y.sum();
  State at_hi = dormand_prince(y, h).next;
  double g_hi = at_hi.sum();
  int side = 0;
  for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, hi); ++it) {
    // Illinois variant of regula falsi.
    double tau = hi - g_hi * (hi - lo) / (g_hi - g_lo);
    if (!(tau > lo && tau < hi)) tau = 0.5 * (lo + hi);
    const State at = dormand_prince(y, tau).next;
    const double g = at.sum();
    if (g <= 0) {
      hi = tau;
      g_hi = g;
      at_hi = at;
      if (side == -1) g_lo *= 0.5;
      side = -1;
    } else {
      lo = tau;
      g_lo = g;
      if (side == 1) g_hi *= 0.5;
      side = 1;
    }
  }
  return {hi, at_hi};
}

}  // namespace

Trajectory integrate(const SlopePair<double>& p0, double horizon, const OdeOptions& opts) {
  if (!(horizon >= 0)) throw DomainError("horizon must be nonnegative");
  Trajectory traj;
  traj.initial = p0;
  auto& ev = traj.events;

  double t = 0;
  State y(p0.m1, p0.m2);
  traj.points.push_back({t, y(0), y(1)});
  const bool track_omega = in_omega(p0);
  if (y.sum() <= 0) ev.s_hit = 0.0;

  double h = std::min(1e-3, std::max(horizon, opts.min_step));
  for (long steps = 0; t < horizon; ++steps) {
    if (steps >= opts.max_steps)
      throw IntegratorFailure("step budget exhausted before horizon", std::move(traj));
    const double remaining = horizon - t;
    if (remaining <= opts.min_step) break;
    h = std::min(h, remaining);
    if (h < opts.min_step) {
      throw IntegratorFailure("step size " + io::format_double(h) + " below floor at t=" +
                                  io::format_double(t),
                              std::move(traj));
    }

    const auto [next, err] = dormand_prince(y, h);
    double err_norm = 0;
    for (int i = 0; i < 2; ++i) {
      const double scale = opts.atol + opts.rtol * std::max(std::abs(y(i)), std::abs(next(i)));
      err_norm = std::max(err_norm, std::abs(err(i)) / scale);
    }
    if (!std::isfinite(err_norm) || !bounded_growth(y, next)) {
      h *= 0.5;
      continue;
    }
    if (err_norm > 1) {
      h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
      continue;
    }

    if (!ev.s_hit && next.sum() <= 0) {
      const auto [tau, at] = locate_s_hit(y, h);
      ev.s_hit = t + tau;
      if (tau < h) traj.points.push_back({t + tau, at(0), at(1)});
    }
    t = (h == remaining) ? horizon : t + h;
    y = next;
    traj.points.push_back({t, y(0), y(1)});

    if (track_omega && !ev.omega_exit &&
        !in_omega_closure(SlopePair<double>{y(0), y(1)}, opts.omega_tolerance))
      ev.omega_exit = t;

    if (y(0) <= -opts.blowup_threshold) {
      const double z = 1 / y(0);
      ev.blowup = t - z;
      ev.blowup_uncertainty = z * z + opts.rtol * std::abs(z);
      break;
    }
    if (std::abs(y(0)) >= opts.blowup_threshold || std::abs(y(1)) >= opts.blowup_threshold) {
      ev.escape = t;
      break;
    }
    const double grow = err_norm == 0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h *= grow;
  }
  return traj;
}

std::vector<Trajectory> integrate_batch(const std::vector<SlopePair<double>>& starts, double horizon,
                                        const OdeOptions& opts, unsigned jobs) {
  if (jobs == 0) jobs = default_jobs();
  return parallel_map(starts.size(), jobs, [&](std::size_t i) { return integrate(starts[i], horizon, opts); });
}

Portrait portrait(const Window& w, int nx, int ny) {
  Portrait p;
  p.window = w;
  if (!(w.x_max > w.x_min) || !(w.y_max > w.y_min) || nx < 1 || ny < 1) return p;
  p.nx = nx;
  p.ny = ny;

  auto node = [](double lo, double hi, int count, int i) {
    if (count == 1) return lo;
    if (i == count - 1) return hi;
    return lo + (hi - lo) * double(i) / double(count - 1);
  };
  p.arrows.reserve(std::size_t(nx) * std::size_t(ny));
  for (int j = 0; j < ny; ++j) {
    const double y = node(w.y_min, w.y_max, ny, j);
    for (int i = 0; i < nx; ++i) {
      const double x = node(w.x_min, w.x_max, nx, i);
      const auto v = vector_field(x, y);
      p.arrows.push_back({x, y, v(0), v(1)});
    }
  }

  constexpr int kCurveSamples = 201;
  auto inside = [&](double x, double y) {
    return x >= w.x_min && x <= w.x_max && y >= w.y_min && y <= w.y_max;
  };
  auto add = [&](const char* name, double x, double y) {
    if (inside(x, y)) p.boundary.push_back({name, x, y});
  };
  const double corner = -2;
  // Vertical edge {m1 = -2, 0 <= m2 <= 2}.
  for (int k = 0; k < kCurveSamples; ++k) add("omega_vertical", corner, 2.0 * k / (kCurveSamples - 1));
  // Floor {m2 = 0, m1 <= -2}, drawn leftward from the corner.
  const double left_end = std::min(corner, w.x_max);
  for (int k = 0; k < kCurveSamples; ++k) {
    const double x = corner + (w.x_min - corner) * k / (kCurveSamples - 1);
    if (x <= left_end) add("omega_floor", x, 0.0);
  }
  // Parabola m2 = m1^2 + m1 from (-2, 2) leftward.
  for (int k = 0; k < kCurveSamples; ++k) {
    const double x = corner + (w.x_min - corner) * k / (kCurveSamples - 1);
    add("omega_parabola", x, parabola_height(x));
  }
  for (int k = 0; k < kCurveSamples; ++k) {
    const double x = node(w.x_min, w.x_max, kCurveSamples, k);
    add("seliger", x, -2 - x);
  }
  return p;
}

namespace {

std::string optional_field(const std::optional<double>& v) {
  return v ? io::format_double(*v) : std::string("none");
}

std::optional<double> read_optional(const io::CsvTable& table, const std::string& key) {
  for (const auto& [k, v] : table.metadata)
    if (k == key) return v == "none" ? std::nullopt : std::optional<double>(io::parse_double(v));
  return std::nullopt;
}

}  // namespace

std::string format_trajectory_csv(const Trajectory& traj) {
  using io::format_double;
  std::string out;
  out += "# m1_0=" + format_double(traj.initial.m1) + "\n";
  out += "# m2_0=" + format_double(traj.initial.m2) + "\n";
  out += "# omega_exit=" + optional_field(traj.events.omega_exit) + "\n";
  out += "# s_hit=" + optional_field(traj.events.s_hit) + "\n";
  out += "# blowup=" + optional_field(traj.events.blowup) + "\n";
  out += "# blowup_uncertainty=" + format_double(traj.events.blowup_uncertainty) + "\n";
  out += "# escape=" + optional_field(traj.events.escape) + "\n";
  out += "t,x,y\n";
  for (const auto& p : traj.points)
    out += format_double(p.t) + "," + format_double(p.x) + "," + format_double(p.y) + "\n";
  return out;
}

Trajectory parse_trajectory_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  Trajectory traj;
  const auto t = table.numeric_column("t");
  const auto x = table.numeric_column("x");
  const auto y = table.numeric_column("y");
  for (std::size_t i = 0; i < t.size(); ++i) traj.points.push_back({t[i], x[i], y[i]});
  traj.initial = {read_optional(table, "m1_0").value_or(x.empty() ? 0.0 : x.front()),
                  read_optional(table, "m2_0").value_or(y.empty() ? 0.0 : y.front())};
  traj.events.omega_exit = read_optional(table, "omega_exit");
  traj.events.s_hit = read_optional(table, "s_hit");
  traj.events.blowup = read_optional(table, "blowup");
  traj.events.blowup_uncertainty = read_optional(table, "blowup_uncertainty").value_or(0.0);
  traj.events.escape = read_optional(table, "escape");
  return traj;
}

std::string format_arrows_csv(const Portrait& p) {
  using io::format_double;
  std::string out = "x,y,dx,dy\n";
  for (const auto& a : p.arrows)
    out += format_double(a.x) + "," + format_double(a.y) + "," + format_double(a.dx) + "," +
           format_double(a.dy) + "\n";
  return out;
}

std::string format_boundary_csv(const Portrait& p) {
  using io::format_double;
  std::string out = "curve,x,y\n";
  for (const auto& c : p.boundary) out += c.curve + "," + format_double(c.x) + "," + format_double(c.y) + "\n";
  return out;
}

std::vector<Arrow> parse_arrows_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto x = table.numeric_column("x"), y = table.numeric_column("y");
  const auto dx = table.numeric_column("dx"), dy = table.numeric_column("dy");
  std::vector<Arrow> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back({x[i], y[i], dx[i], dy[i]});
  return out;
}

std::vector<CurvePoint> parse_boundary_csv(std::string_view text) {
  const auto table = io::parse_csv(text);
  const auto c = table.column("curve");
  const auto x = table.numeric_column("x"), y = table.numeric_column("y");
  std::vector<CurvePoint> out;
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back({table.rows[i][c], x[i], y[i]});
  return out;
}

}  // namespace whitham
