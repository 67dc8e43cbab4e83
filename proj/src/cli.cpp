#include "whitham/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <map>

#include "whitham/breaking_theory.hpp"
#include "whitham/csv.hpp"
#include "whitham/errors.hpp"
#include "whitham/initial_data.hpp"
#include "whitham/kernels.hpp"
#include "whitham/ode_phase.hpp"
#include "whitham/plot.hpp"
#include "whitham/solver.hpp"
#include "whitham/sweep.hpp"

namespace whitham {

namespace {

namespace fs = std::filesystem;
using io::format_double;

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "none"; }

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  try {
    for (const auto& f : io::split(text)) out.push_back(io::parse_double(f));
  } catch (const ParseError&) {
    throw ConfigError("malformed " + what + ": '" + text + "'");
  }
  if (out.size() != expected)
    throw ConfigError(what + " expects " + std::to_string(expected) + " comma-separated numbers");
  return out;
}

SweepRange parse_range(const std::string& text, const std::string& what) {
  const auto v = parse_list(text, 3, what);
  if (v[2] != std::floor(v[2])) throw ConfigError(what + " count must be an integer");
  return {v[0], v[1], static_cast<int>(v[2])};
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) throw std::runtime_error("cannot create output directory '" + dir + "'");
  return p;
}

void print(std::ostream& out, const io::Record& r) { out << io::format_records({r}); }

// Appends "--key=value" for every config entry whose flag is absent from args.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::map<std::string, std::string> config;
  try {
    config = io::read_config(path);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  for (const auto& [key, value] : config) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) args.push_back(flag + "=" + value);
  }
  return args;
}

struct SolverFlags {
  double cfl{0.3};
  double dealias{2.0 / 3.0};
  double blowup_factor{50};
  double tail_limit{1e-4};
  double horizon{1};
  int stride{1};

  void attach(CLI::App* app) {
    app->add_option("--cfl", cfl, "CFL number")->capture_default_str();
    app->add_option("--dealias", dealias, "retained fraction of the spectrum")->capture_default_str();
    app->add_option("--blowup-factor", blowup_factor, "slope threshold factor M")->capture_default_str();
    app->add_option("--tail-limit", tail_limit, "spectral tail energy limit")->capture_default_str();
    app->add_option("--horizon", horizon, "final time")->capture_default_str();
    app->add_option("--stride", stride, "output stride in steps")->capture_default_str();
  }

  SolverConfig config() const {
    SolverConfig c;
    c.cfl = cfl;
    c.dealias_fraction = dealias;
    c.blowup_slope_factor = blowup_factor;
    c.tail_energy_limit = tail_limit;
    c.max_time = horizon;
    c.output_stride = stride;
    c.validate();
    return c;
  }
};

}  // namespace

int run_command(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wave-breaking experiments for the nonlocal Whitham-type equation", "whitham_cli"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key=value file; command-line flags take precedence");

  std::string out_dir = ".";
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_dir, "output directory")->capture_default_str(); };

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the pseudospectral solver on a two-bump profile");
  double sim_m1 = -4, sim_m2 = 2, sim_L = 40, sim_w = 2;
  long sim_n = 4096;
  std::string sim_kernel = "gaussian:1", sim_profile;
  bool sim_linear = false, sim_plot = false;
  SolverFlags sim_flags;
  simulate->add_option("--m1", sim_m1, "target inf u0'")->capture_default_str();
  simulate->add_option("--m2", sim_m2, "target sup u0'")->capture_default_str();
  simulate->add_option("--kernel", sim_kernel, "gaussian:s | exponential:l | whitham | tabulated:<csv>")
      ->capture_default_str();
  simulate->add_option("--n", sim_n, "grid size (power of two)")->capture_default_str();
  simulate->add_option("--L", sim_L, "domain length")->capture_default_str();
  simulate->add_option("--w", sim_w, "bump width")->capture_default_str();
  simulate->add_option("--profile", sim_profile, "import initial profile CSV (x,u0) instead of building one");
  simulate->add_flag("--linear", sim_linear, "disable the nonlinearity (linear test mode)");
  simulate->add_flag("--plot", sim_plot, "also write series.svg");
  sim_flags.attach(simulate);
  add_out(simulate);

  // classify / bounds
  double pt_m1 = 0, pt_m2 = 0, pt_k0 = 1;
  auto* classify_cmd = app.add_subcommand("classify", "label a slope pair by region");
  auto* bounds_cmd = app.add_subcommand("bounds", "breaking-time bounds for a slope pair");
  for (auto* sub : {classify_cmd, bounds_cmd}) {
    sub->add_option("--m1", pt_m1, "inf u0'")->required();
    sub->add_option("--m2", pt_m2, "sup u0'")->required();
    sub->add_option("--k0", pt_k0, "kernel value K(0)")->capture_default_str();
  }

  // phase
  auto* phase = app.add_subcommand("phase", "integrate the comparison ODE system");
  double ph_m1 = 0, ph_m2 = 0, ph_horizon = 1;
  phase->add_option("--m1", ph_m1, "initial x")->required();
  phase->add_option("--m2", ph_m2, "initial y")->required();
  phase->add_option("--horizon", ph_horizon, "final time")->capture_default_str();
  add_out(phase);

  // portrait
  auto* portrait_cmd = app.add_subcommand("portrait", "sample the comparison vector field");
  std::string window_text = "-6,1,-1,7";
  int nx = 20, ny = 20;
  portrait_cmd->add_option("--window", window_text, "x_min,x_max,y_min,y_max")->capture_default_str();
  portrait_cmd->add_option("--nx", nx, "nodes along m1")->capture_default_str();
  portrait_cmd->add_option("--ny", ny, "nodes along m2")->capture_default_str();
  add_out(portrait_cmd);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "grid or sampled sweep of initial slopes");
  std::string sw_m1 = "-6,-2.05,8", sw_m2 = "0.1,0.9,5", sw_mode = "fraction_of_parabola", sw_backend = "ode",
              sw_kernel = "gaussian:1";
  double sw_L = 40, sw_w = 2;
  long sw_n = 1024;
  int sw_samples = 0;
  std::uint64_t sw_seed = 0;
  unsigned sw_jobs = 0;
  SolverFlags sw_flags;
  sweep_cmd->add_option("--m1-range", sw_m1, "lo,hi,count")->capture_default_str();
  sweep_cmd->add_option("--m2-range", sw_m2, "lo,hi,count (fractions or absolute values)")->capture_default_str();
  sweep_cmd->add_option("--m2-mode", sw_mode, "fraction_of_parabola | absolute")->capture_default_str();
  sweep_cmd->add_option("--backend", sw_backend, "ode | pde")->capture_default_str();
  sweep_cmd->add_option("--kernel", sw_kernel, "kernel for the pde backend; sets K(0)")->capture_default_str();
  sweep_cmd->add_option("--n", sw_n, "grid size")->capture_default_str();
  sweep_cmd->add_option("--L", sw_L, "domain length")->capture_default_str();
  sweep_cmd->add_option("--w", sw_w, "bump width")->capture_default_str();
  sweep_cmd->add_option("--samples", sw_samples, "draw this many random points instead of the grid");
  sweep_cmd->add_option("--seed", sw_seed, "seed for --samples")->capture_default_str();
  sweep_cmd->add_option("--jobs", sw_jobs, "worker threads (0: all cores)")->capture_default_str();
  sw_flags.attach(sweep_cmd);
  add_out(sweep_cmd);

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "render a CSV produced by another subcommand as SVG");
  std::string plot_kind, plot_input, plot_boundary, plot_output;
  double plot_k0 = 1;
  plot_cmd->add_option("--kind", plot_kind, "portrait | series | trajectory")
      ->required()
      ->check(CLI::IsMember({"portrait", "series", "trajectory"}));
  plot_cmd->add_option("--input", plot_input, "arrows, series or trajectory CSV")->required();
  plot_cmd->add_option("--boundary", plot_boundary, "boundary-curve CSV (portrait)");
  plot_cmd->add_option("--k0", plot_k0, "K(0) for the series bounds")->capture_default_str();
  plot_cmd->add_option("--output", plot_output, "SVG path (default <out>/<kind>.svg)");
  add_out(plot_cmd);

  try {
    auto args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (simulate->parsed()) {
      const auto pv = parse_kernel(sim_kernel);
      auto cfg = sim_flags.config();
      cfg.nonlinear = !sim_linear;
      const auto ic = sim_profile.empty() ? build_profile(sim_m1, sim_m2, sim_L, sim_w, sim_n)
                                          : read_profile_csv(sim_profile);
      const auto dir = prepare_out(out_dir);
      const auto report = run(ic, pv, cfg);
      write_profile_csv(dir / "profile.csv", ic);
      write_series_csv(dir / "series.csv", report.series);
      const auto summary = summary_record(report);
      io::write_text(dir / "summary.txt", io::format_records({summary}));
      if (sim_plot) {
        std::vector<SeriesPoint> pts;
        for (const auto& s : report.series) pts.push_back({s.t, s.m1, s.m2});
        io::write_text(dir / "series.svg",
                       series_svg(pts, report.kernel_at_zero.value_or(0.0), "PDE slope extrema, " + report.kernel));
      }
      print(out, summary);
      return 0;
    }
    if (classify_cmd->parsed()) {
      const SlopePair<double> p{pt_m1, pt_m2};
      print(out, {{"label", std::string(to_string(classify(p, pt_k0)))}});
      return 0;
    }
    if (bounds_cmd->parsed()) {
      const SlopePair<double> p{pt_m1, pt_m2};
      const auto label = classify(p, pt_k0);
      const auto n = normalize(p, pt_k0);
      const bool inside = in_omega(n);
      io::Record r{{"in_omega", inside ? "true" : "false"},
                   {"seliger", seliger(p, pt_k0) ? "true" : "false"},
                   {"label", std::string(to_string(label))}};
      if (!inside) {
        r.insert(r.end(), {{"t_star", "none"}, {"T_star", "none"}, {"deadline", "none"}});
        print(out, r);
        err << "domain error: bounds are defined only inside Omega\n";
        return 1;
      }
      const auto b = bounds(p, pt_k0);
      const double deadline = physical_time(riccati_deadline(b.envelope_origin.m1, b.t_star * pt_k0), pt_k0);
      r.insert(r.end(), {{"t_star", format_double(b.t_star)},
                         {"T_star", format_double(b.T_star)},
                         {"deadline", format_double(deadline)}});
      print(out, r);
      return 0;
    }
    if (phase->parsed()) {
      const auto dir = prepare_out(out_dir);
      const auto traj = integrate({ph_m1, ph_m2}, ph_horizon);
      io::write_text(dir / "trajectory.csv", format_trajectory_csv(traj));
      print(out, {{"omega_exit", opt(traj.events.omega_exit)},
                  {"s_hit", opt(traj.events.s_hit)},
                  {"blowup", opt(traj.events.blowup)},
                  {"escape", opt(traj.events.escape)},
                  {"points", std::to_string(traj.points.size())}});
      return 0;
    }
    if (portrait_cmd->parsed()) {
      const auto w = parse_list(window_text, 4, "window");
      const auto dir = prepare_out(out_dir);
      const auto p = portrait({w[0], w[1], w[2], w[3]}, nx, ny);
      io::write_text(dir / "arrows.csv", format_arrows_csv(p));
      io::write_text(dir / "boundary.csv", format_boundary_csv(p));
      io::write_text(dir / "portrait.svg", portrait_svg(p.arrows, p.boundary));
      print(out, {{"arrows", std::to_string(p.arrows.size())}, {"boundary_points", std::to_string(p.boundary.size())}});
      return 0;
    }
    if (sweep_cmd->parsed()) {
      SweepSpec spec;
      spec.m1 = parse_range(sw_m1, "m1-range");
      spec.m2 = parse_range(sw_m2, "m2-range");
      spec.m2_mode = parse_m2_mode(sw_mode);
      spec.backend = parse_backend(sw_backend);
      spec.kernel = parse_kernel(sw_kernel);
      spec.solver = sw_flags.config();
      spec.domain_length = sw_L;
      spec.bump_width = sw_w;
      spec.grid_size = sw_n;
      spec.random_samples = sw_samples;
      spec.seed = sw_seed;
      spec.jobs = sw_jobs;
      spec.validate();
      const auto dir = prepare_out(out_dir);
      const auto result = run_sweep(spec);
      io::write_text(dir / "sweep.csv", format_sweep_csv(result));
      std::size_t broke = 0, violations = 0;
      for (const auto& r : result.rows) {
        if (r.verdict == "BrokeAt") ++broke;
        if (r.margin && *r.margin < 0) ++violations;
      }
      print(out, {{"rows", std::to_string(result.rows.size())},
                  {"broke", std::to_string(broke)},
                  {"negative_margins", std::to_string(violations)}});
      return 0;
    }
    if (plot_cmd->parsed()) {
      const auto dir = prepare_out(out_dir);
      const fs::path target = plot_output.empty() ? dir / (plot_kind + ".svg") : fs::path(plot_output);
      const auto text = io::read_text(plot_input);
      std::string svg;
      if (plot_kind == "portrait") {
        const auto arrows = parse_arrows_csv(text);
        std::vector<CurvePoint> boundary;
        if (!plot_boundary.empty()) boundary = parse_boundary_csv(io::read_text(plot_boundary));
        svg = portrait_svg(arrows, boundary);
      } else if (plot_kind == "series") {
        std::vector<SeriesPoint> pts;
        for (const auto& s : parse_series_csv(text)) pts.push_back({s.t, s.m1, s.m2});
        svg = series_svg(pts, plot_k0, "PDE slope extrema");
      } else {
        std::vector<SeriesPoint> pts;
        for (const auto& p : parse_trajectory_csv(text).points) pts.push_back({p.t, p.x, p.y});
        svg = series_svg(pts, 1.0, "comparison system trajectory");
      }
      io::write_text(target, svg);
      print(out, {{"plot", target.string()}});
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace whitham
