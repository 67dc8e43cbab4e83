#include "whitham/plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "whitham/breaking_theory.hpp"

namespace whitham {

namespace {

constexpr double kWidth = 720, kHeight = 540;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.setf(std::ios::fixed);
  os.precision(2);
  os << v;
  return os.str();
}

std::string label(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(4);
  os << v;
  return os.str();
}

struct Axes {
  double x_lo, x_hi, y_lo, y_hi;

  double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom); }
  bool contains(double x, double y) const { return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi; }
};

Axes padded(double x_lo, double x_hi, double y_lo, double y_hi) {
  if (!(x_hi > x_lo)) {
    x_lo -= 0.5;
    x_hi += 0.5;
  }
  if (!(y_hi > y_lo)) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double py = 0.05 * (y_hi - y_lo);
  return {x_lo, x_hi, y_lo - py, y_hi + py};
}

class Svg {
 public:
  explicit Svg(const std::string& title) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
         << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"16\">"
         << title << "</text>\n";
  }

  void frame(const Axes& a, const std::string& x_name, const std::string& y_name) {
    out_ << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
         << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
      const double x = a.x_lo + (a.x_hi - a.x_lo) * i / 5;
      const double y = a.y_lo + (a.y_hi - a.y_lo) * i / 5;
      out_ << "<text x=\"" << num(a.px(x)) << "\" y=\"" << num(kHeight - kBottom + 16)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label(x) << "</text>\n";
      out_ << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(a.py(y) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label(y) << "</text>\n";
    }
    out_ << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 10)
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_name << "</text>\n";
    out_ << "<text x=\"16\" y=\"" << num(kHeight / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"13\" transform=\"rotate(-90 16 "
         << num(kHeight / 2) << ")\">" << y_name << "</text>\n";
  }

  void polyline(const Axes& a, const std::vector<std::pair<double, double>>& pts, const std::string& color,
                const std::string& cls, const std::string& extra = "") {
    if (pts.empty()) return;
    out_ << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
         << extra << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      out_ << (i ? " " : "") << num(a.px(pts[i].first)) << "," << num(a.py(pts[i].second));
    out_ << "\"/>\n";
  }

  void vline(const Axes& a, double x, const std::string& color, const std::string& cls, const std::string& text) {
    out_ << "<line class=\"" << cls << "\" x1=\"" << num(a.px(x)) << "\" y1=\"" << num(kTop) << "\" x2=\""
         << num(a.px(x)) << "\" y2=\"" << num(kHeight - kBottom) << "\" stroke=\"" << color
         << "\" stroke-dasharray=\"5,3\"/>\n";
    out_ << "<text x=\"" << num(a.px(x) + 3) << "\" y=\"" << num(kTop + 12)
         << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">" << text << "</text>\n";
  }

  void arrow(const Axes& a, double x, double y, double dx, double dy, double scale) {
    const double x0 = a.px(x), y0 = a.py(y);
    const double len = std::hypot(dx, dy);
    if (len == 0) {
      out_ << "<circle class=\"arrow\" cx=\"" << num(x0) << "\" cy=\"" << num(y0) << "\" r=\"1.5\" fill=\"gray\"/>\n";
      return;
    }
    // Direction in screen space; fixed length so the field reads as a direction plot.
    const double sx = dx / (a.x_hi - a.x_lo), sy = -dy / (a.y_hi - a.y_lo);
    const double sl = std::hypot(sx, sy);
    const double ux = sx / sl * scale, uy = sy / sl * scale;
    out_ << "<line class=\"arrow\" x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0 + ux)
         << "\" y2=\"" << num(y0 + uy) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    const double hx = -ux * 0.35, hy = -uy * 0.35;
    out_ << "<polygon class=\"arrowhead\" fill=\"gray\" points=\"" << num(x0 + ux) << "," << num(y0 + uy) << " "
         << num(x0 + ux + hx - hy * 0.5) << "," << num(y0 + uy + hy + hx * 0.5) << " "
         << num(x0 + ux + hx + hy * 0.5) << "," << num(y0 + uy + hy - hx * 0.5) << "\"/>\n";
  }

  void legend(const std::vector<std::pair<std::string, std::string>>& items) {
    double y = kTop + 16;
    for (const auto& [text, color] : items) {
      out_ << "<line x1=\"" << num(kWidth - kRight - 150) << "\" y1=\"" << num(y) << "\" x2=\""
           << num(kWidth - kRight - 130) << "\" y2=\"" << num(y) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
      out_ << "<text x=\"" << num(kWidth - kRight - 125) << "\" y=\"" << num(y + 4)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << text << "</text>\n";
      y += 16;
    }
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

}  // namespace

std::string portrait_svg(const std::vector<Arrow>& arrows, const std::vector<CurvePoint>& boundary) {
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& a : arrows) {
    x_lo = std::min(x_lo, a.x);
    x_hi = std::max(x_hi, a.x);
    y_lo = std::min(y_lo, a.y);
    y_hi = std::max(y_hi, a.y);
  }
  for (const auto& c : boundary) {
    x_lo = std::min(x_lo, c.x);
    x_hi = std::max(x_hi, c.x);
    y_lo = std::min(y_lo, c.y);
    y_hi = std::max(y_hi, c.y);
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  const Axes axes = padded(x_lo, x_hi, y_lo, y_hi);

  Svg svg("phase portrait of x' = -x^2 + y - x, y' = -y^2 + y - x");
  svg.frame(axes, "m1", "m2");
  for (const auto& a : arrows) svg.arrow(axes, a.x, a.y, a.dx, a.dy, 12);

  std::map<std::string, std::vector<std::pair<double, double>>> curves;
  for (const auto& c : boundary) curves[c.curve].emplace_back(c.x, c.y);
  for (const auto& [name, pts] : curves) {
    const std::string color = name == "seliger" ? "blue" : "red";
    svg.polyline(axes, pts, color, name);
  }
  svg.legend({{"Omega boundary", "red"}, {"m1 + m2 = -2", "blue"}});
  return svg.finish();
}

std::string series_svg(const std::vector<SeriesPoint>& series, double k0, const std::string& title) {
  double t_lo = 0, t_hi = 1, y_lo = INFINITY, y_hi = -INFINITY;
  if (!series.empty()) {
    t_lo = series.front().t;
    t_hi = series.back().t;
  }
  for (const auto& s : series) {
    y_lo = std::min({y_lo, s.m1, s.m2});
    y_hi = std::max({y_hi, s.m1, s.m2});
  }

  std::optional<BoundsReport<double>> b;
  if (!series.empty() && k0 > 0) {
    const SlopePair<double> p0{series.front().m1, series.front().m2};
    if (in_omega(normalize(p0, k0))) {
      b = bounds(p0, k0);
      t_hi = std::max(t_hi, b->T_star * 1.05);
    }
  }
  if (!std::isfinite(y_lo)) y_lo = -1, y_hi = 1;
  const Axes axes = padded(t_lo, t_hi, y_lo, y_hi);

  Svg svg(title);
  svg.frame(axes, "t", "slope");
  std::vector<std::pair<double, double>> m1, m2;
  for (const auto& s : series) {
    m1.emplace_back(s.t, s.m1);
    m2.emplace_back(s.t, s.m2);
  }
  svg.polyline(axes, m1, "black", "m1");
  svg.polyline(axes, m2, "green", "m2");

  if (b) {
    // Envelope on 1/m1 in normalized units, started at the worst-case origin.
    std::vector<std::pair<double, double>> env;
    const double m1n = b->envelope_origin.m1;
    const double t0 = b->t_star * k0;
    for (int i = 0; i <= 400; ++i) {
      const double s = t0 + (b->T_star * k0 - t0) * i / 400.0;
      const double z = riccati_envelope(m1n, t0, s);
      if (!(z < 0)) break;
      const double bound = k0 / z;
      if (bound < axes.y_lo) break;
      env.emplace_back(s / k0, bound);
    }
    svg.polyline(axes, env, "orange", "envelope", "stroke-dasharray=\"4,2\"");
    svg.vline(axes, b->t_star, "purple", "t_star", "t*");
    svg.vline(axes, b->T_star, "red", "T_star", "T*=" + label(b->T_star));
  }
  svg.legend({{"m1(t)", "black"}, {"m2(t)", "green"}, {"Riccati bound on m1", "orange"}});
  return svg.finish();
}

}  // namespace whitham
