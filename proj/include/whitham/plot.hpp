#ifndef WHITHAM_PLOT_HPP
#define WHITHAM_PLOT_HPP

#include <optional>
#include <string>
#include <vector>

#include "whitham/ode_phase.hpp"

namespace whitham {

/// One row of a slope time series: PDE extrema or an ODE trajectory.
struct SeriesPoint {
  double t, m1, m2;
};

/// Phase portrait: arrow field, the Omega boundary and the Seliger line.
std::string portrait_svg(const std::vector<Arrow>& arrows, const std::vector<CurvePoint>& boundary);

/// m1(t) and m2(t) against the upper bound on m1 implied by the Riccati
/// envelope, with markers at t* and T* when the first point lies in Omega.
/// `k0` is K(0) of the kernel (1 for the comparison system).
std::string series_svg(const std::vector<SeriesPoint>& series, double k0 = 1.0,
                       const std::string& title = "slope extrema");

}  // namespace whitham

#endif  // WHITHAM_PLOT_HPP
