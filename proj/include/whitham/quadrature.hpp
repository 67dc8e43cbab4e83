#ifndef WHITHAM_QUADRATURE_HPP
#define WHITHAM_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace whitham {

template <typename Scalar>
struct QuadratureResult {
  Scalar value{0};
  Scalar error{0};
  std::size_t intervals{0};
  bool converged{false};
};

namespace detail {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar, typename F>
QuadratureResult<Scalar> gauss_kronrod_15(F&& f, Scalar a, Scalar b) {
  const Scalar center = (a + b) / 2;
  const Scalar half = (b - a) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kKronrodWeights[7]);
  Scalar gauss = fc * Scalar(kGaussWeights[3]);
  for (std::size_t j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    const Scalar sum = f(center - dx) + f(center + dx);
    kronrod += Scalar(kKronrodWeights[j]) * sum;
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * sum;
  }
  QuadratureResult<Scalar> r;
  r.value = kronrod * half;
  r.error = std::abs((kronrod - gauss) * half);
  r.intervals = 1;
  return r;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// `panels` seeds the subdivision, which helps oscillatory integrands.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b, Scalar abs_tol,
                                            std::size_t panels = 1,
                                            std::size_t max_intervals = 200000) {
  struct Piece {
    Scalar a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
  };
  std::priority_queue<Piece> heap;
  Scalar total = 0, err = 0;
  if (panels == 0) panels = 1;
  const Scalar width = (b - a) / Scalar(panels);
  for (std::size_t i = 0; i < panels; ++i) {
    const Scalar lo = a + width * Scalar(i);
    const Scalar hi = (i + 1 == panels) ? b : lo + width;
    auto r = detail::gauss_kronrod_15<Scalar>(f, lo, hi);
    heap.push({lo, hi, r.value, r.error});
    total += r.value;
    err += r.error;
  }
  while (err > abs_tol && heap.size() < max_intervals) {
    Piece worst = heap.top();
    heap.pop();
    const Scalar mid = (worst.a + worst.b) / 2;
    auto left = detail::gauss_kronrod_15<Scalar>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<Scalar>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.value, left.error});
    heap.push({mid, worst.b, right.value, right.error});
  }
  // Re-sum to shed the drift accumulated by incremental updates.
  total = 0;
  err = 0;
  QuadratureResult<Scalar> out;
  out.intervals = heap.size();
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = err;
  out.converged = err <= abs_tol;
  return out;
}

}  // namespace whitham

#endif  // WHITHAM_QUADRATURE_HPP
