#ifndef WHITHAM_KERNELS_HPP
#define WHITHAM_KERNELS_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace whitham {

// Phase velocity variants. Each describes a convolution kernel K through its
// Fourier symbol c(kappa), with K(x) = (1/2pi) * int c(kappa) exp(i kappa x) dkappa.

/// K(x) = exp(-x^2 / (2 width^2)), c(kappa) = width sqrt(2 pi) exp(-width^2 kappa^2 / 2).
struct Gaussian {
  double width;
};

/// K(x) = exp(-rate |x|), c(kappa) = 2 rate / (rate^2 + kappa^2).
struct Exponential {
  double rate;
};

/// c(kappa) = sqrt(tanh(kappa) / kappa). K is singular at the origin.
struct WhithamSymbol {};

/// c sampled at nonnegative, strictly increasing kappa; evaluated by linear
/// interpolation in |kappa|.
struct Tabulated {
  std::vector<std::pair<double, double>> samples;
};

class PhaseVelocity {
 public:
  using Variant = std::variant<Gaussian, Exponential, WhithamSymbol, Tabulated>;

  static PhaseVelocity gaussian(double width);
  static PhaseVelocity exponential(double rate);
  static PhaseVelocity whitham();
  static PhaseVelocity tabulated(std::vector<std::pair<double, double>> samples,
                                 std::string description = "tabulated");

  const Variant& variant() const { return variant_; }
  const std::string& description() const { return description_; }

  bool is_whitham() const { return std::holds_alternative<WhithamSymbol>(variant_); }

  /// Largest |kappa| at which the symbol is defined (infinite unless tabulated).
  double max_wavenumber() const;

 private:
  PhaseVelocity(Variant v, std::string description)
      : variant_(std::move(v)), description_(std::move(description)) {}

  Variant variant_;
  std::string description_;
};

/// c(kappa); even in kappa.
double multiplier(const PhaseVelocity& pv, double kappa);

/// K(x): closed form for Gaussian and Exponential, quadrature otherwise.
/// Throws SingularityError for the Whitham symbol.
double kernel_eval(const PhaseVelocity& pv, double x);

/// K(x) by adaptive quadrature of the inverse transform, regardless of
/// whether a closed form exists. Throws AccuracyError (with the achieved
/// error estimate) when `abs_tol` is not met.
double kernel_eval_quadrature(const PhaseVelocity& pv, double x, double abs_tol = 1e-10);

struct KernelAdmissibility {
  std::optional<double> k_at_zero;  // empty when unbounded
  bool bounded{false};
  bool integrable{false};
  bool symmetric{false};
  bool monotone_decreasing_on_right{false};

  std::vector<double> probe_grid;
  double tolerance{0};
  std::string notes;
};

/// Sampled check of the hypotheses the breaking theory places on K. Failed
/// or unevaluable checks set flags to false; nothing throws.
KernelAdmissibility check_admissibility(const PhaseVelocity& pv,
                                        const std::vector<double>& probe_grid);

/// Parses "gaussian:s", "exponential:l", "whitham" or "tabulated:<csv path>".
PhaseVelocity parse_kernel(const std::string& spec);

/// Reads a "kappa,c" CSV table.
PhaseVelocity load_tabulated(const std::string& path);

/// Canonical string form accepted by parse_kernel (tabulated kernels echo
/// their description).
std::string kernel_name(const PhaseVelocity& pv);

}  // namespace whitham

#endif  // WHITHAM_KERNELS_HPP
