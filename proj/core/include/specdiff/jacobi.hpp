#pragma once

#include <optional>
#include <span>
#include <vector>

namespace specdiff {

/// Parameters of the weight (1-x)^alpha (1+x)^beta, both > -1.
class JacobiParams {
 public:
  JacobiParams(double alpha, double beta);

  [[nodiscard]] static JacobiParams legendre() { return {0.0, 0.0}; }
  [[nodiscard]] static JacobiParams chebyshev() { return {-0.5, -0.5}; }

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }

  /// Family reached after m differentiations: (alpha+m, beta+m).
  [[nodiscard]] JacobiParams shifted(int m) const {
    return {alpha_ + m, beta_ + m};
  }

  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;

 private:
  double alpha_;
  double beta_;
};

/// Rising factorial (z)_m = z (z+1) ... (z+m-1).
[[nodiscard]] double pochhammer(double z, int m);

/// log(Gamma(x+d) / Gamma(x)) for x > 0, x+d > 0, accurate for large x.
[[nodiscard]] double log_gamma_ratio(double x, double d);

/// P_{k+1}(x) = (a x + b) P_k(x) - c P_{k-1}(x).
struct RecurrenceCoefficients {
  double a;
  double b;
  double c;
};

[[nodiscard]] RecurrenceCoefficients jacobi_recurrence(const JacobiParams& params, int k);

/// P_k^{(alpha,beta)}(x) by the three-term recurrence.
[[nodiscard]] double jacobi_eval(const JacobiParams& params, int k, double x);

/// Fills out[k] = P_k(x) for k < out.size().
void jacobi_eval_all(const JacobiParams& params, double x, std::span<double> out);

/// Squared norm h_n = <P_n, P_n> under the Jacobi weight.
[[nodiscard]] double jacobi_norm(const JacobiParams& params, int n);

/// (1-x)^alpha (1+x)^beta.
[[nodiscard]] double jacobi_weight(const JacobiParams& params, double x);

enum class Family { Jacobi, Chebyshev };

/// Finite orthogonal series sum_k c_k phi_k(x). Coefficients are stored
/// plain: no halving is applied at evaluation time.
class Expansion {
 public:
  [[nodiscard]] static Expansion jacobi(const JacobiParams& params, std::vector<double> coeffs);
  [[nodiscard]] static Expansion chebyshev(std::vector<double> coeffs);

  [[nodiscard]] Family family() const noexcept { return family_; }
  /// Jacobi parameters; throws for the Chebyshev family.
  [[nodiscard]] const JacobiParams& params() const;
  [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
  /// Polynomial degree; -1 for the zero expansion.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Leading n+1 coefficients.
  [[nodiscard]] Expansion truncated(int n) const;

  [[nodiscard]] double operator()(double x) const;

 private:
  Expansion(Family family, std::optional<JacobiParams> params, std::vector<double> coeffs);

  Family family_;
  std::optional<JacobiParams> params_;
  std::vector<double> coeffs_;
};

/// m-th derivative of a Jacobi expansion, expressed in the (alpha+m, beta+m)
/// family. Returns the zero expansion when m exceeds the degree.
[[nodiscard]] Expansion derivative_ladder(const Expansion& e, int m);

/// Clenshaw summation of the series at x.
[[nodiscard]] double eval_expansion(const Expansion& e, double x);

}  // namespace specdiff
