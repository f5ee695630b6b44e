#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specdiff/functions.hpp"
#include "specdiff/jacobi.hpp"
#include "specdiff/method.hpp"

namespace specdiff {

/// Location class of an evaluation point relative to the singularity.
/// For xi = +-1 the endpoint equal to xi is AtSingularity and the opposite
/// endpoint is MirrorEndpoint.
enum class PointClass { EndpointMinus, EndpointPlus, AtSingularity, MirrorEndpoint, Smooth };

[[nodiscard]] std::string_view to_string(PointClass pc) noexcept;

/// Canonical class of x for f.
[[nodiscard]] PointClass classify_point(const SingularFunction& f, double x);

// ---------------------------------------------------------------------------
// Coefficient asymptotics

/// Leading behaviour a_k ~ constant * osc(k) / k^decay, where osc(k) is
/// cos(k theta - phase) for interior singularities and (-1)^k (xi = -1)
/// or 1 (xi = 1) at the endpoints.
struct CoefficientAsymptotics {
  double constant;
  double decay;
  bool interior;
  double theta = 0.0;
  double phase = 0.0;
  bool alternating = false;

  [[nodiscard]] double value(int k) const;
  /// |constant|: the envelope of |a_k| k^decay.
  [[nodiscard]] double envelope() const;
};

[[nodiscard]] CoefficientAsymptotics coeff_asymptotics(const SingularFunction& f, const JacobiParams& params);

[[nodiscard]] double coeff_asymptotic_leading(const SingularFunction& f, const JacobiParams& params, int k);

/// Phase functions psi_{alpha,beta}(x) and, for truncated powers, phi_{alpha,beta}(x).
[[nodiscard]] double psi_phase(const JacobiParams& params, double x);
[[nodiscard]] double trunc_phase(const JacobiParams& params, double sigma, double x);

// ---------------------------------------------------------------------------
// Psi sums

enum class PsiVariant { C, S };

/// Terms summed directly: K = max(min_terms, terms_per_n * n).
struct PsiCutoff {
  long min_terms = 1'000'000;
  long terms_per_n = 1000;
};

/// sum_{k>n} cos(kx)/k^{nu+1} (C) or sin(kx)/k^{nu+1} (S).
[[nodiscard]] double psi_sum(PsiVariant variant, double nu, double x, long n, const PsiCutoff& cutoff = {});

/// Leading asymptotic term of psi_sum as n grows.
[[nodiscard]] double psi_asymptotic(PsiVariant variant, double nu, double x, long n);

// ---------------------------------------------------------------------------
// Exponents

struct AssumptionResult {
  bool ok = true;
  std::string violation;  ///< first violated inequality, empty when ok

  explicit operator bool() const noexcept { return ok; }
};

[[nodiscard]] AssumptionResult assumption_check(const SingularFunction& f, const Method& method, int m);

/// Pointwise exponent: |R_n^m(x)| = O(n^{-kappa}). Returns +infinity where the
/// remainder vanishes identically (interpolation nodes at m = 0).
[[nodiscard]] double kappa(const SingularFunction& f, const Method& method, int m, PointClass pc);

struct MaxNormPrediction {
  double kappa;
  std::vector<PointClass> argmax;  ///< more than one entry means a tie

  [[nodiscard]] bool tie() const noexcept { return argmax.size() > 1; }
};

[[nodiscard]] MaxNormPrediction max_norm_prediction(const SingularFunction& f, const Method& method, int m);

/// Argument of the oscillatory factor: n_coeff * n + constant.
struct Phase {
  double n_coeff;
  double constant;
};

struct RatePrediction {
  double kappa;
  std::optional<double> amplitude;
  std::optional<Phase> phase;
};

/// Exponent plus, for Jacobi projections where a leading term is available,
/// the envelope amplitude and single-oscillator phase.
[[nodiscard]] RatePrediction rate_prediction(const SingularFunction& f, const Method& method, int m, double x);

// ---------------------------------------------------------------------------
// Leading terms of the Jacobi remainder

struct LeadingTerm {
  double value;      ///< full leading term at n, oscillation included
  double amplitude;  ///< envelope constant: |value| <= amplitude * n^{-kappa}
  double kappa;
};

/// Leading term of R_n^m(x) for the Jacobi projection. Interior x must stay
/// away from +-1 and from points where the oscillatory denominators vanish.
[[nodiscard]] LeadingTerm leading_term(const SingularFunction& f, const JacobiParams& params, int m, double x, int n);

/// 2 Gamma(sigma)/pi |sin(sigma pi/2)|: limit of n^sigma |R_n^0(0)| for |x|^sigma
/// under the Legendre projection.
[[nodiscard]] double bernstein_constant(double sigma);

/// (1 - xi^2)^{sigma/2} Gamma(sigma)/pi |sin(sigma pi/2)|: the same limit at x = xi
/// for (x - xi)_+^sigma.
[[nodiscard]] double trunc_power_constant(double sigma, double xi);

// ---------------------------------------------------------------------------
// Lebesgue comparison

struct LebesgueComparison {
  double best_exponent;       ///< rate of best uniform approximation
  double lebesgue_growth;     ///< Lambda_n = O(n^growth)
  bool log_growth;            ///< Lambda_n = O(log n)
  double lebesgue_exponent;   ///< best_exponent - lebesgue_growth
  double actual_exponent;     ///< sharp max-norm exponent of the projection
};

[[nodiscard]] LebesgueComparison lebesgue_comparison(const SingularFunction& f, const JacobiParams& params);

/// Continued-fraction rational form, e.g. 1.5 -> "3/2", 7 -> "7".
[[nodiscard]] std::string to_rational_string(double v, long max_denominator = 1000);

// ---------------------------------------------------------------------------
// Superconvergence

enum class Side { Left, Right };

struct SuperconvPoint {
  int j;
  double theta;
  double x;
};

/// Closed-form points for xi = 1 (Right) or xi = -1 (Left), increasing j.
[[nodiscard]] std::vector<SuperconvPoint> superconv_points(const JacobiParams& params, int m, int n, Side side);

/// Two-term oscillatory factor of the interior leading term; its zeros are
/// the superconvergence candidates for an interior singularity.
[[nodiscard]] double superconv_residual_interior(const SingularFunction& f, const JacobiParams& params, int m, int n,
                                                 double x);

struct InteriorRoot {
  double theta;
  double x;
  double residual;
};

/// Roots of superconv_residual_interior by sign-change bisection on a uniform
/// theta grid, increasing theta.
[[nodiscard]] std::vector<InteriorRoot> superconv_roots_interior(const SingularFunction& f, const JacobiParams& params,
                                                                 int m, int n, int grid = 4096);

}  // namespace specdiff
