#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace specdiff {

/// Chebyshev coefficients of the derivative series; length drops by one.
[[nodiscard]] std::vector<double> cheb_series_derivative(std::span<const double> coeffs);

/// Plain Clenshaw evaluation of sum_k c_k T_k(x).
[[nodiscard]] double cheb_series_eval(std::span<const double> coeffs, double x);

/// Analytic factor g(x) = sum_k c_k T_k(x). All derivative series are
/// formed once at construction.
class SmoothFactor {
 public:
  explicit SmoothFactor(std::vector<double> cheb_coeffs, std::string label = "");

  [[nodiscard]] static SmoothFactor one();
  /// e^x truncated after degree: c_0 = I_0(1), c_k = 2 I_k(1).
  [[nodiscard]] static SmoothFactor exp(int degree = 30);
  /// Interpolant of fn at degree+1 Chebyshev-Lobatto points (direct sum).
  [[nodiscard]] static SmoothFactor interpolate(const std::function<double(double)>& fn, int degree);

  [[nodiscard]] std::span<const double> coeffs() const noexcept { return derivs_.front(); }
  [[nodiscard]] double operator()(double x) const { return derivative(0, x); }
  /// g^{(m)}(x).
  [[nodiscard]] double derivative(int m, double x) const;
  [[nodiscard]] bool is_constant_one() const noexcept;
  /// Text form accepted by parse_smooth_factor.
  [[nodiscard]] std::string describe() const;

  friend bool operator==(const SmoothFactor& a, const SmoothFactor& b) {
    return a.derivs_.front() == b.derivs_.front();
  }

 private:
  std::vector<std::vector<double>> derivs_;
  std::string label_;
};

enum class SingularKind { AbsPower, TruncPower };

/// |x - xi|^sigma g(x) or (x - xi)_+^sigma g(x) on [-1, 1].
class SingularFunction {
 public:
  SingularFunction(SingularKind kind, double xi, double sigma, SmoothFactor g = SmoothFactor::one());

  [[nodiscard]] static SingularFunction abs_power(double xi, double sigma,
                                                  SmoothFactor g = SmoothFactor::one()) {
    return {SingularKind::AbsPower, xi, sigma, std::move(g)};
  }
  [[nodiscard]] static SingularFunction trunc_power(double xi, double sigma,
                                                    SmoothFactor g = SmoothFactor::one()) {
    return {SingularKind::TruncPower, xi, sigma, std::move(g)};
  }

  [[nodiscard]] SingularKind kind() const noexcept { return kind_; }
  [[nodiscard]] double xi() const noexcept { return xi_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] const SmoothFactor& g() const noexcept { return g_; }
  [[nodiscard]] bool endpoint_singularity() const noexcept { return xi_ == -1.0 || xi_ == 1.0; }

  /// Canonical text form, e.g. "abs(xi=0.25,sigma=5,g=1)".
  [[nodiscard]] std::string describe() const;

 private:
  SingularKind kind_;
  double xi_;
  double sigma_;
  SmoothFactor g_;
};

[[nodiscard]] double eval_f(const SingularFunction& f, double x);

/// Exact m-th derivative by the Leibniz rule. At x = xi the value is 0 when
/// m < sigma and the call throws otherwise.
[[nodiscard]] double eval_f_derivative(const SingularFunction& f, int m, double x);

/// f^{(m)}(x) / |x - xi|^{sigma - m} for x != xi: the analytic part left after
/// removing the singular power. For truncated powers only x > xi is meaningful.
[[nodiscard]] double derivative_regular_part(const SingularFunction& f, int m, double x);

/// Parses "1", "exp" or "cheb:[c0,c1,...]".
[[nodiscard]] SmoothFactor parse_smooth_factor(const std::string& spec);

[[nodiscard]] bool is_integer(double v) noexcept;
[[nodiscard]] bool is_even_integer(double v) noexcept;

}  // namespace specdiff
