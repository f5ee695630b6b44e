#pragma once

#include <span>
#include <vector>

#include "specdiff/functions.hpp"
#include "specdiff/jacobi.hpp"
#include "specdiff/method.hpp"
#include "specdiff/quadrature.hpp"

namespace specdiff {

/// S_n^{(alpha,beta)} f; coefficients from coefficients_batch.
[[nodiscard]] Expansion jacobi_projection(const SingularFunction& f, const JacobiParams& params, int n,
                                          CoefficientDiagnostics* diagnostics = nullptr);

/// Coefficients of the degree-n interpolant through samples taken at
/// x_j = cos(j pi / n), j = 0..n, via a type-I discrete cosine transform.
[[nodiscard]] std::vector<double> cheb_lobatto_coefficients(std::span<const double> samples);

/// Same coefficients by the direct O(n^2) double-primed sum.
[[nodiscard]] std::vector<double> cheb_lobatto_coefficients_direct(std::span<const double> samples);

/// Chebyshev-Lobatto points cos(j pi / n), j = 0..n (decreasing).
[[nodiscard]] std::vector<double> cheb_lobatto_points(int n);

/// Interpolant p_n of f at the Chebyshev-Lobatto points.
[[nodiscard]] Expansion cheb_interpolant(const SingularFunction& f, int n);
[[nodiscard]] Expansion cheb_interpolant_direct(const SingularFunction& f, int n);

/// d^m/dx^m f - d^m/dx^m (approximant of degree n). Construction checks the
/// exponent assumptions for (f, method, m).
class Remainder {
 public:
  Remainder(SingularFunction f, Method method, int n, int m);

  [[nodiscard]] const SingularFunction& f() const noexcept { return f_; }
  [[nodiscard]] const Method& method() const noexcept { return method_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int m() const noexcept { return m_; }

 private:
  SingularFunction f_;
  Method method_;
  int n_;
  int m_;
};

/// A built approximant with its m-th derivative, ready for repeated
/// pointwise remainder evaluation.
class Approximant {
 public:
  explicit Approximant(const Remainder& r, CoefficientDiagnostics* diagnostics = nullptr);
  /// Reuses an already computed expansion (degree n of the right family).
  Approximant(const Remainder& r, Expansion expansion);

  [[nodiscard]] const Remainder& remainder_spec() const noexcept { return spec_; }
  [[nodiscard]] const Expansion& expansion() const noexcept { return expansion_; }
  [[nodiscard]] const Expansion& derivative() const noexcept { return derivative_; }
  [[nodiscard]] double remainder(double x) const;

 private:
  Remainder spec_;
  Expansion expansion_;
  Expansion derivative_;
};

[[nodiscard]] double remainder_pointwise(const Remainder& r, double x);

struct MaxError {
  double value;
  double argmax;
};

/// Max of |remainder| over a uniform grid plus {-1, 1, xi}; ties go to the
/// leftmost point.
[[nodiscard]] MaxError max_error(const Approximant& a, int grid_size = 2049);
[[nodiscard]] MaxError max_error(const Remainder& r, int grid_size = 2049);

/// Uniform grid of grid_size points merged with {-1, 1, xi}, sorted, unique.
[[nodiscard]] std::vector<double> error_grid(const SingularFunction& f, int grid_size);

}  // namespace specdiff
