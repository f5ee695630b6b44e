#include "specdiff/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specdiff/error.hpp"

namespace specdiff {

JacobiParams::JacobiParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha <= -1.0 || beta <= -1.0) {
    throw ValidationError("Jacobi parameters require alpha > -1 and beta > -1 (got alpha=" +
                          std::to_string(alpha) + ", beta=" + std::to_string(beta) + ")");
  }
}

double pochhammer(double z, int m) {
  double p = 1.0;
  for (int i = 0; i < m; ++i) p *= z + i;
  return p;
}

double log_gamma_ratio(double x, double d) {
  if (!(x > 0.0) || !(x + d > 0.0)) throw ValidationError("log_gamma_ratio requires x > 0 and x + d > 0");
  if (d == 0.0) return 0.0;
  double acc = 0.0;
  while (std::min(x, x + d) < 20.0) {
    acc -= std::log1p(d / x);
    x += 1.0;
  }
  static constexpr double kStirling[] = {1.0 / 12.0,     -1.0 / 360.0,        1.0 / 1260.0, -1.0 / 1680.0,
                                         1.0 / 1188.0,   -691.0 / 360360.0,   1.0 / 156.0,  -3617.0 / 122400.0};
  const double y = x + d;
  double series = 0.0;
  double px = 1.0 / x;
  double py = 1.0 / y;
  const double x2 = px * px;
  const double y2 = py * py;
  for (double c : kStirling) {
    series += c * (py - px);
    px *= x2;
    py *= y2;
  }
  return acc + (x - 0.5) * std::log1p(d / x) + d * std::log(y) - d + series;
}

RecurrenceCoefficients jacobi_recurrence(const JacobiParams& params, int k) {
  const double a = params.alpha();
  const double b = params.beta();
  if (k == 0) return {0.5 * (a + b + 2.0), 0.5 * (a - b), 0.0};
  const double s = 2.0 * k + a + b;
  const double denom = 2.0 * (k + 1) * (k + a + b + 1.0) * s;
  return {(s + 1.0) * (s + 2.0) * s / denom,
          (s + 1.0) * (a * a - b * b) / denom,
          2.0 * (k + a) * (k + b) * (s + 2.0) / denom};
}

double jacobi_eval(const JacobiParams& params, int k, double x) {
  if (k < 0) throw ValidationError("jacobi_eval: degree must be >= 0");
  double p_prev = 1.0;
  if (k == 0) return p_prev;
  auto r = jacobi_recurrence(params, 0);
  double p = r.a * x + r.b;
  for (int j = 1; j < k; ++j) {
    r = jacobi_recurrence(params, j);
    const double next = (r.a * x + r.b) * p - r.c * p_prev;
    p_prev = p;
    p = next;
  }
  return p;
}

void jacobi_eval_all(const JacobiParams& params, double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  auto r = jacobi_recurrence(params, 0);
  out[1] = r.a * x + r.b;
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    r = jacobi_recurrence(params, static_cast<int>(j));
    out[j + 1] = (r.a * x + r.b) * out[j] - r.c * out[j - 1];
  }
}

double jacobi_norm(const JacobiParams& params, int n) {
  if (n < 0) throw ValidationError("jacobi_norm: degree must be >= 0");
  const double a = params.alpha();
  const double b = params.beta();
  const double log2ab = (a + b + 1.0) * std::numbers::ln2;
  if (n == 0) {
    return std::exp(log2ab + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  }
  const double lg = log2ab + log_gamma_ratio(n + 1.0, a) - log_gamma_ratio(n + b + 1.0, a);
  return std::exp(lg) / (2.0 * n + a + b + 1.0);
}

double jacobi_weight(const JacobiParams& params, double x) {
  return std::pow(1.0 - x, params.alpha()) * std::pow(1.0 + x, params.beta());
}

Expansion::Expansion(Family family, std::optional<JacobiParams> params, std::vector<double> coeffs)
    : family_(family), params_(params), coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ValidationError("Expansion coefficients must be finite");
  }
}

Expansion Expansion::jacobi(const JacobiParams& params, std::vector<double> coeffs) {
  return Expansion(Family::Jacobi, params, std::move(coeffs));
}

Expansion Expansion::chebyshev(std::vector<double> coeffs) {
  return Expansion(Family::Chebyshev, std::nullopt, std::move(coeffs));
}

const JacobiParams& Expansion::params() const {
  if (!params_) throw ValidationError("Chebyshev expansion has no Jacobi parameters");
  return *params_;
}

Expansion Expansion::truncated(int n) const {
  const auto len = static_cast<std::size_t>(std::max(0, n + 1));
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + std::min(len, coeffs_.size()));
  return Expansion(family_, params_, std::move(c));
}

double Expansion::operator()(double x) const { return eval_expansion(*this, x); }

Expansion derivative_ladder(const Expansion& e, int m) {
  if (e.family() != Family::Jacobi) {
    throw ValidationError("derivative_ladder requires a Jacobi expansion");
  }
  if (m < 0) throw ValidationError("derivative_ladder: order must be >= 0");
  const JacobiParams& p = e.params();
  const auto c = e.coeffs();
  std::vector<double> d;
  if (m <= e.degree()) {
    d.resize(c.size() - static_cast<std::size_t>(m));
    const double scale = std::ldexp(1.0, -m);
    for (std::size_t k = static_cast<std::size_t>(m); k < c.size(); ++k) {
      d[k - m] = c[k] * pochhammer(k + p.alpha() + p.beta() + 1.0, m) * scale;
    }
  }
  return Expansion::jacobi(p.shifted(m), std::move(d));
}

double eval_expansion(const Expansion& e, double x) {
  const auto c = e.coeffs();
  if (c.empty()) return 0.0;
  const int n = e.degree();
  if (e.family() == Family::Chebyshev) {
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 1; --k) {
      const double b0 = c[k] + 2.0 * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return c[0] + x * b1 - b2;
  }
  const JacobiParams& p = e.params();
  double b1 = 0.0, b2 = 0.0;
  double c_next = 0.0;  // C_{k+1}
  for (int k = n; k >= 1; --k) {
    const auto r = jacobi_recurrence(p, k);
    const double b0 = c[k] + (r.a * x + r.b) * b1 - c_next * b2;
    c_next = r.c;
    b2 = b1;
    b1 = b0;
  }
  const auto r0 = jacobi_recurrence(p, 0);
  return c[0] + (r0.a * x + r0.b) * b1 - c_next * b2;
}

}  // namespace specdiff
