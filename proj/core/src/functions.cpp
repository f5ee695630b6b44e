#include "specdiff/functions.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

bool is_integer(double v) noexcept { return std::isfinite(v) && v == std::floor(v); }

bool is_even_integer(double v) noexcept { return is_integer(v) && std::fmod(v, 2.0) == 0.0; }

std::vector<double> cheb_series_derivative(std::span<const double> coeffs) {
  if (coeffs.size() <= 1) return {};
  const std::size_t n = coeffs.size() - 1;
  std::vector<double> d(n + 1, 0.0);
  for (std::size_t k = n; k >= 1; --k) {
    d[k - 1] = (k + 1 <= n ? d[k + 1] : 0.0) + 2.0 * static_cast<double>(k) * coeffs[k];
  }
  d.pop_back();
  d[0] *= 0.5;
  return d;
}

double cheb_series_eval(std::span<const double> coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    const double b0 = coeffs[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs[0] + x * b1 - b2;
}

SmoothFactor::SmoothFactor(std::vector<double> cheb_coeffs, std::string label)
    : label_(std::move(label)) {
  if (cheb_coeffs.empty()) throw ValidationError("SmoothFactor needs at least one coefficient");
  for (double c : cheb_coeffs) {
    if (!std::isfinite(c)) throw ValidationError("SmoothFactor coefficients must be finite");
  }
  derivs_.push_back(std::move(cheb_coeffs));
  while (derivs_.back().size() > 1) derivs_.push_back(cheb_series_derivative(derivs_.back()));
}

SmoothFactor SmoothFactor::one() { return SmoothFactor({1.0}, "1"); }

SmoothFactor SmoothFactor::exp(int degree) {
  if (degree < 0) throw ValidationError("SmoothFactor::exp: degree must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) c[k] = (k == 0 ? 1.0 : 2.0) * std::cyl_bessel_i(static_cast<double>(k), 1.0);
  return SmoothFactor(std::move(c), "exp");
}

SmoothFactor SmoothFactor::interpolate(const std::function<double(double)>& fn, int degree) {
  if (degree < 0) throw ValidationError("SmoothFactor::interpolate: degree must be >= 0");
  if (degree == 0) return SmoothFactor({fn(0.0)});
  const int n = degree;
  std::vector<double> samples(n + 1);
  for (int j = 0; j <= n; ++j) samples[j] = fn(std::sin(std::numbers::pi * (n - 2 * j) / (2.0 * n)));
  std::vector<double> c(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * samples[j] * std::cos(std::numbers::pi * static_cast<double>((static_cast<long>(j) * k) % (2 * n)) / n);
    }
    c[k] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return SmoothFactor(std::move(c));
}

double SmoothFactor::derivative(int m, double x) const {
  if (m < 0) throw ValidationError("SmoothFactor::derivative: order must be >= 0");
  if (static_cast<std::size_t>(m) >= derivs_.size()) return 0.0;
  return cheb_series_eval(derivs_[m], x);
}

bool SmoothFactor::is_constant_one() const noexcept {
  return derivs_.front().size() == 1 && derivs_.front()[0] == 1.0;
}

std::string SmoothFactor::describe() const {
  if (!label_.empty()) return label_;
  if (is_constant_one()) return "1";
  std::string out = "cheb:[";
  const auto& c = derivs_.front();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += fmt17(c[i]);
  }
  return out + "]";
}

SingularFunction::SingularFunction(SingularKind kind, double xi, double sigma, SmoothFactor g)
    : kind_(kind), xi_(xi), sigma_(sigma), g_(std::move(g)) {
  if (!std::isfinite(xi) || xi < -1.0 || xi > 1.0) {
    throw ValidationError("singularity location must satisfy -1 <= xi <= 1");
  }
  if (!std::isfinite(sigma)) throw ValidationError("sigma must be finite");
  const bool endpoint = endpoint_singularity();
  if (kind == SingularKind::TruncPower) {
    if (endpoint) throw ValidationError("truncated power requires -1 < xi < 1");
    if (is_even_integer(sigma)) throw ValidationError("truncated power requires sigma not an even integer");
    if (sigma <= -1.0) throw ValidationError("sigma > -1 (truncated power)");
    return;
  }
  if (endpoint) {
    if (is_integer(sigma)) throw ValidationError("sigma must not be an integer when xi = +-1");
  } else {
    if (is_even_integer(sigma)) throw ValidationError("sigma must not be an even integer when -1 < xi < 1");
    if (sigma <= -1.0) throw ValidationError("sigma > -1 (interior singularity)");
  }
}

std::string SingularFunction::describe() const {
  return std::string(kind_ == SingularKind::AbsPower ? "abs" : "trunc") + "(xi=" + fmt17(xi_) +
         ",sigma=" + fmt17(sigma_) + ",g=" + g_.describe() + ")";
}

double eval_f(const SingularFunction& f, double x) {
  const double d = x - f.xi();
  if (f.kind() == SingularKind::TruncPower && d < 0.0) return 0.0;
  if (d == 0.0) return f.sigma() > 0.0 ? 0.0 : INFINITY;
  return std::pow(std::abs(d), f.sigma()) * f.g()(x);
}

double derivative_regular_part(const SingularFunction& f, int m, double x) {
  const double d = x - f.xi();
  const double s = (f.kind() == SingularKind::TruncPower || d > 0.0) ? 1.0 : -1.0;
  const double ad = std::abs(d);
  double sum = 0.0;
  double falling = 1.0;  // sigma (sigma-1) ... (sigma-i+1)
  double sign = 1.0;
  for (int i = 0; i <= m; ++i) {
    sum += binomial(m, i) * sign * falling * std::pow(ad, m - i) * f.g().derivative(m - i, x);
    falling *= f.sigma() - i;
    sign *= s;
  }
  return sum;
}

double eval_f_derivative(const SingularFunction& f, int m, double x) {
  if (m < 0) throw ValidationError("derivative order must be >= 0");
  if (m == 0) return eval_f(f, x);
  const double d = x - f.xi();
  if (d == 0.0) {
    if (m < f.sigma()) return 0.0;
    throw ValidationError("derivative of order m >= sigma does not exist at x = xi");
  }
  if (f.kind() == SingularKind::TruncPower && d < 0.0) return 0.0;
  return std::pow(std::abs(d), f.sigma() - m) * derivative_regular_part(f, m, x);
}

SmoothFactor parse_smooth_factor(const std::string& spec) {
  if (spec == "1") return SmoothFactor::one();
  if (spec == "exp") return SmoothFactor::exp();
  const std::string prefix = "cheb:[";
  if (spec.rfind(prefix, 0) == 0 && spec.size() > prefix.size() && spec.back() == ']') {
    std::vector<double> c;
    const std::string body = spec.substr(prefix.size(), spec.size() - prefix.size() - 1);
    const char* p = body.c_str();
    while (*p) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) throw ValidationError("malformed Chebyshev coefficient list: " + spec);
      c.push_back(v);
      p = end;
      while (*p == ' ') ++p;
      if (*p == ',') {
        ++p;
      } else if (*p) {
        throw ValidationError("malformed Chebyshev coefficient list: " + spec);
      }
    }
    return SmoothFactor(std::move(c));
  }
  throw ValidationError("g must be \"1\", \"exp\" or \"cheb:[c0,c1,...]\" (got \"" + spec + "\")");
}

}  // namespace specdiff
