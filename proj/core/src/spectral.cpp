#include "specdiff/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "specdiff/error.hpp"
#include "specdiff/theory.hpp"

namespace specdiff {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<double> sample(const SingularFunction& f, int n) {
  const auto x = cheb_lobatto_points(n);
  std::vector<double> s(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) s[j] = eval_f(f, x[j]);
  return s;
}

Expansion chebyshev_derivative(const Expansion& e, int m) {
  std::vector<double> c(e.coeffs().begin(), e.coeffs().end());
  for (int i = 0; i < m; ++i) c = cheb_series_derivative(c);
  return Expansion::chebyshev(std::move(c));
}

}  // namespace

Expansion jacobi_projection(const SingularFunction& f, const JacobiParams& params, int n,
                            CoefficientDiagnostics* diagnostics) {
  return coefficients_batch(f, params, n, diagnostics);
}

std::vector<double> cheb_lobatto_points(int n) {
  if (n < 1) throw ValidationError("Chebyshev-Lobatto grid needs n >= 1");
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) x[j] = std::sin(std::numbers::pi * (n - 2 * j) / (2.0 * n));
  return x;
}

std::vector<double> cheb_lobatto_coefficients(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("Chebyshev-Lobatto interpolation needs n >= 1");
  const int n = static_cast<int>(samples.size()) - 1;
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<double> out(samples.size());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(n + 1, in.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  for (double& c : out) c /= n;
  out.front() *= 0.5;
  out.back() *= 0.5;
  return out;
}

std::vector<double> cheb_lobatto_coefficients_direct(std::span<const double> samples) {
  if (samples.size() < 2) throw ValidationError("Chebyshev-Lobatto interpolation needs n >= 1");
  const int n = static_cast<int>(samples.size()) - 1;
  std::vector<double> cosines(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < 2 * n; ++i) cosines[i] = std::cos(std::numbers::pi * i / n);
  std::vector<double> c(samples.size());
  for (int k = 0; k <= n; ++k) {
    double s = 0.5 * (samples[0] + ((k % 2 == 0) ? samples[n] : -samples[n]));
    for (int j = 1; j < n; ++j) s += samples[j] * cosines[(static_cast<long>(j) * k) % (2 * n)];
    c[k] = 2.0 * s / n;
  }
  c.front() *= 0.5;
  c.back() *= 0.5;
  return c;
}

Expansion cheb_interpolant(const SingularFunction& f, int n) {
  return Expansion::chebyshev(cheb_lobatto_coefficients(sample(f, n)));
}

Expansion cheb_interpolant_direct(const SingularFunction& f, int n) {
  return Expansion::chebyshev(cheb_lobatto_coefficients_direct(sample(f, n)));
}

Remainder::Remainder(SingularFunction f, Method method, int n, int m)
    : f_(std::move(f)), method_(std::move(method)), n_(n), m_(m) {
  if (m < 0) throw ValidationError("derivative order must be >= 0");
  if (n < (is_jacobi(method_) ? 0 : 1)) throw ValidationError("degree out of range for the method");
  if (auto chk = assumption_check(f_, method_, m_); !chk) {
    throw ValidationError("assumption violated: " + chk.violation);
  }
  if (const auto* j = std::get_if<JacobiProjection>(&method_)) check_integrability(f_, j->params);
}

namespace {

Expansion build_expansion(const Remainder& r, CoefficientDiagnostics* diagnostics) {
  if (const auto* j = std::get_if<JacobiProjection>(&r.method())) {
    return jacobi_projection(r.f(), j->params, r.n(), diagnostics);
  }
  return cheb_interpolant(r.f(), r.n());
}

Expansion differentiate(const Remainder& r, const Expansion& e) {
  if (e.family() == Family::Jacobi) return derivative_ladder(e, r.m());
  return chebyshev_derivative(e, r.m());
}

}  // namespace

Approximant::Approximant(const Remainder& r, CoefficientDiagnostics* diagnostics)
    : Approximant(r, build_expansion(r, diagnostics)) {}

Approximant::Approximant(const Remainder& r, Expansion expansion)
    : spec_(r), expansion_(std::move(expansion)), derivative_(Expansion::chebyshev({})) {
  const bool jacobi = is_jacobi(r.method());
  if (jacobi != (expansion_.family() == Family::Jacobi)) {
    throw ValidationError("expansion family does not match the approximation method");
  }
  if (jacobi && !(expansion_.params() == std::get<JacobiProjection>(r.method()).params)) {
    throw ValidationError("expansion parameters do not match the projection");
  }
  if (expansion_.degree() != r.n()) throw ValidationError("expansion degree does not match n");
  derivative_ = differentiate(r, expansion_);
}

double Approximant::remainder(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) throw ValidationError("evaluation point must lie in [-1, 1]");
  return eval_f_derivative(spec_.f(), spec_.m(), x) - eval_expansion(derivative_, x);
}

double remainder_pointwise(const Remainder& r, double x) { return Approximant(r).remainder(x); }

std::vector<double> error_grid(const SingularFunction& f, int grid_size) {
  if (grid_size < 3) throw ValidationError("max_error grid needs at least 3 points");
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(grid_size) + 3);
  for (int i = 0; i < grid_size; ++i) x.push_back(-1.0 + 2.0 * i / (grid_size - 1));
  x.back() = 1.0;
  x.push_back(-1.0);
  x.push_back(1.0);
  x.push_back(f.xi());
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

MaxError max_error(const Approximant& a, int grid_size) {
  const auto grid = error_grid(a.remainder_spec().f(), grid_size);
  MaxError best{-1.0, grid.front()};
  for (double x : grid) {
    const double e = std::abs(a.remainder(x));
    if (e > best.value) best = {e, x};
  }
  return best;
}

MaxError max_error(const Remainder& r, int grid_size) { return max_error(Approximant(r), grid_size); }

}  // namespace specdiff
