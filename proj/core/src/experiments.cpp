#include "specdiff/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "specdiff/error.hpp"
#include "specdiff/parallel.hpp"
#include "specdiff/spectral.hpp"

namespace specdiff {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string series_description(const SingularFunction& f, const Method& method, int m) {
  return "f=" + f.describe() + ";method=" + describe(method) + ";m=" + std::to_string(m);
}

void check_n_list(std::span<const int> n_list) {
  if (n_list.empty()) throw ValidationError("n_list must not be empty");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw ValidationError("n_list must be strictly increasing");
  }
}

}  // namespace

std::string CurveConfig::describe() const { return series_description(f, method, m) + ";x=" + fmt17(x); }

std::uint64_t CurveConfig::hash() const { return fnv1a(describe()); }

std::vector<int> default_n_grid(int n_min, int n_max, int block_width) {
  if (n_min < 1 || n_max < n_min) throw ValidationError("n-range must satisfy 1 <= n_min <= n_max");
  if (block_width < 1) throw ValidationError("block width must be >= 1");
  std::vector<int> starts;
  for (long base = n_min; base <= n_max; base *= 2) {
    for (int q = 0; q < 4; ++q) {
      const long c = base * (4 + q) / 4;
      if (c <= n_max) starts.push_back(static_cast<int>(c));
    }
  }
  if (starts.back() != n_max) starts.push_back(n_max);
  std::vector<int> out;
  for (int c : starts) {
    int lo = std::min(c, n_max - block_width + 1);
    lo = std::max(lo, n_min);
    if (!out.empty()) lo = std::max(lo, out.back() + 1);
    for (int n = lo; n < lo + block_width && n <= n_max; ++n) out.push_back(n);
  }
  return out;
}

std::vector<ErrorCurve> error_curves(const SingularFunction& f, const Method& method, int m,
                                     std::span<const double> xs, std::span<const int> n_list,
                                     CoefficientDiagnostics* diagnostics) {
  check_n_list(n_list);
  for (double x : xs) {
    if (!(x >= -1.0 && x <= 1.0)) throw ValidationError("evaluation point must lie in [-1, 1]");
  }
  const Remainder probe(f, method, n_list.front(), m);

  std::optional<Expansion> full;
  if (const auto* j = std::get_if<JacobiProjection>(&method)) {
    full = coefficients_batch(f, j->params, n_list.back(), diagnostics);
  } else if (diagnostics) {
    *diagnostics = CoefficientDiagnostics{};
  }

  std::vector<std::vector<double>> errs(n_list.size(), std::vector<double>(xs.size()));
  parallel_for(n_list.size(), [&](std::size_t i) {
    const Remainder r(f, method, n_list[i], m);
    const Approximant a = full ? Approximant(r, full->truncated(n_list[i])) : Approximant(r);
    for (std::size_t p = 0; p < xs.size(); ++p) errs[i][p] = std::abs(a.remainder(xs[p]));
  });

  std::vector<ErrorCurve> curves;
  curves.reserve(xs.size());
  for (std::size_t p = 0; p < xs.size(); ++p) {
    ErrorCurve c{CurveConfig{f, method, m, xs[p]}, {}};
    c.samples.reserve(n_list.size());
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      if (!std::isfinite(errs[i][p])) throw ConvergenceError("non-finite error value in curve");
      c.samples.push_back({n_list[i], errs[i][p]});
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

ErrorCurve error_curve(const SingularFunction& f, const Method& method, int m, double x, std::span<const int> n_list,
                       CoefficientDiagnostics* diagnostics) {
  const double xs[] = {x};
  return std::move(error_curves(f, method, m, xs, n_list, diagnostics).front());
}

RateFit fit_rate(const ErrorCurve& curve, int group_width, double floor) {
  if (group_width < 1) throw FitError("group width must be >= 1");
  std::vector<ErrorSample> kept;
  int discarded = 0;
  for (const auto& s : curve.samples) {
    if (s.err > floor) {
      kept.push_back(s);
    } else {
      ++discarded;
    }
  }
  const std::size_t groups = kept.size() / static_cast<std::size_t>(group_width);
  if (groups < 3) {
    throw FitError("rate fit needs at least 3 groups of " + std::to_string(group_width) + " samples above " +
                   fmt17(floor) + " (have " + std::to_string(kept.size()) + " usable of " +
                   std::to_string(curve.samples.size()) + ")");
  }
  std::vector<double> lx, ly;
  for (std::size_t g = 0; g < groups; ++g) {
    const auto first = kept.begin() + static_cast<long>(g * group_width);
    const auto peak = std::max_element(first, first + group_width,
                                       [](const ErrorSample& a, const ErrorSample& b) { return a.err < b.err; });
    lx.push_back(std::log(static_cast<double>(peak->n)));
    ly.push_back(std::log(peak->err));
  }
  const double k = static_cast<double>(groups);
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t g = 0; g < groups; ++g) {
    sxx += (lx[g] - mx) * (lx[g] - mx);
    sxy += (lx[g] - mx) * (ly[g] - my);
  }
  if (sxx == 0.0) throw FitError("rate fit needs distinct degrees");
  const double b = sxy / sxx;
  const double a = my - b * mx;
  double rss = 0.0;
  int inversions = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    const double r = ly[g] - (a + b * lx[g]);
    rss += r * r;
    if (g > 0 && ly[g] > ly[g - 1]) ++inversions;
  }
  RateFit fit{};
  fit.slope = -b;
  fit.intercept = a;
  fit.n_min = kept.front().n;
  fit.n_max = kept[groups * group_width - 1].n;
  fit.peaks_used = static_cast<int>(groups);
  fit.residual = std::sqrt(rss / k);
  fit.discarded = discarded;
  fit.inversions = inversions;
  return fit;
}

double envelope_constant(const ErrorCurve& curve, double kappa) {
  const auto& s = curve.samples;
  if (s.empty()) throw FitError("envelope needs at least one sample");
  std::vector<double> scaled;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i].err >= s[i - 1].err && s[i].err >= s[i + 1].err && s[i].err > 0.0) {
      scaled.push_back(s[i].err * std::pow(static_cast<double>(s[i].n), kappa));
    }
  }
  if (scaled.empty()) {
    for (const auto& e : s) scaled.push_back(e.err * std::pow(static_cast<double>(e.n), kappa));
  }
  std::sort(scaled.begin(), scaled.end());
  const std::size_t h = scaled.size() / 2;
  return scaled.size() % 2 ? scaled[h] : 0.5 * (scaled[h - 1] + scaled[h]);
}

VerificationReport verify_prediction(const SingularFunction& f, const Method& method, int m,
                                     std::span<const double> points, NRange range, double tol,
                                     const VerifyOptions& options, CoefficientDiagnostics* diagnostics) {
  VerificationReport report;
  report.tolerance = tol;
  if (auto chk = assumption_check(f, method, m); !chk) {
    report.assumptions_ok = false;
    report.violation = chk.violation;
    return report;
  }
  const std::vector<int> n_list =
      options.n_list.empty() ? default_n_grid(range.n_min, range.n_max, options.group_width) : options.n_list;
  const auto curves = error_curves(f, method, m, points, n_list, diagnostics);

  bool all = true;
  for (std::size_t p = 0; p < points.size(); ++p) {
    PointCheck pc{};
    pc.x = points[p];
    pc.point_class = classify_point(f, points[p]);
    pc.predicted = kappa(f, method, m, pc.point_class);
    if (std::isinf(pc.predicted)) {
      double worst = 0.0;
      for (const auto& s : curves[p].samples) worst = std::max(worst, s.err);
      pc.difference = 0.0;
      pc.pass = worst <= 1e-12;
      pc.note = "remainder vanishes identically; max sample " + fmt17(worst);
    } else {
      try {
        pc.fit = fit_rate(curves[p], options.group_width, options.floor);
        pc.difference = std::abs(pc.fit->slope - pc.predicted);
        pc.pass = pc.difference <= tol;
        if (pc.fit->inversions > 1) pc.note = std::to_string(pc.fit->inversions) + " envelope inversions";
      } catch (const FitError& e) {
        pc.difference = std::numeric_limits<double>::infinity();
        pc.pass = false;
        pc.note = e.what();
      }
    }
    all = all && pc.pass;
    report.points.push_back(std::move(pc));
  }

  if (options.check_argmax) {
    const auto pred = max_norm_prediction(f, method, m);
    const int n = n_list.back();
    const Remainder r(f, method, n, m);
    std::optional<Approximant> a;
    if (const auto* j = std::get_if<JacobiProjection>(&method)) {
      a.emplace(r, coefficients_batch(f, j->params, n));
    } else {
      a.emplace(r);
    }
    const auto me = max_error(*a, options.argmax_grid);
    ArgmaxCheck ac{n, me.argmax, me.value, classify_point(f, me.argmax), pred.argmax, pred.kappa, false};
    ac.pass = std::find(pred.argmax.begin(), pred.argmax.end(), ac.measured_class) != pred.argmax.end();
    all = all && ac.pass;
    report.argmax = ac;
  }
  report.pass = all;
  return report;
}

Suite figure_suite(int figure_id, int m) {
  switch (figure_id) {
    case 2:
      return {SingularFunction::abs_power(0.25, 5.0), JacobiProjection{JacobiParams(1.0, 0.0)},
              {1.0, -1.0, -0.25, 0.0, 0.25}, {32, 1024}};
    case 3:
      return {SingularFunction::abs_power(1.0 / 3.0, 3.0), ChebyshevInterpolation{},
              {1.0 / 3.0, 2.0 / 3.0, 1.0}, NRange{16, 256}};
    case 4:
      return {SingularFunction::abs_power(-1.0, 2.5), ChebyshevInterpolation{}, {-1.0, 0.2, 1.0},
              m == 1 ? NRange{16, 128} : NRange{16, 256}};
    default:
      throw ValidationError("rate suites exist for figures 2, 3 and 4 (got " + std::to_string(figure_id) + ")");
  }
}

Dataset figure_data(int figure_id, CoefficientDiagnostics* diagnostics) {
  Dataset ds{figure_id, "", {}, {}};
  auto add_series = [&](const std::string& label, const std::string& description) {
    const std::uint64_t h = fnv1a(description);
    ds.series.push_back({label, h, description});
    return h;
  };
  auto add_curves = [&](const Suite& suite, int m) {
    const auto n_list = default_n_grid(suite.range.n_min, suite.range.n_max);
    CoefficientDiagnostics d;
    const auto curves = error_curves(suite.f, suite.method, m, suite.points, n_list, &d);
    if (diagnostics && !d.converged) *diagnostics = d;
    for (const auto& c : curves) {
      const auto h = add_series("m=" + std::to_string(m) + " x=" + fmt17(c.config.x), c.config.describe());
      for (const auto& s : c.samples) ds.rows.push_back({h, s.n, c.config.x, s.err});
    }
  };
  auto add_profile = [&](const SingularFunction& f, const Method& method, int n, int m, const std::string& label) {
    const Remainder r(f, method, n, m);
    CoefficientDiagnostics d;
    const Approximant a(r, &d);
    if (diagnostics && !d.converged) *diagnostics = d;
    const auto h = add_series(label, series_description(f, method, m) + ";n=" + std::to_string(n) + ";x=grid");
    for (double x : error_grid(f, 2049)) ds.rows.push_back({h, n, x, std::abs(a.remainder(x))});
    return a;
  };

  switch (figure_id) {
    case 1: {
      ds.title = "pointwise Jacobi remainders, |x-1/4|^5, alpha=1, beta=0, n=100";
      const auto f = SingularFunction::abs_power(0.25, 5.0);
      const Method method = JacobiProjection{JacobiParams(1.0, 0.0)};
      for (int m = 0; m <= 2; ++m) (void)add_profile(f, method, 100, m, "m=" + std::to_string(m));
      break;
    }
    case 2:
    case 3:
    case 4: {
      ds.title = figure_id == 2   ? "Jacobi remainder decay, |x-1/4|^5, alpha=1, beta=0"
                 : figure_id == 3 ? "Chebyshev interpolation remainder decay, |x-1/3|^3"
                                  : "Chebyshev interpolation remainder decay, (1+x)^{5/2}";
      for (int m = 1; m <= 2; ++m) add_curves(figure_suite(figure_id, m), m);
      break;
    }
    case 5: {
      ds.title = "Legendre remainders and superconvergence points, (1-x)^{5/2} e^x, n=20";
      const auto f = SingularFunction::abs_power(1.0, 2.5, SmoothFactor::exp());
      const JacobiParams legendre = JacobiParams::legendre();
      const Method method = JacobiProjection{legendre};
      for (int m = 0; m <= 1; ++m) {
        const auto a = add_profile(f, method, 20, m, "m=" + std::to_string(m));
        const auto h = add_series("superconvergence m=" + std::to_string(m),
                                  series_description(f, method, m) + ";n=20;x=superconvergence");
        for (const auto& pt : superconv_points(legendre, m, 20, Side::Right)) {
          ds.rows.push_back({h, 20, pt.x, std::abs(a.remainder(pt.x))});
        }
      }
      break;
    }
    default:
      throw ValidationError("figure id must be 1, 2, 3, 4 or 5 (got " + std::to_string(figure_id) + ")");
  }
  return ds;
}

}  // namespace specdiff
