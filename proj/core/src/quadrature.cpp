#include "specdiff/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

// Recurrence P_{k+1} = (A_k x + B_k) P_k - C_k P_{k-1} in extended precision.
struct LongRecurrence {
  std::vector<long double> a, b, c;
};

LongRecurrence long_recurrence(const JacobiParams& p, int q) {
  const long double al = p.alpha();
  const long double be = p.beta();
  LongRecurrence r{std::vector<long double>(q), std::vector<long double>(q), std::vector<long double>(q)};
  r.a[0] = 0.5L * (al + be + 2.0L);
  r.b[0] = 0.5L * (al - be);
  r.c[0] = 0.0L;
  for (int k = 1; k < q; ++k) {
    const long double s = 2.0L * k + al + be;
    const long double denom = 2.0L * (k + 1) * (k + al + be + 1.0L) * s;
    r.a[k] = (s + 1.0L) * (s + 2.0L) * s / denom;
    r.b[k] = (s + 1.0L) * (al * al - be * be) / denom;
    r.c[k] = 2.0L * (k + al) * (k + be) * (s + 2.0L) / denom;
  }
  return r;
}

// P_q(x) and P_{q-1}(x).
std::pair<long double, long double> eval_top_two(const LongRecurrence& r, int q, long double x) {
  long double prev = 1.0L;
  long double cur = r.a[0] * x + r.b[0];
  for (int k = 1; k < q; ++k) {
    const long double next = (r.a[k] * x + r.b[k]) * cur - r.c[k] * prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

double pow2_at_least(int v) {
  int p = 1;
  while (p < v) p *= 2;
  return p;
}

}  // namespace

QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int q) {
  if (q < 1) throw ValidationError("gauss_jacobi_rule: node count must be >= 1");
  const double a = params.alpha();
  const double b = params.beta();

  Eigen::VectorXd diag(q);
  Eigen::VectorXd sub(std::max(q - 1, 0));
  for (int k = 0; k < q; ++k) {
    if (k == 0) {
      diag[k] = (b - a) / (a + b + 2.0);
    } else {
      const double s = 2.0 * k + a + b;
      diag[k] = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < q; ++k) {
    const double s = 2.0 * k + a + b;
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      v = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(v);
  }

  std::vector<double> nodes(q);
  if (q == 1) {
    nodes[0] = diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolver failed");
    for (int i = 0; i < q; ++i) nodes[i] = solver.eigenvalues()[i];
  }

  // P_q' = (q + a + b + 1)/2 P_{q-1}^{(a+1,b+1)}, which stays large at the extreme nodes
  const auto rec = long_recurrence(params, q);
  const auto drec = long_recurrence(params.shifted(1), std::max(q - 1, 1));
  const long double dscale = 0.5L * (q + static_cast<long double>(a) + b + 1.0L);
  auto derivative = [&](long double x) { return q == 1 ? dscale : dscale * eval_top_two(drec, q - 1, x).first; };
  std::vector<long double> refined(nodes.begin(), nodes.end());
  for (long double& x : refined) {
    for (int it = 0; it < 3; ++it) {
      const long double pq = eval_top_two(rec, q, x).first;
      const long double dp = derivative(x);
      if (dp == 0.0L || !std::isfinite(dp)) break;
      const long double xn = x - pq / dp;
      if (!(xn > -1.0L && xn < 1.0L)) break;
      x = xn;
    }
  }
  std::sort(refined.begin(), refined.end());

  const long double c = std::exp(static_cast<long double>((a + b + 1.0) * std::numbers::ln2 +
                                                          log_gamma_ratio(q + 1.0, a) -
                                                          log_gamma_ratio(q + b + 1.0, a)));
  std::vector<double> weights(q);
  for (int i = 0; i < q; ++i) {
    const long double x = refined[i];
    const long double dp = derivative(x);
    weights[i] = static_cast<double>(c / ((1.0L - x) * (1.0L + x) * dp * dp));
    nodes[i] = static_cast<double>(x);
  }
  return QuadratureRule{std::move(nodes), std::move(weights), params};
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(const JacobiParams& params, int q) {
  using Key = std::tuple<double, double, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const QuadratureRule>> cache;
  const Key key{params.alpha(), params.beta(), q};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(params, q));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

void check_integrability(const SingularFunction& f, const JacobiParams& params) {
  const double s = f.sigma();
  if (f.xi() == -1.0 && f.kind() == SingularKind::AbsPower) {
    if (!(s > -params.beta() - 1.0)) {
      throw ValidationError("integrability requires sigma > -beta-1 when xi = -1");
    }
  } else if (f.xi() == 1.0 && f.kind() == SingularKind::AbsPower) {
    if (!(s > -params.alpha() - 1.0)) {
      throw ValidationError("integrability requires sigma > -alpha-1 when xi = 1");
    }
  } else if (!(s > -1.0)) {
    throw ValidationError("integrability requires sigma > -1 when -1 < xi < 1");
  }
}

namespace {

// One mapped Gauss-Jacobi panel: integral of F(x) P(x) with the panel's
// algebraic factors absorbed in the rule weights.
struct PanelNodes {
  std::vector<double> x;
  std::vector<double> wf;  // weight * scale * F(x)
};

// Panels for the j-times integrated-by-parts integrand
// f^{(j)} w_{alpha+j, beta+j} at q nodes each.
std::vector<PanelNodes> build_panels(const SingularFunction& f, const JacobiParams& params, int j, int q) {
  const double a = params.alpha();
  const double b = params.beta();
  const double s = f.sigma();
  const double xi = f.xi();
  std::vector<PanelNodes> panels;

  auto add_panel = [&](const JacobiParams& rule_params, double scale, auto map, auto extra) {
    const auto rule = cached_gauss_jacobi_rule(rule_params, q);
    PanelNodes p;
    p.x.resize(rule->size());
    p.wf.resize(rule->size());
    for (std::size_t i = 0; i < rule->size(); ++i) {
      const double x = map(rule->nodes[i]);
      p.x[i] = x;
      p.wf[i] = scale * rule->weights[i] * derivative_regular_part(f, j, x) * extra(x);
    }
    panels.push_back(std::move(p));
  };

  if (f.kind() == SingularKind::AbsPower && xi == -1.0) {
    add_panel(JacobiParams(a + j, b + s), 1.0, [](double t) { return t; }, [](double) { return 1.0; });
    return panels;
  }
  if (f.kind() == SingularKind::AbsPower && xi == 1.0) {
    add_panel(JacobiParams(a + s, b + j), 1.0, [](double t) { return t; }, [](double) { return 1.0; });
    return panels;
  }
  if (f.kind() == SingularKind::AbsPower) {
    const double half = 0.5 * (1.0 + xi);
    add_panel(JacobiParams(s - j, b + j), std::pow(half, b + s + 1.0),
              [&](double t) { return -1.0 + half * (1.0 + t); },
              [&](double x) { return std::pow(1.0 - x, a + j); });
  }
  const double half = 0.5 * (1.0 - xi);
  add_panel(JacobiParams(a + j, s - j), std::pow(half, a + s + 1.0),
            [&](double t) { return xi + half * (1.0 + t); },
            [&](double x) { return std::pow(1.0 + x, b + j); });
  return panels;
}

struct PanelSums {
  std::vector<double> sum;
  std::vector<double> mag;
};

PanelSums integrate_degrees(const std::vector<PanelNodes>& panels, const JacobiParams& family, int max_degree) {
  const auto len = static_cast<std::size_t>(max_degree + 1);
  std::vector<RecurrenceCoefficients> rec(len);
  for (std::size_t d = 0; d < len; ++d) rec[d] = jacobi_recurrence(family, static_cast<int>(d));
  PanelSums out{std::vector<double>(len, 0.0), std::vector<double>(len, 0.0)};
  for (const auto& panel : panels) {
    for (std::size_t i = 0; i < panel.x.size(); ++i) {
      const double x = panel.x[i];
      const double w = panel.wf[i];
      double prev = 0.0;
      double cur = 1.0;
      for (std::size_t d = 0; d < len; ++d) {
        const double term = w * cur;
        out.sum[d] += term;
        out.mag[d] += std::abs(term);
        const double next = (rec[d].a * x + rec[d].b) * cur - rec[d].c * prev;
        prev = cur;
        cur = next;
      }
    }
  }
  return out;
}

struct PendingCoefficient {
  int k;
  int level;
  double previous = std::numeric_limits<double>::quiet_NaN();
};

std::vector<double> compute_coefficients(const SingularFunction& f, const JacobiParams& params,
                                         const std::vector<int>& ks, const CoefficientPolicy& policy,
                                         CoefficientDiagnostics* diagnostics) {
  check_integrability(f, params);
  if (policy.min_nodes < 1 || policy.max_nodes < policy.min_nodes) {
    throw ValidationError("invalid coefficient quadrature policy");
  }
  const int top_j = f.sigma() > 0.0 ? static_cast<int>(std::ceil(f.sigma())) : 0;
  const double eps = std::numeric_limits<double>::epsilon();

  std::map<int, std::vector<PendingCoefficient>> groups;
  for (int k : ks) {
    if (k < 0) throw ValidationError("coefficient index must be >= 0");
    const int level = static_cast<int>(std::min<double>(pow2_at_least(std::max(policy.min_nodes, k)),
                                                        policy.max_nodes));
    groups[std::min(k, top_j)].push_back({k, level});
  }

  std::map<int, double> result;
  CoefficientDiagnostics diag;
  for (auto& [j, pending] : groups) {
    const JacobiParams family = params.shifted(j);
    while (!pending.empty()) {
      int q = pending.front().level;
      for (const auto& p : pending) q = std::min(q, p.level);
      int max_degree = 0;
      for (const auto& p : pending) {
        if (p.level == q) max_degree = std::max(max_degree, p.k - j);
      }
      const auto panels = build_panels(f, params, j, q);
      const auto sums = integrate_degrees(panels, family, max_degree);
      diag.max_nodes_used = std::max(diag.max_nodes_used, q);

      std::vector<PendingCoefficient> still;
      for (auto& p : pending) {
        if (p.level != q) {
          still.push_back(p);
          continue;
        }
        const int d = p.k - j;
        double factor = 1.0 / jacobi_norm(params, p.k);
        for (int i = 0; i < j; ++i) factor /= 2.0 * (p.k - i);
        const double value = sums.sum[d] * factor;
        const double noise = 64.0 * eps * sums.mag[d] * std::abs(factor);
        const bool agreed = std::isfinite(p.previous) &&
                            std::abs(value - p.previous) <= std::max(policy.rel_tol * std::abs(value), noise);
        if (agreed) {
          result[p.k] = value;
        } else if (2 * q > policy.max_nodes) {
          result[p.k] = value;
          diag.converged = false;
          diag.unconverged.push_back(p.k);
        } else {
          p.previous = value;
          p.level = 2 * q;
          still.push_back(p);
        }
      }
      pending = std::move(still);
    }
  }
  std::sort(diag.unconverged.begin(), diag.unconverged.end());
  if (diagnostics) *diagnostics = std::move(diag);

  // Even or odd f under the symmetric weight: coefficients of the other parity vanish.
  int vanishing_parity = -1;
  if (f.kind() == SingularKind::AbsPower && f.xi() == 0.0 && params.alpha() == params.beta()) {
    const auto c = f.g().coeffs();
    bool even = true;
    bool odd = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] != 0.0) (i % 2 ? even : odd) = false;
    }
    if (even) vanishing_parity = 1;
    if (odd) vanishing_parity = 0;
  }

  std::vector<double> out;
  out.reserve(ks.size());
  for (int k : ks) out.push_back(k % 2 == vanishing_parity ? 0.0 : result.at(k));
  return out;
}

}  // namespace

double singular_coefficient(const SingularFunction& f, const JacobiParams& params, int k,
                            CoefficientDiagnostics* diagnostics, const CoefficientPolicy& policy) {
  return compute_coefficients(f, params, {k}, policy, diagnostics).front();
}

Expansion coefficients_batch(const SingularFunction& f, const JacobiParams& params, int n,
                             CoefficientDiagnostics* diagnostics, const CoefficientPolicy& policy) {
  if (n < 0) throw ValidationError("coefficients_batch: degree must be >= 0");
  std::vector<int> ks(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) ks[k] = k;
  return Expansion::jacobi(params, compute_coefficients(f, params, ks, policy, diagnostics));
}

}  // namespace specdiff
