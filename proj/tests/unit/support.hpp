#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>
#include <vector>

namespace specdiff::testing {

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Fourth-order centred difference of fn at x.
inline double centred_diff(const std::function<double(double)>& fn, double x, double h) {
  return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h);
}

/// Adaptive Simpson on [a, b] in long double; the integrand must be smooth on (a, b).
inline long double adaptive_simpson(const std::function<long double(long double)>& fn, long double a, long double b,
                                    long double tol, int depth = 50) {
  struct Impl {
    const std::function<long double(long double)>& f;
    long double run(long double a, long double b, long double fa, long double fm, long double fb, long double whole,
                    long double tol, int depth) const {
      const long double m = (a + b) / 2, lm = (a + m) / 2, rm = (m + b) / 2;
      const long double flm = f(lm), frm = f(rm);
      const long double left = (m - a) / 6 * (fa + 4 * flm + fm);
      const long double right = (b - m) / 6 * (fm + 4 * frm + fb);
      const long double delta = left + right - whole;
      const long double floor = 64 * std::numeric_limits<long double>::epsilon() * (std::fabs(left) + std::fabs(right));
      if (depth <= 0 || std::fabs(delta) <= std::max(15 * tol, floor)) return left + right + delta / 15;
      return run(a, m, fa, flm, fm, left, tol / 2, depth - 1) + run(m, b, fm, frm, fb, right, tol / 2, depth - 1);
    }
  } impl{fn};
  const long double fa = fn(a), fb = fn(b), fm = fn((a + b) / 2);
  return impl.run(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, depth);
}

/// n-point Gauss-Legendre nodes and weights on [-1, 1] in long double.
inline std::pair<std::vector<long double>, std::vector<long double>> gauss_legendre_long(int n) {
  std::vector<long double> x(n), w(n);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < n; ++i) {
    long double z = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0L);
      const long double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-21L) break;
    }
    x[i] = z;
    w[i] = 2.0L / ((1.0L - z * z) * dp * dp);
  }
  return {x, w};
}

/// Integral over [a, b] of a function smooth inside but possibly singular at
/// either end: 24-point Gauss-Legendre on panels graded geometrically toward
/// both ends, interior panels no wider than max_width.
inline long double graded_integral(const std::function<long double(long double)>& fn, long double a, long double b,
                                   long double max_width) {
  static const auto rule = gauss_legendre_long(24);
  auto panel = [&](long double lo, long double hi) {
    long double s = 0.0L;
    const long double c = (lo + hi) / 2, h = (hi - lo) / 2;
    for (std::size_t i = 0; i < rule.first.size(); ++i) s += rule.second[i] * fn(c + h * rule.first[i]);
    return s * h;
  };
  const long double len = b - a;
  const long double edge = std::min(len / 4, max_width);
  long double total = 0.0L;
  // geometric panels [a + edge 2^-(j+1), a + edge 2^-j] and the mirror at b
  for (long double w = edge; w > len * 1e-30L; w /= 2) {
    total += panel(a + w / 2, a + w);
    total += panel(b - w, b - w / 2);
  }
  const long double inner = len - 2 * edge;
  const int pieces = std::max(1, static_cast<int>(std::ceil(inner / max_width)));
  for (int i = 0; i < pieces; ++i) total += panel(a + edge + inner * i / pieces, a + edge + inner * (i + 1) / pieces);
  return total;
}

inline std::mt19937_64 seeded(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace specdiff::testing
