#include "specdiff/theory.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "specdiff/error.hpp"

namespace specdiff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool nearly_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

double omega(double a, double b, double x) { return std::pow(1.0 - x, a) * std::pow(1.0 + x, b); }

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

PointClass canonical(const SingularFunction& f, PointClass pc) {
  if (f.endpoint_singularity()) {
    if (pc == PointClass::EndpointMinus) return f.xi() == -1.0 ? PointClass::AtSingularity : PointClass::MirrorEndpoint;
    if (pc == PointClass::EndpointPlus) return f.xi() == 1.0 ? PointClass::AtSingularity : PointClass::MirrorEndpoint;
    return pc;
  }
  if (pc == PointClass::MirrorEndpoint) {
    throw ValidationError("MirrorEndpoint is only defined when xi = -1 or xi = 1");
  }
  return pc;
}

std::vector<PointClass> valid_classes(const SingularFunction& f) {
  if (f.endpoint_singularity()) {
    return {PointClass::AtSingularity, PointClass::MirrorEndpoint, PointClass::Smooth};
  }
  return {PointClass::EndpointMinus, PointClass::EndpointPlus, PointClass::AtSingularity, PointClass::Smooth};
}

// Interior-singularity coefficient data: a_k ~ C cos(k theta - chi) / k^{sigma+1/2}.
struct InteriorData {
  double C;
  double chi;
  double theta;
};

double interior_prefactor(const SingularFunction& f, const JacobiParams& p) {
  const double s = f.sigma();
  const double xi = f.xi();
  return std::tgamma(s + 1.0) * std::pow(1.0 - xi, 0.5 * (s + p.alpha()) + 0.25) *
         std::pow(1.0 + xi, 0.5 * (s + p.beta()) + 0.25) / std::sqrt(kPi) * f.g()(xi);
}

InteriorData interior_data(const SingularFunction& f, const JacobiParams& p) {
  const double s = f.sigma();
  const double base = interior_prefactor(f, p);
  const double theta = std::acos(f.xi());
  if (f.kind() == SingularKind::AbsPower) {
    const double A = base / std::pow(2.0, 0.5 * (p.alpha() + p.beta() - 3.0)) * std::cos(0.5 * (s + 1.0) * kPi);
    return {A, psi_phase(p, f.xi()), theta};
  }
  const double T = base / std::pow(2.0, 0.5 * (p.alpha() + p.beta() - 1.0));
  return {T, trunc_phase(p, s, f.xi()), theta};
}

double inverse_gamma_neg_sigma(double s) {
  if (is_integer(-s) && -s <= 0.0) {
    throw ValidationError("Gamma(-sigma) has a pole: sigma must not be a nonnegative integer at xi = +-1");
  }
  return 1.0 / std::tgamma(-s);
}

double endpoint_constant(const SingularFunction& f, const JacobiParams& p) {
  const double s = f.sigma();
  const double ab = f.xi() == -1.0 ? p.beta() : p.alpha();
  return std::pow(2.0, s + 1.0) * std::tgamma(s + ab + 1.0) * inverse_gamma_neg_sigma(s) * f.g()(f.xi());
}

}  // namespace

std::string describe(const Method& method) {
  if (const auto* j = std::get_if<JacobiProjection>(&method)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "jacobi(%.17g,%.17g)", j->params.alpha(), j->params.beta());
    return buf;
  }
  return "cheb-interp";
}

std::string_view to_string(PointClass pc) noexcept {
  switch (pc) {
    case PointClass::EndpointMinus: return "EndpointMinus";
    case PointClass::EndpointPlus: return "EndpointPlus";
    case PointClass::AtSingularity: return "AtSingularity";
    case PointClass::MirrorEndpoint: return "MirrorEndpoint";
    case PointClass::Smooth: return "Smooth";
  }
  return "Unknown";
}

PointClass classify_point(const SingularFunction& f, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw ValidationError("evaluation point must lie in [-1, 1]");
  if (x == f.xi()) return PointClass::AtSingularity;
  if (f.endpoint_singularity() && x == -f.xi()) return PointClass::MirrorEndpoint;
  if (x == -1.0) return PointClass::EndpointMinus;
  if (x == 1.0) return PointClass::EndpointPlus;
  return PointClass::Smooth;
}

double psi_phase(const JacobiParams& p, double x) {
  return (2.0 * p.alpha() + 1.0) * kPi / 4.0 - 0.5 * (p.alpha() + p.beta() + 1.0) * std::acos(x);
}

double trunc_phase(const JacobiParams& p, double sigma, double x) {
  return (0.5 * (sigma + p.alpha()) + 0.75) * kPi - 0.5 * (p.alpha() + p.beta() + 1.0) * std::acos(x);
}

// ---------------------------------------------------------------------------

double CoefficientAsymptotics::value(int k) const {
  const double envelope_k = constant / std::pow(static_cast<double>(k), decay);
  if (interior) return envelope_k * std::cos(k * theta - phase);
  return alternating ? sign_pow(k) * envelope_k : envelope_k;
}

double CoefficientAsymptotics::envelope() const { return std::abs(constant); }

CoefficientAsymptotics coeff_asymptotics(const SingularFunction& f, const JacobiParams& p) {
  const double s = f.sigma();
  if (!f.endpoint_singularity()) {
    if (!(s > -1.0)) throw ValidationError("sigma > -1 required for an interior singularity");
    const auto d = interior_data(f, p);
    return {d.C, s + 0.5, true, d.theta, d.chi, false};
  }
  if (f.xi() == -1.0) {
    if (!(s > -p.beta() - 1.0)) throw ValidationError("sigma > -beta-1 required when xi = -1");
    return {endpoint_constant(f, p), 2.0 * s + p.beta() + 1.0, false, 0.0, 0.0, true};
  }
  if (!(s > -p.alpha() - 1.0)) throw ValidationError("sigma > -alpha-1 required when xi = 1");
  return {endpoint_constant(f, p), 2.0 * s + p.alpha() + 1.0, false, 0.0, 0.0, false};
}

double coeff_asymptotic_leading(const SingularFunction& f, const JacobiParams& p, int k) {
  if (k < 1) throw ValidationError("coefficient asymptotics require k >= 1");
  return coeff_asymptotics(f, p).value(k);
}

// ---------------------------------------------------------------------------

namespace {

bool multiple_of_two_pi(double x) { return std::abs(std::remainder(x, 2.0 * kPi)) < 1e-12; }

}  // namespace

double psi_sum(PsiVariant variant, double nu, double x, long n, const PsiCutoff& cutoff) {
  if (n < 0) throw ValidationError("psi_sum: n must be >= 0");
  const bool zero = multiple_of_two_pi(x);
  if (zero && variant == PsiVariant::S) return 0.0;
  if (zero && !(nu > 0.0)) throw ValidationError("psi_sum diverges for x = 0 (mod 2 pi) unless nu > 0");
  const double s = nu + 1.0;
  const long K = std::max({cutoff.min_terms, cutoff.terms_per_n * n, n + 1});

  // Neumaier summation from the small end.
  double sum = 0.0;
  double comp = 0.0;
  for (long k = K; k > n; --k) {
    const double kd = static_cast<double>(k);
    const double term = (variant == PsiVariant::C ? std::cos(kd * x) : std::sin(kd * x)) * std::exp(-s * std::log(kd));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  sum += comp;

  const double Kd = static_cast<double>(K);
  if (zero) {
    // Euler-Maclaurin tail of sum_{k>K} k^{-s}.
    return sum + std::pow(Kd, -nu) / nu - 0.5 * std::pow(Kd, -s) + s / 12.0 * std::pow(Kd, -s - 1.0);
  }
  // Summation by parts: sum_{k>=N} a_k z^k with differences of a_k = k^{-s}.
  const double N = Kd + 1.0;
  const std::complex<double> z = std::polar(1.0, x);
  const std::complex<double> w = 1.0 / (1.0 - z);
  const std::complex<double> zN = std::polar(1.0, std::remainder(N * x, 2.0 * kPi));
  const double aN = std::exp(-s * std::log(N));
  const double d1 = std::expm1(-s * std::log1p(1.0 / N));
  const double d2 = std::expm1(-s * std::log1p(2.0 / N));
  const double delta1 = aN * d1;
  const double delta2 = aN * (d2 - 2.0 * d1);
  const std::complex<double> tail = zN * w * (aN + z * w * (delta1 + z * w * delta2));
  return sum + (variant == PsiVariant::C ? tail.real() : tail.imag());
}

double psi_asymptotic(PsiVariant variant, double nu, double x, long n) {
  if (n < 1) throw ValidationError("psi_asymptotic: n must be >= 1");
  const double nd = static_cast<double>(n);
  if (multiple_of_two_pi(x)) {
    if (variant == PsiVariant::S) return 0.0;
    if (!(nu > 0.0)) throw ValidationError("psi_asymptotic diverges for x = 0 (mod 2 pi) unless nu > 0");
    return std::pow(nd, -nu) / nu - 0.5 * std::pow(nd, -nu - 1.0);
  }
  const double scale = std::pow(nd, -nu - 1.0) / (2.0 * std::sin(0.5 * x));
  if (variant == PsiVariant::C) return -std::sin((nd + 0.5) * x) * scale;
  return std::cos((nd + 0.5) * x) * scale;
}

// ---------------------------------------------------------------------------

AssumptionResult assumption_check(const SingularFunction& f, const Method& method, int m) {
  const double s = f.sigma();
  auto fail = [](std::string name) { return AssumptionResult{false, std::move(name)}; };
  if (m < 0) return fail("m ≥ 0");
  if (!(s > 0.0)) return fail("σ > 0");
  const bool interior = !f.endpoint_singularity();

  if (f.kind() == SingularKind::TruncPower) {
    if (!is_jacobi(method)) return fail("truncated powers require Jacobi projection");
    const auto& p = std::get<JacobiProjection>(method).params;
    if (is_even_integer(s)) return fail("σ not an even integer");
    if (!(m < s)) return fail("m < σ");
    if (!(m < (s + 0.5 - p.beta()) / 2.0)) return fail("m < (σ+1/2−β)/2");
    if (!(m < (s + 0.5 - p.alpha()) / 2.0)) return fail("m < (σ+1/2−α)/2");
    return {};
  }

  if (!is_jacobi(method)) {
    if (interior) {
      if (!(m < s)) return fail("m < σ");
      if (!(m < 1.0 + s / 2.0)) return fail("m < 1+σ/2");
    } else if (!(m < s)) {
      return fail("m < σ");
    }
    return {};
  }

  const auto& p = std::get<JacobiProjection>(method).params;
  const double a = p.alpha();
  const double b = p.beta();
  if (interior) {
    if (is_even_integer(s)) return fail("σ not an even integer");
    if (!(m < s)) return fail("m < σ");
    if (!(m < (s - a + 0.5) / 2.0)) return fail("m < (σ−α+1/2)/2");
    if (!(m < (s - b + 0.5) / 2.0)) return fail("m < (σ−β+1/2)/2");
    return {};
  }
  if (is_integer(s)) return fail("σ not an integer");
  if (f.xi() == -1.0) {
    if (!(m < s + std::min(0.0, (b - a + 1.0) / 2.0))) return fail("m < σ + min{0, (β−α+1)/2}");
  } else if (!(m < s + std::min(0.0, (a - b + 1.0) / 2.0))) {
    return fail("m < σ + min{0, (α−β+1)/2}");
  }
  return {};
}

double kappa(const SingularFunction& f, const Method& method, int m, PointClass pc) {
  if (auto chk = assumption_check(f, method, m); !chk) throw ValidationError("assumption violated: " + chk.violation);
  pc = canonical(f, pc);
  const double s = f.sigma();

  if (!is_jacobi(method)) {
    if (!f.endpoint_singularity()) {
      switch (pc) {
        case PointClass::AtSingularity: return s - m;
        case PointClass::Smooth: return s + 1.0 - m;
        default: return m == 0 ? kInf : s + 2.0 - 2.0 * m;
      }
    }
    switch (pc) {
      case PointClass::Smooth: return 2.0 * s + 1.0 - m;
      case PointClass::AtSingularity: return m == 0 ? kInf : 2.0 * s - 2.0 * m;
      default: return m == 0 ? kInf : 2.0 * s + 2.0 - 2.0 * m;
    }
  }

  const auto& p = std::get<JacobiProjection>(method).params;
  const double a = p.alpha();
  const double b = p.beta();
  if (!f.endpoint_singularity()) {
    switch (pc) {
      case PointClass::EndpointMinus: return s + 0.5 - b - 2.0 * m;
      case PointClass::EndpointPlus: return s + 0.5 - a - 2.0 * m;
      case PointClass::Smooth: return s + 1.0 - m;
      default: break;
    }
    if (f.kind() == SingularKind::TruncPower) return is_even_integer(m - s) ? s + 1.0 - m : s - m;
    return m % 2 == 1 ? s + 1.0 - m : s - m;
  }
  const double near = f.xi() == -1.0 ? b : a;  // parameter at the singular endpoint
  const double far = f.xi() == -1.0 ? a : b;
  switch (pc) {
    case PointClass::AtSingularity: return 2.0 * s - 2.0 * m;
    case PointClass::MirrorEndpoint: return 2.0 * s + near - far + 1.0 - 2.0 * m;
    default: return 2.0 * s + near + 1.5 - m;
  }
}

namespace {

MaxNormPrediction min_over_classes(const SingularFunction& f, const Method& method, int m) {
  MaxNormPrediction out{kInf, {}};
  for (PointClass pc : valid_classes(f)) out.kappa = std::min(out.kappa, kappa(f, method, m, pc));
  for (PointClass pc : valid_classes(f)) {
    if (nearly_equal(kappa(f, method, m, pc), out.kappa)) out.argmax.push_back(pc);
  }
  return out;
}

}  // namespace

MaxNormPrediction max_norm_prediction(const SingularFunction& f, const Method& method, int m) {
  if (auto chk = assumption_check(f, method, m); !chk) throw ValidationError("assumption violated: " + chk.violation);
  const double s = f.sigma();

  if (!is_jacobi(method)) {
    auto out = min_over_classes(f, method, m);
    if (f.kind() == SingularKind::AbsPower) {
      if (!f.endpoint_singularity()) {
        out.kappa = s - std::max<double>(m, 2 * m - 2);
      } else if (m >= 1) {
        out.kappa = 2.0 * s - 2.0 * m;
      }
    }
    return out;
  }
  if (f.kind() == SingularKind::TruncPower) return min_over_classes(f, method, m);

  const auto& p = std::get<JacobiProjection>(method).params;
  const double a = p.alpha();
  const double b = p.beta();
  using PC = PointClass;
  if (!f.endpoint_singularity()) {
    const double lead = m % 2 == 0 ? m : m - 1;
    const double k = s - std::max({lead, 2.0 * m + a - 0.5, 2.0 * m + b - 0.5});
    if (m == 0) {
      if (std::max(a, b) < 0.5) return {k, {PC::AtSingularity}};
      if (b > std::max(a, 0.5)) return {k, {PC::EndpointMinus}};
      if (a > std::max(b, 0.5)) return {k, {PC::EndpointPlus}};
      return {k, min_over_classes(f, method, m).argmax};
    }
    if (b > a) return {k, {PC::EndpointMinus}};
    if (a > b) return {k, {PC::EndpointPlus}};
    return {k, {PC::EndpointMinus, PC::EndpointPlus}};
  }
  const double near = f.xi() == -1.0 ? b : a;
  const double far = f.xi() == -1.0 ? a : b;
  const double k = 2.0 * s - 2.0 * m - std::max(0.0, far - near - 1.0);
  if (far < near + 1.0) return {k, {PC::AtSingularity}};
  if (far > near + 1.0) return {k, {PC::MirrorEndpoint}};
  return {k, {PC::AtSingularity, PC::MirrorEndpoint}};
}

// ---------------------------------------------------------------------------

namespace {

struct LeadingTermFull {
  LeadingTerm term;
  std::optional<Phase> phase;
};

LeadingTermFull leading_term_full(const SingularFunction& f, const JacobiParams& p, int m, double x, int n) {
  const Method method = JacobiProjection{p};
  if (auto chk = assumption_check(f, method, m); !chk) throw ValidationError("assumption violated: " + chk.violation);
  if (n < 1) throw ValidationError("leading_term: n must be >= 1");
  const PointClass pc = classify_point(f, x);
  const double s = f.sigma();
  const double a = p.alpha();
  const double b = p.beta();
  const double nd = n;
  const double kap = kappa(f, method, m, pc);
  const double decay = std::pow(nd, -kap);

  if (!f.endpoint_singularity()) {
    const auto d = interior_data(f, p);
    const double th = d.theta;
    switch (pc) {
      case PointClass::EndpointMinus: {
        const double c = d.C / (std::ldexp(std::tgamma(m + b + 1.0), m + 1) * std::cos(0.5 * th));
        const double v = sign_pow(n + m + 1) * c * std::cos(d.chi - (nd + 0.5) * th) * decay;
        return {{v, std::abs(c), kap}, Phase{kPi - th, d.chi - 0.5 * th + (m + 1) * kPi}};
      }
      case PointClass::EndpointPlus: {
        const double c = d.C / (std::ldexp(std::tgamma(m + a + 1.0), m + 1) * std::sin(0.5 * th));
        const double v = c * std::sin(d.chi - (nd + 0.5) * th) * decay;
        return {{v, std::abs(c), kap}, Phase{-th, d.chi - 0.5 * th - 0.5 * kPi}};
      }
      case PointClass::AtSingularity: {
        const double P = std::pow(2.0, 0.5 * (a + b + 1.0)) * d.C /
                         std::sqrt(kPi * omega(m + a + 0.5, m + b + 0.5, f.xi()));
        const bool vanishing = f.kind() == SingularKind::AbsPower ? (m % 2 == 1) : is_even_integer(m - s);
        if (!vanishing) {
          const double c = P * std::cos(d.chi - psi_phase(p, f.xi()) - 0.5 * m * kPi) / (2.0 * (s - m));
          return {{c * decay, std::abs(c), kap}, std::nullopt};
        }
        const double arg0 = d.chi + psi_phase(p, f.xi()) + 0.5 * m * kPi;
        const double c = P / (4.0 * std::sin(th));
        const double v = c * std::sin(arg0 - (2.0 * nd + 1.0) * th) * decay;
        return {{v, std::abs(c), kap}, Phase{-2.0 * th, arg0 - th - 0.5 * kPi}};
      }
      default: {
        const double tx = std::acos(x);
        const double phi_p = 0.5 * (tx + th);
        const double phi_m = 0.5 * (tx - th);
        if (std::abs(std::sin(phi_p)) < 1e-8 || std::abs(std::sin(phi_m)) < 1e-8) {
          throw ValidationError("leading_term: x is too close to a degenerate phase point");
        }
        const double P = std::pow(2.0, 0.5 * (a + b + 1.0)) * d.C / std::sqrt(kPi * omega(m + a + 0.5, m + b + 0.5, x));
        const double px = psi_phase(p, x);
        const double t1 = std::sin(d.chi + px + 0.5 * m * kPi - (2.0 * nd + 1.0) * phi_p) / std::sin(phi_p);
        const double t2 = std::sin(d.chi - px - 0.5 * m * kPi + (2.0 * nd + 1.0) * phi_m) / std::sin(phi_m);
        const double amp = 0.25 * std::abs(P) * (1.0 / std::abs(std::sin(phi_p)) + 1.0 / std::abs(std::sin(phi_m)));
        return {{0.25 * P * (t1 - t2) * decay, amp, kap}, std::nullopt};
      }
    }
  }

  const double B = endpoint_constant(f, p);
  const bool left = f.xi() == -1.0;
  switch (pc) {
    case PointClass::AtSingularity: {
      const double par = left ? b : a;
      const double sgn = left ? sign_pow(m) : 1.0;
      const double c = sgn * B / (std::ldexp(std::tgamma(par + m + 1.0), m) * (2.0 * s - 2.0 * m));
      return {{c * decay, std::abs(c), kap}, std::nullopt};
    }
    case PointClass::MirrorEndpoint: {
      const double par = left ? a : b;
      const double sgn = left ? sign_pow(n + 1) : sign_pow(m + n + 1);
      const double c = B / std::ldexp(std::tgamma(par + m + 1.0), m + 1);
      return {{sgn * c * decay, std::abs(c), kap}, Phase{kPi, left ? kPi : (m + 1) * kPi}};
    }
    default: {
      const double tx = std::acos(x);
      const double base = std::pow(2.0, 0.5 * (a + b + 1.0) - 1.0) * B /
                          std::sqrt(kPi * omega(m + a + 0.5, m + b + 0.5, x));
      const double arg = psi_phase(p, x) + 0.5 * m * kPi - (nd + 0.5) * tx;
      if (left) {
        const double c = base / std::cos(0.5 * tx);
        const double v = sign_pow(n + 1) * c * std::cos(arg) * decay;
        return {{v, std::abs(c), kap}, Phase{kPi - tx, psi_phase(p, x) + 0.5 * m * kPi - 0.5 * tx + kPi}};
      }
      const double c = base / std::sin(0.5 * tx);
      return {{c * std::sin(arg) * decay, std::abs(c), kap},
              Phase{-tx, psi_phase(p, x) + 0.5 * m * kPi - 0.5 * tx - 0.5 * kPi}};
    }
  }
}

}  // namespace

LeadingTerm leading_term(const SingularFunction& f, const JacobiParams& params, int m, double x, int n) {
  return leading_term_full(f, params, m, x, n).term;
}

RatePrediction rate_prediction(const SingularFunction& f, const Method& method, int m, double x) {
  RatePrediction out{kappa(f, method, m, classify_point(f, x)), std::nullopt, std::nullopt};
  if (const auto* j = std::get_if<JacobiProjection>(&method)) {
    try {
      const auto full = leading_term_full(f, j->params, m, x, 1);
      out.amplitude = full.term.amplitude;
      out.phase = full.phase;
    } catch (const ValidationError&) {
      // degenerate phase point: exponent only
    }
  }
  return out;
}

double bernstein_constant(double sigma) {
  return 2.0 * std::tgamma(sigma) / kPi * std::abs(std::sin(0.5 * sigma * kPi));
}

double trunc_power_constant(double sigma, double xi) {
  return std::pow(1.0 - xi * xi, 0.5 * sigma) * std::tgamma(sigma) / kPi * std::abs(std::sin(0.5 * sigma * kPi));
}

// ---------------------------------------------------------------------------

LebesgueComparison lebesgue_comparison(const SingularFunction& f, const JacobiParams& params) {
  const double s = f.sigma();
  LebesgueComparison out{};
  out.best_exponent = f.endpoint_singularity() ? 2.0 * s : s;
  const double top = std::max(params.alpha(), params.beta());
  if (top > -0.5) {
    out.lebesgue_growth = top + 0.5;
  } else {
    out.lebesgue_growth = 0.0;
    out.log_growth = top == -0.5;
  }
  out.lebesgue_exponent = out.best_exponent - out.lebesgue_growth;
  out.actual_exponent = max_norm_prediction(f, JacobiProjection{params}, 0).kappa;
  return out;
}

std::string to_rational_string(double v, long max_denominator) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  const bool neg = v < 0.0;
  double x = std::abs(v);
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // convergents h/k
  double r = x;
  for (int it = 0; it < 40; ++it) {
    const double a = std::floor(r);
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_denominator) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12 * std::max(1.0, x)) break;
    const double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  std::string out = neg && h1 != 0 ? "-" : "";
  out += std::to_string(h1);
  if (k1 != 1) out += "/" + std::to_string(k1);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<SuperconvPoint> superconv_points(const JacobiParams& p, int m, int n, Side side) {
  if (n < 1) throw ValidationError("superconv_points: n must be >= 1");
  if (m < 0) throw ValidationError("superconv_points: m must be >= 0");
  const double denom = n + 1.0 + 0.5 * (p.alpha() + p.beta());
  const double c = (2.0 * p.alpha() + 1.0) * kPi / 4.0 + 0.5 * m * kPi + (side == Side::Left ? 0.5 * kPi : 0.0);
  std::vector<SuperconvPoint> out;
  const int j_min = static_cast<int>(std::floor(-c / kPi)) - 1;
  for (int j = j_min;; ++j) {
    const double theta = (c + j * kPi) / denom;
    if (theta >= kPi) break;
    if (theta > 0.0) out.push_back({j, theta, std::cos(theta)});
  }
  return out;
}

double superconv_residual_interior(const SingularFunction& f, const JacobiParams& p, int m, int n, double x) {
  if (f.endpoint_singularity()) throw ValidationError("interior superconvergence requires -1 < xi < 1");
  if (!(x > -1.0 && x < 1.0) || x == f.xi()) throw ValidationError("x must lie in (-1, 1) and differ from xi");
  const double chi = f.kind() == SingularKind::AbsPower ? psi_phase(p, f.xi()) : trunc_phase(p, f.sigma(), f.xi());
  const double th = std::acos(f.xi());
  const double tx = std::acos(x);
  const double phi_p = 0.5 * (tx + th);
  const double phi_m = 0.5 * (tx - th);
  const double px = psi_phase(p, x);
  return std::sin(chi + px + 0.5 * m * kPi - (2.0 * n + 1.0) * phi_p) / std::sin(phi_p) -
         std::sin(chi - px - 0.5 * m * kPi + (2.0 * n + 1.0) * phi_m) / std::sin(phi_m);
}

std::vector<InteriorRoot> superconv_roots_interior(const SingularFunction& f, const JacobiParams& p, int m, int n,
                                                   int grid) {
  if (grid < 2) throw ValidationError("root grid needs at least 2 cells");
  const double th_xi = std::acos(f.xi());
  auto E = [&](double theta) { return superconv_residual_interior(f, p, m, n, std::cos(theta)); };
  std::vector<InteriorRoot> roots;
  double t0 = kPi / grid;
  double e0 = E(t0);
  for (int i = 2; i < grid; ++i) {
    const double t1 = kPi * i / grid;
    const double e1 = E(t1);
    const bool straddles_pole = t0 <= th_xi && th_xi <= t1;
    if (!straddles_pole && e0 * e1 <= 0.0) {
      double lo = t0, hi = t1, elo = e0;
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double em = E(mid);
        if (em == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((em < 0.0) == (elo < 0.0)) {
          lo = mid;
          elo = em;
        } else {
          hi = mid;
        }
      }
      const double theta = 0.5 * (lo + hi);
      if (roots.empty() || theta - roots.back().theta > 1e-12) {
        roots.push_back({theta, std::cos(theta), E(theta)});
      }
    }
    t0 = t1;
    e0 = e1;
  }
  return roots;
}

}  // namespace specdiff
