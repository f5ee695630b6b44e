#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "specdiff/error.hpp"
#include "specdiff/functions.hpp"
#include "support.hpp"

using namespace specdiff;
using specdiff::testing::centred_diff;
using specdiff::testing::rel_diff;

TEST(ChebSeriesDerivative, SmallCases) {
  EXPECT_TRUE(cheb_series_derivative(std::vector<double>{2.0}).empty());
  EXPECT_EQ(cheb_series_derivative(std::vector<double>{0.0, 1.0}), (std::vector<double>{1.0}));
  EXPECT_EQ(cheb_series_derivative(std::vector<double>{0.0, 0.0, 1.0}), (std::vector<double>{0.0, 4.0}));
}

TEST(ChebSeriesDerivative, MatchesFiniteDifferences) {
  const std::vector<double> c = {0.1, -0.7, 0.3, 0.9, -0.2, 0.05, 0.4};
  const auto d = cheb_series_derivative(c);
  ASSERT_EQ(d.size(), c.size() - 1);
  auto fn = [&](double x) { return cheb_series_eval(c, x); };
  for (double x : {-0.9, -0.2, 0.5, 0.95}) EXPECT_NEAR(cheb_series_eval(d, x), centred_diff(fn, x, 1e-3), 1e-9);
}

TEST(SmoothFactor, ExpMatchesPowerSeries) {
  const auto g = SmoothFactor::exp();
  for (double x = -1.0; x <= 1.0; x += 0.0625) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 30; ++k) {
      term *= x / k;
      sum += term;
    }
    EXPECT_LE(rel_diff(g(x), sum), 2e-15) << x;
    EXPECT_LE(rel_diff(g.derivative(3, x), sum), 1e-12) << x;
  }
}

TEST(SmoothFactor, OneIsConstant) {
  const auto g = SmoothFactor::one();
  EXPECT_TRUE(g.is_constant_one());
  EXPECT_EQ(g(0.3), 1.0);
  EXPECT_EQ(g.derivative(1, 0.3), 0.0);
  EXPECT_EQ(g.describe(), "1");
}

TEST(SmoothFactor, RejectsBadInput) {
  EXPECT_THROW(SmoothFactor(std::vector<double>{}), ValidationError);
  EXPECT_THROW(SmoothFactor(std::vector<double>{1.0, NAN}), ValidationError);
  EXPECT_THROW((void)SmoothFactor::one().derivative(-1, 0.0), ValidationError);
}

TEST(ParseSmoothFactor, AcceptedForms) {
  EXPECT_TRUE(parse_smooth_factor("1").is_constant_one());
  EXPECT_TRUE(parse_smooth_factor("exp") == SmoothFactor::exp());
  const auto g = parse_smooth_factor("cheb:[1, 0.5,-2e-1]");
  ASSERT_EQ(g.coeffs().size(), 3u);
  EXPECT_DOUBLE_EQ(g.coeffs()[2], -0.2);
  EXPECT_TRUE(parse_smooth_factor(g.describe()) == g);
}

TEST(ParseSmoothFactor, RejectsMalformed) {
  for (const char* s : {"", "2", "cos", "cheb:[", "cheb:[1,,2]", "cheb:[1;2]", "cheb:[]"}) {
    EXPECT_THROW((void)parse_smooth_factor(s), ValidationError) << s;
  }
}

TEST(SingularFunction, ValidationFollowsExclusions) {
  EXPECT_THROW(SingularFunction::abs_power(1.5, 2.5), ValidationError);
  EXPECT_THROW(SingularFunction::abs_power(0.2, 4.0), ValidationError);
  EXPECT_THROW(SingularFunction::abs_power(-1.0, 3.0), ValidationError);
  EXPECT_THROW(SingularFunction::abs_power(1.0, 2.0), ValidationError);
  EXPECT_THROW(SingularFunction::trunc_power(1.0, 2.5), ValidationError);
  EXPECT_THROW(SingularFunction::trunc_power(0.0, 2.0), ValidationError);
  EXPECT_THROW(SingularFunction::abs_power(0.0, NAN), ValidationError);
  EXPECT_NO_THROW(SingularFunction::abs_power(0.2, 5.0));
  EXPECT_NO_THROW(SingularFunction::abs_power(-1.0, 2.5));
  EXPECT_NO_THROW(SingularFunction::trunc_power(0.25, 3.0));
}

TEST(EvalF, Examples) {
  EXPECT_EQ(eval_f(SingularFunction::abs_power(0.25, 5.0), 0.25), 0.0);
  EXPECT_EQ(eval_f(SingularFunction::abs_power(0.0, 1.5), -1.0), 1.0);
  EXPECT_EQ(eval_f(SingularFunction::trunc_power(0.25, 3.5), 0.0), 0.0);
  EXPECT_DOUBLE_EQ(eval_f(SingularFunction::trunc_power(0.25, 3.5), 1.0), std::pow(0.75, 3.5));
}

TEST(EvalFDerivative, Examples) {
  const auto f = SingularFunction::abs_power(0.25, 5.0);
  EXPECT_DOUBLE_EQ(eval_f_derivative(f, 1, 1.0), 5.0 * std::pow(0.75, 4));
  EXPECT_EQ(eval_f_derivative(f, 2, 0.25), 0.0);
  EXPECT_DOUBLE_EQ(eval_f_derivative(f, 1, -1.0), -5.0 * std::pow(1.25, 4));
}

TEST(EvalFDerivative, ExpFactorMatchesFiniteDifference) {
  const auto f = SingularFunction::abs_power(0.0, 5.0, SmoothFactor::exp());
  auto fn = [&](double x) { return eval_f(f, x); };
  EXPECT_LE(rel_diff(eval_f_derivative(f, 1, 0.5), centred_diff(fn, 0.5, 1e-5)), 1e-7);
}

TEST(EvalFDerivative, RejectsNonexistentDerivativeAtSingularity) {
  EXPECT_THROW((void)eval_f_derivative(SingularFunction::abs_power(0.0, 1.5), 2, 0.0), ValidationError);
  EXPECT_THROW((void)eval_f_derivative(SingularFunction::abs_power(0.0, 1.5), -1, 0.3), ValidationError);
  EXPECT_EQ(eval_f_derivative(SingularFunction::abs_power(0.0, 1.5), 1, 0.0), 0.0);
}

TEST(EvalFDerivative, TruncatedPowerVanishesLeftOfSupport) {
  const auto f = SingularFunction::trunc_power(0.25, 3.5, SmoothFactor::exp());
  for (int m = 0; m <= 3; ++m) {
    for (double x : {-1.0, -0.5, 0.0, 0.2499}) EXPECT_EQ(eval_f_derivative(f, m, x), 0.0);
  }
}

TEST(EvalFDerivative, LeibnizAgainstFiniteDifferences) {
  const std::vector<SingularFunction> matrix = {
      SingularFunction::abs_power(0.25, 5.0),
      SingularFunction::abs_power(-1.0, 2.5),
      SingularFunction::abs_power(1.0, 2.5, SmoothFactor::exp()),
      SingularFunction::abs_power(1.0 / 3.0, 3.0),
      SingularFunction::abs_power(0.0, 1.5, SmoothFactor(std::vector<double>{1.0, 0.5, -0.25})),
      SingularFunction::trunc_power(0.25, 3.5),
      SingularFunction::trunc_power(-0.4, 4.5, SmoothFactor::exp()),
  };
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> unit(-0.999, 0.999);
  for (const auto& f : matrix) {
    for (int m = 1; m <= 3; ++m) {
      int checked = 0;
      while (checked < 20) {
        const double x = unit(rng);
        if (std::abs(x - f.xi()) <= 0.05) continue;
        const double h = 1e-4;
        if (x - 2 * h < -1.0 || x + 2 * h > 1.0) continue;
        auto prev = [&](double t) { return eval_f_derivative(f, m - 1, t); };
        const double exact = eval_f_derivative(f, m, x);
        const double fd = centred_diff(prev, x, h);
        EXPECT_LE(std::abs(exact - fd), 1e-6 * std::max(1.0, std::abs(exact))) << f.describe() << " m=" << m << " x=" << x;
        ++checked;
      }
    }
  }
}

TEST(DerivativeRegularPart, TimesSingularFactorGivesDerivative) {
  const auto f = SingularFunction::abs_power(0.1, 3.5, SmoothFactor::exp());
  for (int m = 0; m <= 3; ++m) {
    for (double x : {-0.8, 0.05, 0.5}) {
      const double expect = eval_f_derivative(f, m, x);
      const double got = derivative_regular_part(f, m, x) * std::pow(std::abs(x - 0.1), 3.5 - m);
      EXPECT_LE(std::abs(got - expect), 1e-13 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST(IntegerChecks, Classification) {
  EXPECT_TRUE(is_integer(3.0));
  EXPECT_FALSE(is_integer(3.5));
  EXPECT_TRUE(is_even_integer(-2.0));
  EXPECT_FALSE(is_even_integer(5.0));
}
