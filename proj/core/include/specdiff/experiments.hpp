#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "specdiff/functions.hpp"
#include "specdiff/method.hpp"
#include "specdiff/quadrature.hpp"
#include "specdiff/theory.hpp"

namespace specdiff {

/// One measured configuration: |R_n^m(x)| for f under a method.
struct CurveConfig {
  SingularFunction f;
  Method method;
  int m;
  double x;

  [[nodiscard]] std::string describe() const;
  /// FNV-1a hash of describe().
  [[nodiscard]] std::uint64_t hash() const;
};

struct ErrorSample {
  int n;
  double err;
};

struct ErrorCurve {
  CurveConfig config;
  std::vector<ErrorSample> samples;  ///< n strictly increasing
};

/// Block width of the rate-suite grids. A block covers about 2 rad of the
/// slowest interior oscillation in the figure suites.
inline constexpr int kSuiteBlockWidth = 8;

/// Blocks of block_width consecutive degrees starting at n_min 2^o {1, 5/4, 3/2, 7/4}
/// (and at n_max), clipped to [n_min, n_max] and strictly increasing.
[[nodiscard]] std::vector<int> default_n_grid(int n_min, int n_max, int block_width = kSuiteBlockWidth);

/// Single-point curve.
[[nodiscard]] ErrorCurve error_curve(const SingularFunction& f, const Method& method, int m, double x,
                                     std::span<const int> n_list, CoefficientDiagnostics* diagnostics = nullptr);

/// Curves at several points sharing one coefficient computation.
[[nodiscard]] std::vector<ErrorCurve> error_curves(const SingularFunction& f, const Method& method, int m,
                                                   std::span<const double> xs, std::span<const int> n_list,
                                                   CoefficientDiagnostics* diagnostics = nullptr);

struct RateFit {
  double slope;      ///< positive decay rate
  double intercept;  ///< log e* = intercept - slope log n*
  int n_min;
  int n_max;
  int peaks_used;
  double residual;   ///< rms of the log fit
  int discarded;     ///< samples at or below the floor
  int inversions;    ///< increases between consecutive group maxima
};

/// Raised when a curve has too few usable samples for a fit.
class FitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kErrorFloor = 1e-12;

/// Least-squares slope of log(group max) vs log(n) over consecutive groups of
/// group_width samples above the floor.
[[nodiscard]] RateFit fit_rate(const ErrorCurve& curve, int group_width = 5, double floor = kErrorFloor);

/// Envelope constant: median over local maxima of err * n^kappa.
[[nodiscard]] double envelope_constant(const ErrorCurve& curve, double kappa);

struct NRange {
  int n_min;
  int n_max;
};

struct VerifyOptions {
  int group_width = kSuiteBlockWidth;
  double floor = kErrorFloor;
  int argmax_grid = 2049;
  bool check_argmax = true;
  /// Explicit degrees; default_n_grid(range) when empty.
  std::vector<int> n_list;
};

struct PointCheck {
  double x;
  PointClass point_class;
  double predicted;
  std::optional<RateFit> fit;
  double difference;
  bool pass;
  std::string note;
};

struct ArgmaxCheck {
  int n;
  double measured_x;
  double measured_value;
  PointClass measured_class;
  std::vector<PointClass> predicted;
  double predicted_kappa;
  bool pass;
};

struct VerificationReport {
  bool assumptions_ok = true;
  std::string violation;
  std::vector<PointCheck> points;
  std::optional<ArgmaxCheck> argmax;
  bool pass = false;
  double tolerance = 0.3;
};

/// Fits measured slopes at each point and compares them with kappa; also
/// compares the measured max-error location with max_norm_prediction.
/// Assumption failures are reported in the result, not thrown.
[[nodiscard]] VerificationReport verify_prediction(const SingularFunction& f, const Method& method, int m,
                                                   std::span<const double> points, NRange range, double tol = 0.3,
                                                   const VerifyOptions& options = {},
                                                   CoefficientDiagnostics* diagnostics = nullptr);

/// Standard configuration of a rate-verification suite.
struct Suite {
  SingularFunction f;
  Method method;
  std::vector<double> points;
  NRange range;
};

/// Suites for figures 2, 3 and 4 at derivative order m.
[[nodiscard]] Suite figure_suite(int figure_id, int m);

struct DatasetSeries {
  std::string label;
  std::uint64_t config;
  std::string description;
};

struct DatasetRow {
  std::uint64_t config;
  int n;
  double x;
  double err;
};

struct Dataset {
  int figure;
  std::string title;
  std::vector<DatasetSeries> series;
  std::vector<DatasetRow> rows;
};

/// Data behind figures 1-5.
[[nodiscard]] Dataset figure_data(int figure_id, CoefficientDiagnostics* diagnostics = nullptr);

}  // namespace specdiff
