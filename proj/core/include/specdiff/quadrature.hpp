#pragma once

#include <memory>
#include <vector>

#include "specdiff/functions.hpp"
#include "specdiff/jacobi.hpp"

namespace specdiff {

/// q-point Gauss rule for the weight (1-x)^alpha (1+x)^beta on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;    ///< strictly increasing
  std::vector<double> weights;  ///< positive
  JacobiParams params;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// Golub-Welsch eigenvalues polished by Newton steps on the recurrence.
[[nodiscard]] QuadratureRule gauss_jacobi_rule(const JacobiParams& params, int q);

/// Shared, memoized variant of gauss_jacobi_rule. Thread-safe.
[[nodiscard]] std::shared_ptr<const QuadratureRule> cached_gauss_jacobi_rule(const JacobiParams& params,
                                                                             int q);

/// Node-count limits of the adaptive coefficient quadrature.
struct CoefficientPolicy {
  int min_nodes = 32;
  int max_nodes = 4096;
  double rel_tol = 1e-13;
};

struct CoefficientDiagnostics {
  bool converged = true;
  int max_nodes_used = 0;
  std::vector<int> unconverged;  ///< indices k that hit max_nodes
};

/// Throws ValidationError when f is not integrable against the weight.
void check_integrability(const SingularFunction& f, const JacobiParams& params);

/// a_k = <f, P_k> / h_k.
[[nodiscard]] double singular_coefficient(const SingularFunction& f, const JacobiParams& params, int k,
                                          CoefficientDiagnostics* diagnostics = nullptr,
                                          const CoefficientPolicy& policy = {});

/// a_0 ... a_n; each entry is bit-identical to singular_coefficient.
[[nodiscard]] Expansion coefficients_batch(const SingularFunction& f, const JacobiParams& params, int n,
                                           CoefficientDiagnostics* diagnostics = nullptr,
                                           const CoefficientPolicy& policy = {});

}  // namespace specdiff
