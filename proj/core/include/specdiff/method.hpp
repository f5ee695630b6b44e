#pragma once

#include <string>
#include <variant>

#include "specdiff/jacobi.hpp"

namespace specdiff {

/// Orthogonal projection onto polynomials of degree n in the Jacobi family.
struct JacobiProjection {
  JacobiParams params;
};

/// Interpolation at the n+1 Chebyshev-Lobatto points cos(j pi / n).
struct ChebyshevInterpolation {};

using Method = std::variant<JacobiProjection, ChebyshevInterpolation>;

[[nodiscard]] inline bool is_jacobi(const Method& m) noexcept {
  return std::holds_alternative<JacobiProjection>(m);
}

/// Canonical text form, e.g. "jacobi(1,0)" or "cheb-interp".
[[nodiscard]] std::string describe(const Method& method);

}  // namespace specdiff
