#pragma once

#include "pickrealize/polynomial.hpp"
#include "pickrealize/realization_types.hpp"

namespace pickrealize {

// P = P2 + i P1 and q = q2 + i q1 with P1, P2 fixed by Hermitian reflection
// and q1, q2 real.
template <Coefficient T>
struct LiftParts {
  MatrixPolynomial<T> p1, p2;
  Polynomial<T> q1, q2;
};

template <Coefficient T>
struct LiftResult {
  RationalMatrixFunction<T> g;
  LiftParts<T> parts;
  static constexpr std::size_t lift_variable = 0;
};

template <Coefficient T>
LiftParts<T> split_parts(const RationalMatrixFunction<T>& f);

// g(z0, z) = (z0 P1 + P2) / (z0 q1 + q2); variable 0 of g is z0.
template <Coefficient T>
LiftResult<T> lift(const RationalMatrixFunction<T>& f);

// Sets z0 = i in a Schur realization of a lifted function, folding the z0
// block into the constant block.
SchurRealization specialize_lift(const SchurRealization& r);

}  // namespace pickrealize
