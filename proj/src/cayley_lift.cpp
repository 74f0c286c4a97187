#include "pickrealize/cayley_lift.hpp"

namespace pickrealize {

template <Coefficient T>
LiftParts<T> split_parts(const RationalMatrixFunction<T>& f) {
  using Traits = CoefficientTraits<T>;
  const T half = Traits::inverse_of(2);
  const T minus_half_i = -(Traits::imaginary_unit() * half);
  const auto& p = f.numerator();
  const auto& q = f.denominator();
  auto p_ref = herm_reflect(p);
  auto q_ref = conj_reflect(q);
  return {(p - p_ref) * minus_half_i, (p + p_ref) * half, (q - q_ref) * minus_half_i, (q + q_ref) * half};
}

template <Coefficient T>
LiftResult<T> lift(const RationalMatrixFunction<T>& f) {
  auto parts = split_parts(f);
  if (parts.q1.is_zero() && parts.q2.is_zero()) throw DegenerateLift("both denominator parts vanish");
  const std::size_t d = f.num_vars() + 1;
  auto z0 = Polynomial<T>::variable(d, 0);
  auto num = z0 * insert_variable(parts.p1, 0) + insert_variable(parts.p2, 0);
  auto den = z0 * insert_variable(parts.q1, 0) + insert_variable(parts.q2, 0);
  return {RationalMatrixFunction<T>(std::move(num), std::move(den)), std::move(parts)};
}

SchurRealization specialize_lift(const SchurRealization& r) {
  if (!r.lift_variable) throw BlockNotFound("realization carries no lift-variable block");
  const std::size_t v = *r.lift_variable;
  if (v >= r.structure.num_vars()) throw BlockNotFound("lift variable index out of range");
  SchurRealization out;
  out.m = r.m;
  out.H = r.H;
  const std::size_t r0 = r.structure.blocks[v];
  const std::size_t off = r.m + r.structure.offset(v);
  for (std::size_t i = 0; i < r0; ++i) out.H(SchurRealization::idx(off + i), SchurRealization::idx(off + i)) += Complex(0.0, 1.0);

  // Move the z0 block next to the constant block.
  std::vector<Eigen::Index> order;
  for (std::size_t i = 0; i < r.m + r.structure.n0; ++i) order.push_back(SchurRealization::idx(i));
  for (std::size_t i = 0; i < r0; ++i) order.push_back(SchurRealization::idx(off + i));
  for (std::size_t i = r.m + r.structure.n0; i < r.m + r.n(); ++i)
    if (i < off || i >= off + r0) order.push_back(SchurRealization::idx(i));
  Eigen::MatrixXcd permuted(out.H.rows(), out.H.cols());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      permuted(SchurRealization::idx(i), SchurRealization::idx(j)) = out.H(order[i], order[j]);
  out.H = std::move(permuted);

  out.structure.n0 = r.structure.n0 + r0;
  for (std::size_t k = 0; k < r.structure.num_vars(); ++k)
    if (k != v) out.structure.blocks.push_back(r.structure.blocks[k]);
  out.hermitian = r0 == 0 && r.hermitian;
  return out;
}

template LiftParts<GaussianRational> split_parts(const RationalMatrixFunction<GaussianRational>&);
template LiftParts<Complex> split_parts(const RationalMatrixFunction<Complex>&);
template LiftResult<GaussianRational> lift(const RationalMatrixFunction<GaussianRational>&);
template LiftResult<Complex> lift(const RationalMatrixFunction<Complex>&);

}  // namespace pickrealize
