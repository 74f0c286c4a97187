#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pickrealize/polynomial.hpp"

namespace pickrealize {

// Records how the fresh variables of a reduced function map back onto the
// original ones. groups[j] lists the fresh variables standing in for z_j.
struct ReductionPlan {
  std::vector<int> degrees;
  VariableGroups groups;
  std::size_t fresh_count = 0;

  bool trivial() const;
  // Original variable owning each fresh variable.
  std::vector<std::size_t> owners() const;
};

long binomial(long n, long k);

// sigma_k in n_vars variables.
template <Coefficient T>
Polynomial<T> elementary_symmetric(std::size_t k, std::size_t n_vars);

// Replaces z_var by n fresh variables placed at positions var..var+n-1, each
// power z_var^k becoming binom(n,k)^{-1} sigma_k(fresh).
template <Coefficient T>
RationalMatrixFunction<T> reduce_variable(const RationalMatrixFunction<T>& f, std::size_t var, std::size_t n);

template <Coefficient T>
std::pair<RationalMatrixFunction<T>, ReductionPlan> reduce_to_multi_affine(const RationalMatrixFunction<T>& f);

template <Coefficient T>
RationalMatrixFunction<T> restore(const RationalMatrixFunction<T>& reduced, const ReductionPlan& plan) {
  return identify_variables(reduced, plan.groups);
}

}  // namespace pickrealize
