#include "pickrealize/degree_reduction.hpp"

#include <algorithm>

namespace pickrealize {

bool ReductionPlan::trivial() const {
  return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.size() == 1; });
}

std::vector<std::size_t> ReductionPlan::owners() const {
  std::vector<std::size_t> owner(fresh_count, 0);
  for (std::size_t j = 0; j < groups.size(); ++j)
    for (std::size_t v : groups[j]) owner[v] = j;
  return owner;
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// Calls visit(mask) for every k-subset of {0..n-1}.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    visit(mask);
  } while (std::prev_permutation(mask.begin(), mask.end()));
}

Exponent spread_exponent(const Exponent& e, std::size_t var, const std::vector<bool>& mask) {
  std::vector<int> pw;
  pw.reserve(e.size() - 1 + mask.size());
  for (std::size_t v = 0; v < var; ++v) pw.push_back(e[v]);
  for (bool b : mask) pw.push_back(b ? 1 : 0);
  for (std::size_t v = var + 1; v < e.size(); ++v) pw.push_back(e[v]);
  return Exponent(std::move(pw));
}

template <Coefficient T, class Emit>
void reduce_terms(const Exponent& e, std::size_t var, std::size_t n, Emit&& emit) {
  const auto k = static_cast<std::size_t>(e[var]);
  T weight = CoefficientTraits<T>::inverse_of(binomial(static_cast<long>(n), static_cast<long>(k)));
  for_each_subset(n, k, [&](const std::vector<bool>& mask) { emit(spread_exponent(e, var, mask), weight); });
}

}  // namespace

template <Coefficient T>
Polynomial<T> elementary_symmetric(std::size_t k, std::size_t n_vars) {
  if (k > n_vars) throw DegreeTooLow("elementary symmetric order exceeds variable count");
  Polynomial<T> p(n_vars);
  for_each_subset(n_vars, k, [&](const std::vector<bool>& mask) {
    std::vector<int> pw(mask.begin(), mask.end());
    p.add_term(Exponent(std::move(pw)), CoefficientTraits<T>::from_int(1));
  });
  return p;
}

template <Coefficient T>
RationalMatrixFunction<T> reduce_variable(const RationalMatrixFunction<T>& f, std::size_t var, std::size_t n) {
  if (var >= f.num_vars()) throw DimensionMismatch("variable index out of range");
  auto degrees = degrees_per_variable(f);
  if (static_cast<int>(n) < degrees[var])
    throw DegreeTooLow("reduction order " + std::to_string(n) + " below degree " + std::to_string(degrees[var]));
  const std::size_t d = f.num_vars() - 1 + n;

  MatrixPolynomial<T> num(d, f.size(), f.size());
  for (const auto& [e, c] : f.numerator().terms())
    reduce_terms<T>(e, var, n, [&](const Exponent& x, const T& w) { num.add_term(x, c * w); });
  Polynomial<T> den(d);
  for (const auto& [e, c] : f.denominator().terms())
    reduce_terms<T>(e, var, n, [&](const Exponent& x, const T& w) { den.add_term(x, c * w); });
  return {std::move(num), std::move(den)};
}

template <Coefficient T>
std::pair<RationalMatrixFunction<T>, ReductionPlan> reduce_to_multi_affine(const RationalMatrixFunction<T>& f) {
  ReductionPlan plan;
  plan.degrees = degrees_per_variable(f);
  RationalMatrixFunction<T> h = f;
  std::size_t offset = 0;
  for (std::size_t j = 0; j < plan.degrees.size(); ++j) {
    const auto k = static_cast<std::size_t>(std::max(plan.degrees[j], 1));
    if (k >= 2) h = reduce_variable(h, offset, k);
    std::vector<std::size_t> group(k);
    for (std::size_t i = 0; i < k; ++i) group[i] = offset + i;
    plan.groups.push_back(std::move(group));
    offset += k;
  }
  plan.fresh_count = offset;
  return {std::move(h), std::move(plan)};
}

#define PICKREALIZE_INSTANTIATE(T)                                                                      \
  template Polynomial<T> elementary_symmetric<T>(std::size_t, std::size_t);                            \
  template RationalMatrixFunction<T> reduce_variable<T>(const RationalMatrixFunction<T>&, std::size_t, \
                                                        std::size_t);                                  \
  template std::pair<RationalMatrixFunction<T>, ReductionPlan> reduce_to_multi_affine<T>(              \
      const RationalMatrixFunction<T>&);

PICKREALIZE_INSTANTIATE(GaussianRational)
PICKREALIZE_INSTANTIATE(Complex)

#undef PICKREALIZE_INSTANTIATE

}  // namespace pickrealize
