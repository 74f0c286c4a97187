#include "test_support.hpp"

#include <algorithm>
#include <numeric>

#include "pickrealize/degree_reduction.hpp"

using namespace testing;

namespace {

// Swaps fresh variables a and b.
EP swap_vars(const EP& p, std::size_t a, std::size_t b) {
  EP r(p.num_vars());
  for (const auto& [e, coeff] : p.terms()) {
    Exponent f = e;
    std::swap(f[a], f[b]);
    r.add_term(f, coeff);
  }
  return r;
}

}  // namespace

TEST_SUITE("degree_reduction") {

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("elementary symmetric polynomials") {
  CHECK(elementary_symmetric<GaussianRational>(0, 3) == c(3, 1));
  CHECK(elementary_symmetric<GaussianRational>(1, 2) == x(2, 0) + x(2, 1));
  CHECK(elementary_symmetric<GaussianRational>(2, 2) == x(2, 0) * x(2, 1));
  CHECK(elementary_symmetric<GaussianRational>(2, 3).terms().size() == 3);
}

TEST_CASE("reduce one variable") {
  auto r = reduce_variable(fn(x(1, 0) * x(1, 0)), 0, 2);
  CHECK(r.numerator() == mat(x(2, 0) * x(2, 1)));

  auto s = reduce_variable(fn(x(1, 0)), 0, 2);
  CHECK(s.numerator() == mat((x(2, 0) + x(2, 1)) * frac(1, 2)));

  EF affine = fn(c(1, 3) + c(1, gr(0, 2)) * x(1, 0));
  auto t = reduce_variable(affine, 0, 1);
  CHECK(t.numerator() == affine.numerator());

  CHECK_THROWS_AS(reduce_variable(fn(x(1, 0) * x(1, 0)), 0, 1), DegreeTooLow);
}

TEST_CASE("reduce z1 squared") {
  auto [h, plan] = reduce_to_multi_affine(fn(x(1, 0) * x(1, 0)));
  CHECK(h.numerator() == mat(x(2, 0) * x(2, 1)));
  CHECK(plan.groups == VariableGroups{{0, 1}});
  CHECK(plan.fresh_count == 2);
  CHECK_FALSE(plan.trivial());
}

TEST_CASE("reduce multi-affine function is a no-op") {
  EF f = fn(x(2, 0) * x(2, 1) - c(2, 1), x(2, 0) + x(2, 1));
  auto [h, plan] = reduce_to_multi_affine(f);
  CHECK(h.numerator() == f.numerator());
  CHECK(h.denominator() == f.denominator());
  CHECK(plan.trivial());
}

TEST_CASE("reduce z1 squared z2") {
  auto [h, plan] = reduce_to_multi_affine(fn(x(2, 0) * x(2, 0) * x(2, 1)));
  CHECK(h.numerator() == mat(x(3, 0) * x(3, 1) * x(3, 2)));
  CHECK(plan.groups == VariableGroups{{0, 1}, {2}});
  CHECK(plan.owners() == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("reduction is multi-affine, symmetric and invertible") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 15; ++t) {
    EF f(random_matrix_poly(2, 2, 2, rng), random_poly(2, 2, rng) + c(2, 7));
    auto [h, plan] = reduce_to_multi_affine(f);
    CHECK(is_multi_affine(h));
    auto back = restore(h, plan);
    CHECK(back.numerator() == f.numerator());
    CHECK(back.denominator() == f.denominator());
    for (const auto& group : plan.groups)
      for (std::size_t a = 0; a < group.size(); ++a)
        for (std::size_t b = a + 1; b < group.size(); ++b) {
          CHECK(swap_vars(h.denominator(), group[a], group[b]) == h.denominator());
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
              EP e = h.numerator().entry(i, j);
              CHECK(swap_vars(e, group[a], group[b]) == e);
            }
        }
  }
}

TEST_CASE("diagonal evaluation agrees with the original") {
  std::mt19937_64 rng(22);
  EF f(random_matrix_poly(2, 1, 2, rng), random_poly(2, 2, rng) + c(2, 7));
  auto [h, plan] = reduce_to_multi_affine(f);
  for (int t = 0; t < 10; ++t) {
    Point z = random_point(2, rng);
    Point w;
    for (std::size_t v : plan.owners()) w.push_back(z[v]);
    try {
      CHECK(rel_err(f.eval(z), h.eval(w)) < 1e-12);
    } catch (const PoleProximity&) {
    }
  }
}

}
