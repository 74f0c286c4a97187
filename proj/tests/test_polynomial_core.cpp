#include "test_support.hpp"

#include "pickrealize/polynomial_json.hpp"

using namespace testing;

TEST_SUITE("polynomial_core") {

TEST_CASE("addition") {
  CHECK((x(1, 0) + (-x(1, 0))).is_zero());

  EP a = c(2, 1) + x(2, 0) * x(2, 1);
  CHECK(a.coefficient(Exponent{0, 0}) == gr(1));
  CHECK(a.coefficient(Exponent{1, 1}) == gr(1));
  CHECK(a.terms().size() == 2);

  CHECK(c(1, 2) * x(1, 0) + c(1, 3) * x(1, 0) == c(1, 5) * x(1, 0));
  CHECK_THROWS_AS(x(1, 0) + x(2, 0), ShapeMismatch);
}

TEST_CASE("multiplication") {
  CHECK(x(2, 0) * x(2, 1) == EP::monomial(Exponent{1, 1}, gr(1)));
  EP p = (c(1, 1) + x(1, 0)) * (c(1, 1) - x(1, 0));
  CHECK(p == c(1, 1) - x(1, 0) * x(1, 0));

  std::mt19937_64 rng(3);
  EM m = random_matrix_poly(2, 2, 2, rng);
  CHECK(EM::identity(2, 2) * m == m);
  CHECK(m * EM::identity(2, 2) == m);
  CHECK_THROWS_AS(EM::identity(2, 2) * EM::identity(2, 3), DimensionMismatch);
}

TEST_CASE("partial derivative") {
  CHECK(partial_derivative(x(1, 0) * x(1, 0), 0) == c(1, 2) * x(1, 0));
  CHECK(partial_derivative(x(2, 1), 0).is_zero());
  CHECK(partial_derivative(x(2, 0) * x(2, 1), 0) == x(2, 1));
}

TEST_CASE("conjugate reflection") {
  CHECK(conj_reflect(c(1, kI) * x(1, 0)) == c(1, -kI) * x(1, 0));
  CHECK(conj_reflect(x(1, 0) + c(1, 1)) == x(1, 0) + c(1, 1));
  CHECK(conj_reflect(c(0, gr(2, 1))) == c(0, gr(2, -1)));
}

TEST_CASE("hermitian reflection") {
  CoeffMatrix<GaussianRational> h(2, 2);
  h(0, 0) = gr(1);
  h(0, 1) = gr(2, 1);
  h(1, 0) = gr(2, -1);
  h(1, 1) = gr(-3);
  EM ph = EM::constant(1, h);
  CHECK(herm_reflect(ph) == ph);

  EM pi = mat(c(1, kI) * x(1, 0));
  CHECK(herm_reflect(pi) == mat(c(1, -kI) * x(1, 0)));

  CoeffMatrix<GaussianRational> n(2, 2);
  n(0, 1) = gr(1);
  CoeffMatrix<GaussianRational> nt(2, 2);
  nt(1, 0) = gr(1);
  CHECK(herm_reflect(EM::constant(1, n)) == EM::constant(1, nt));
}

TEST_CASE("reflections are involutions") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    EP q = random_poly(2, 2, rng);
    EM p = random_matrix_poly(2, 2, 2, rng);
    CHECK(conj_reflect(conj_reflect(q)) == q);
    CHECK(herm_reflect(herm_reflect(p)) == p);
  }
}

TEST_CASE("reflections are compatible with ring operations") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    EP a = random_poly(2, 2, rng), b = random_poly(2, 2, rng);
    CHECK(conj_reflect(a * b) == conj_reflect(a) * conj_reflect(b));
    CHECK(conj_reflect(a + b) == conj_reflect(a) + conj_reflect(b));
    EM p = random_matrix_poly(2, 2, 1, rng), q = random_matrix_poly(2, 2, 1, rng);
    CHECK(herm_reflect(p * q) == herm_reflect(q) * herm_reflect(p));
  }
}

TEST_CASE("evaluation") {
  Point z{{0.0, 1.0}, {0.0, 2.0}};
  CHECK(std::abs((x(2, 0) + x(2, 1)).eval(z) - Complex(0.0, 3.0)) < 1e-15);

  EF neg_inv = fn(c(1, -1), x(1, 0));
  Point zi{{0.0, 1.0}};
  CHECK(std::abs(neg_inv.eval(zi)(0, 0) - Complex(0.0, 1.0)) < 1e-15);

  EF pole = fn(c(1, 1), x(1, 0) - c(1, 2));
  Point root{{2.0, 0.0}};
  CHECK_THROWS_AS(pole.eval(root), PoleProximity);
  CHECK_THROWS_AS(x(2, 0).eval(zi), DimensionMismatch);
}

TEST_CASE("wronskian") {
  CHECK(wronskian(c(2, 1), mat(x(2, 0) + x(2, 1)), 0) == mat(c(2, 1)));
  CHECK(wronskian(x(1, 0), mat(c(1, -1)), 0) == mat(c(1, 1)));
  CHECK(wronskian(c(1, 1), mat(-x(1, 0)), 0) == mat(c(1, -1)));
}

TEST_CASE("wronskian matches finite differences") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    EP q = random_poly(2, 2, rng);
    EM p = random_matrix_poly(2, 2, 2, rng);
    auto w = wronskian(q, p, 1);
    Point z = random_point(2, rng);
    const double h = 1e-6;
    Point zp = z, zm = z;
    zp[1] += h;
    zm[1] -= h;
    Eigen::MatrixXcd dp = (p.eval(zp) - p.eval(zm)) / (2 * h);
    Complex dq = (q.eval(zp) - q.eval(zm)) / (2 * h);
    Eigen::MatrixXcd expected = q.eval(z) * dp - p.eval(z) * dq;
    CHECK(rel_err(expected, w.eval(z)) < 1e-6);
  }
}

TEST_CASE("multi-affine test") {
  CHECK(is_multi_affine(fn(x(2, 0) * x(2, 1))));
  CHECK_FALSE(is_multi_affine(fn(x(1, 0) * x(1, 0))));
  CHECK(is_multi_affine(fn(c(2, 1), x(2, 0) + x(2, 1))));
  CHECK_FALSE(is_multi_affine(fn(c(1, 1), x(1, 0) * x(1, 0) + c(1, 1))));
}

TEST_CASE("identify variables") {
  EP zz = x(2, 0) * x(2, 1);
  CHECK(identify_variables(zz, {{0, 1}}) == x(1, 0) * x(1, 0));
  EP mean = (x(2, 0) + x(2, 1)) * frac(1, 2);
  CHECK(identify_variables(mean, {{0, 1}}) == x(1, 0));
  EP p = x(3, 0) * x(3, 2) + x(3, 1);
  CHECK(identify_variables(p, {{0}, {1}, {2}}) == p);
  CHECK_THROWS_AS(identify_variables(p, {{0}, {1}}), InputError);
}

TEST_CASE("split affine") {
  EP p = x(2, 0) * x(2, 1) + c(2, 3) * x(2, 1) + c(2, 2);
  auto [lin, con] = split_affine(p, 0);
  CHECK(lin == x(2, 1));
  CHECK(con == c(2, 3) * x(2, 1) + c(2, 2));
  CHECK_THROWS_AS(split_affine(x(1, 0) * x(1, 0), 0), DegreeTooLow);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(8);
  EP q = random_poly(2, 2, rng) + c(2, 1);
  EM p = random_matrix_poly(2, 2, 2, rng) * frac(1, 3);
  EF f(p, q);
  auto back = function_from_json<GaussianRational>(to_json(f));
  CHECK(back.numerator() == f.numerator());
  CHECK(back.denominator() == f.denominator());

  auto bare = function_from_json<GaussianRational>(
      parse_json_text(R"({"d":1,"shape":[1,1],"terms":[{"exp":[1],"re":"1/2","im":0.25}]})", "inline"));
  CHECK(bare.numerator().entry(0, 0).coefficient(Exponent{1}) == GaussianRational(mpq_class(1, 2), mpq_class(1, 4)));
  CHECK(bare.denominator() == c(1, 1));

  CHECK_THROWS_AS(parse_json_text("{\"d\": 1,", "broken"), InputError);
}

TEST_CASE("float conversion agrees with exact evaluation") {
  std::mt19937_64 rng(9);
  EF f(random_matrix_poly(2, 2, 2, rng), random_poly(2, 1, rng) + c(2, 5));
  FloatFunction g = to_float(f);
  for (int t = 0; t < 10; ++t) {
    Point z = random_point(2, rng);
    try {
      CHECK(rel_err(f.eval(z), g.eval(z)) < 1e-14);
    } catch (const PoleProximity&) {
    }
  }
}

}
