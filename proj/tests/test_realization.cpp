#include "test_support.hpp"

#include "pickrealize/realization.hpp"
#include "pickrealize/realization_json.hpp"
#include "pickrealize/sampling.hpp"

using namespace testing;

namespace {

SOSFactor unit_factor(std::size_t d) {
  return {FloatMatrixPolynomial::constant(d, CoeffMatrix<Complex>::identity(1)), 0.0};
}

SchurRealization z1_realization() {
  SchurRealization r;
  r.m = 1;
  r.H = cmat({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  r.structure = {1, {1}};
  r.hermitian = true;
  return r;
}

const std::vector<std::string> kCorpus{"f_z1.json",   "f_neg_inv_z1.json", "f_sum.json",    "f_neg_inv_sum.json",
                                       "f_i.json",    "f_i_plus_z1.json",  "f_mobius.json", "f_diag.json"};

}  // namespace

TEST_SUITE("realization") {

TEST_CASE("darlington step case two") {
  FloatFunction h = to_float(fn(x(2, 0) + x(2, 1)));
  auto rep = darlington_step(h, 0, unit_factor(2));
  CHECK(rep.m == 1);
  CHECK(rep.lambda == std::vector<int>{kConstantSlot, 0});
  auto expected = to_float(EM::from_blocks({{mat(x(2, 1)), mat(c(2, 1)), mat(c(2, 0))},
                                            {mat(c(2, 1)), mat(c(2, 0)), mat(c(2, 1))},
                                            {mat(c(2, 0)), mat(c(2, 1)), mat(c(2, 0))}}));
  CHECK(rep.coefficient.numerator() == expected);
  CHECK(rep.coefficient.numerator().degree_in(0) == 0);

  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    Point z = random_point(2, rng);
    CHECK(rel_err(h.eval(z), eval_lft(rep, z)) < 1e-13);
  }
}

TEST_CASE("darlington step case one") {
  FloatFunction h = to_float(fn(c(1, -1), x(1, 0)));
  auto rep = darlington_step(h, 0, unit_factor(1));
  CHECK(rep.lambda == std::vector<int>{0});
  CHECK(rep.coefficient.numerator() == to_float(EM::from_blocks({{mat(c(1, 0)), mat(c(1, 1))},
                                                                 {mat(c(1, 1)), mat(c(1, 0))}})));
  CHECK(rep.coefficient.denominator() == convert<Complex>(c(1, 1)));
  Point z{{0.3, 1.7}};
  CHECK(rel_err(h.eval(z), eval_lft(rep, z)) < 1e-14);
}

TEST_CASE("darlington step on a variable-free function") {
  FloatFunction h = to_float(fn(x(2, 1)));
  SOSFactor empty{FloatMatrixPolynomial(2, 1, 0), 0.0};
  auto rep = darlington_step(h, 0, empty);
  CHECK(rep.lambda.empty());
  CHECK(rep.coefficient.numerator() == h.numerator());
}

TEST_CASE("darlington step rejects a wrong factor") {
  FloatFunction h = to_float(fn(c(2, 2) * x(2, 0) + x(2, 1)));
  CHECK_THROWS_AS(darlington_step(h, 0, unit_factor(2)), ResidualTooLarge);
}

TEST_CASE("superposition of a scalar chain") {
  LftRep outer{to_float(EF(EM::from_blocks({{mat(c(2, 0)), mat(c(2, 1))}, {mat(c(2, 1)), mat(c(2, 0))}}), c(2, 1))), 1,
               {0}};
  Eigen::MatrixXcd a = cmat({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  LftRep inner{FloatFunction(FloatMatrixPolynomial::constant(2, CoeffMatrix<Complex>::from_eigen(a)),
                             FloatPolynomial::constant(2, 1.0)),
               2, {1}};
  LftRep flat = superpose(outer, inner);
  CHECK(flat.lambda == std::vector<int>{0, 1});
  CHECK(flat.m == 1);

  std::mt19937_64 rng(52);
  for (int t = 0; t < 50; ++t) {
    Point z = random_point(2, rng);
    Eigen::MatrixXcd g = eval_lft(inner, z);
    Eigen::MatrixXcd nested = g.topLeftCorner(1, 1) - g.topRightCorner(1, 1) * g.bottomLeftCorner(1, 1) / (g(1, 1) + z[0]);
    Complex w = -z[1] / (z[0] * z[1] - 1.0);
    CHECK(rel_err(nested, eval_lft(flat, z)) < 1e-12);
    CHECK(std::abs(eval_lft(flat, z)(0, 0) - w) < 1e-12 * (1.0 + std::abs(w)));
  }
}

TEST_CASE("superposition degenerate cases") {
  LftRep outer{to_float(fn(x(1, 0))), 1, {}};
  LftRep inner{to_float(fn(x(1, 0))), 1, {}};
  auto r = superpose(outer, inner);
  CHECK(r.lambda.empty());
  CHECK(r.coefficient.numerator() == outer.coefficient.numerator());

  LftRep bad{to_float(fn(x(1, 0))), 1, {0}};
  CHECK_THROWS_AS(superpose(bad, inner), DimensionMismatch);
}

TEST_CASE("permute reblock") {
  Eigen::MatrixXcd a(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) a(i, j) = Complex(static_cast<double>(i + 1), static_cast<double>(j));
  a = (a + a.adjoint()).eval();
  LftRep rep{FloatFunction(FloatMatrixPolynomial::constant(2, CoeffMatrix<Complex>::from_eigen(a)),
                           FloatPolynomial::constant(2, 1.0)),
             1, {1, kConstantSlot, 0}};
  auto p = permute_reblock(rep);
  CHECK(p.lambda == std::vector<int>{kConstantSlot, 0, 1});
  CHECK(permute_reblock(p).coefficient.numerator() == p.coefficient.numerator());

  std::mt19937_64 rng(53);
  for (int t = 0; t < 10; ++t) {
    Point z = random_point(2, rng);
    CHECK(rel_err(eval_lft(rep, z), eval_lft(p, z)) < 1e-12);
  }
}

TEST_CASE("realize z1 gives the known matrix") {
  auto r = realize_pick(fn(x(1, 0)));
  CHECK(r.H == cmat({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));
  CHECK(r.structure.n0 == 1);
  CHECK(r.structure.blocks == std::vector<std::size_t>{1});
  CHECK(r.hermitian);
}

TEST_CASE("realize a Hermitian constant") {
  CoeffMatrix<GaussianRational> h(2, 2);
  h(0, 0) = gr(1);
  h(0, 1) = gr(0, 1);
  h(1, 0) = gr(0, -1);
  h(1, 1) = gr(3);
  auto r = realize_pick(EF(EM::constant(1, h), c(1, 1)));
  CHECK(r.n() == 0);
  CHECK((r.H - EM::constant(1, h).coefficient(Exponent{0}).to_eigen()).norm() < 1e-15);
}

TEST_CASE("realize -1/(z1 + z2)") {
  EF f = fn(c(2, -1), x(2, 0) + x(2, 1));
  RealizationLog log;
  auto r = realize_pick(f, {}, &log);
  // A Schur form of a function vanishing like 1/t along rays needs one constant slot.
  CHECK(r.structure.n0 == 1);
  CHECK(r.structure.blocks == std::vector<std::size_t>{1, 1});
  CHECK(r.hermitian);
  CHECK((r.H - r.H.adjoint()).norm() < 1e-12);
  CHECK(log.steps.size() == 2);
  std::mt19937_64 rng(54);
  for (int t = 0; t < 100; ++t) {
    Point z = random_point(2, rng);
    CHECK(rel_err(f.eval(z), eval_realization(r, z)) < 1e-10);
  }
}

TEST_CASE("realize i through the lift") {
  RealizationLog log;
  auto r = realize_pick(fn(c(0, kI)), {}, &log);
  CHECK(log.lifted);
  CHECK(r.structure.num_vars() == 0);
  Point none;
  CHECK(std::abs(eval_realization(r, none)(0, 0) - Complex(0, 1)) < 1e-12);
}

TEST_CASE("realize rejects -z1") {
  CHECK_THROWS_AS(realize_pick(fn(-x(1, 0))), PickFalsified);
}

TEST_CASE("evaluation of the z1 realization") {
  auto r = z1_realization();
  Point i{{0.0, 1.0}};
  CHECK(std::abs(eval_realization(r, i)(0, 0) - Complex(0, 1)) < 1e-15);
  SchurRealization inv;
  inv.m = 1;
  inv.H = cmat({{0, 1}, {1, 0}});
  inv.structure = {0, {1}};
  Point zero{{0.0, 0.0}};
  CHECK_THROWS_AS(eval_realization(inv, zero), SingularAtPoint);
  CHECK(std::abs(eval_realization(inv, i)(0, 0) - Complex(0, 1)) < 1e-15);

  SchurRealization constant;
  constant.m = 1;
  constant.H = cmat({{2.5}});
  constant.structure = {0, {0, 0}};
  Point any{{0.4, 0.2}, {-1.0, 3.0}};
  CHECK(eval_realization(constant, any)(0, 0) == Complex(2.5, 0));
}

TEST_CASE("transfer form of -1/z1") {
  SchurRealization s;
  s.m = 1;
  s.H = cmat({{0, 1}, {1, 0}});
  s.structure = {0, {1}};
  s.hermitian = true;
  auto t = schur_to_transfer(s);
  auto back = transfer_to_schur(t);
  std::mt19937_64 rng(55);
  for (int k = 0; k < 50; ++k) {
    Point z = random_point(1, rng);
    Complex expected = -1.0 / z[0];
    CHECK(std::abs(eval_realization(t, z)(0, 0) - expected) < 1e-12 * (1.0 + std::abs(expected)));
    CHECK(std::abs(eval_realization(back, z)(0, 0) - expected) < 1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("pencil form of z1") {
  auto p = schur_to_pencil(z1_realization());
  REQUIRE(p.A.size() == 1);
  CHECK(p.A[0] == cmat({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
  Point z{{0.7, 0.9}};
  CHECK(std::abs(eval_realization(p, z)(0, 0) - z[0]) < 1e-14);

  SchurRealization constant;
  constant.m = 1;
  constant.H = cmat({{1.0}});
  constant.structure = {0, {0}};
  auto pc = schur_to_pencil(constant);
  CHECK(pc.A[0].isZero());
}

TEST_CASE("form conversions agree on the corpus") {
  for (const auto& name : kCorpus) {
    CAPTURE(name);
    EF f = load_function(name);
    auto s = realize_pick(f);
    auto t = std::get<TransferRealization>(convert_form(s, RealizationForm::Transfer));
    auto p = std::get<PencilRealization>(convert_form(s, RealizationForm::Pencil));
    auto ts = transfer_to_schur(t);
    for (std::size_t j = 0; j < p.A.size(); ++j) {
      CHECK(p.A[j] * p.A[j] == p.A[j]);
      CHECK(p.A[j].adjoint() == p.A[j]);
      for (std::size_t k = j + 1; k < p.A.size(); ++k) CHECK((p.A[j] * p.A[k]).isZero(0.0));
    }
    PointSampler sampler(3);
    for (int k = 0; k < 100; ++k) {
      Point z = sampler.upper(f.num_vars());
      Eigen::MatrixXcd v = eval_realization(s, z);
      CHECK(rel_err(v, eval_realization(t, z)) < 1e-9);
      CHECK(rel_err(v, eval_realization(p, z)) < 1e-9);
      CHECK(rel_err(v, eval_realization(ts, z)) < 1e-9);
    }
  }
}

TEST_CASE("kernel decomposition") {
  auto p = schur_to_pencil(z1_realization());
  Point i{{0.0, 1.0}};
  auto k = kernel_decomposition(p, i, i);
  CHECK(std::abs(k.rhs(0, 0) - 1.0) < 1e-14);
  CHECK(k.residual < 1e-14);
  CHECK(k.theta_z[0].isZero(1e-14));

  std::mt19937_64 rng(56);
  for (int t = 0; t < 10; ++t) {
    Point z = random_point(1, rng), w = random_point(1, rng);
    CHECK(kernel_decomposition(p, z, w).residual < 1e-12);
  }
  SchurRealization inv;
  inv.m = 1;
  inv.H = cmat({{0, 1}, {1, 0}});
  inv.structure = {0, {1}};
  Point zero{{0.0, 0.0}};
  CHECK_THROWS_AS(kernel_decomposition(schur_to_pencil(inv), zero, i), SingularAtPoint);
}

TEST_CASE("certify pipeline outputs") {
  for (const auto& name : kCorpus) {
    CAPTURE(name);
    EF f = load_function(name);
    auto s = realize_pick(f);
    for (auto form : {RealizationForm::Schur, RealizationForm::Transfer, RealizationForm::Pencil}) {
      auto report = certify(convert_form(s, form), to_float(f), 50, 9);
      CHECK(report.passed());
      CHECK(report.max_eval_error <= 1e-8);
      CHECK(report.identity_residual <= 1e-8);
    }
  }
}

TEST_CASE("certify detects a corrupted matrix") {
  EF f = load_function("f_mobius.json");
  auto s = realize_pick(f);
  s.H(0, 1) += 1e-2;
  auto report = certify(s, to_float(f), 50, 9);
  CHECK_FALSE(report.eval_ok);
  CHECK_FALSE(report.passed());
}

TEST_CASE("certify a constant realization") {
  SchurRealization constant;
  constant.m = 1;
  constant.H = cmat({{2.0}});
  constant.structure = {0, {0}};
  constant.hermitian = true;
  auto report = certify(constant, to_float(fn(c(1, 2))), 20, 1);
  CHECK(report.passed());
}

TEST_CASE("realization json round trip") {
  auto s = realize_pick(load_function("f_mobius.json"));
  for (auto form : {RealizationForm::Schur, RealizationForm::Transfer, RealizationForm::Pencil}) {
    Realization r = convert_form(s, form);
    Realization back = realization_from_json(realization_to_json(r));
    CHECK(form_of(back) == form);
    CHECK(realization_matrix(back) == realization_matrix(r));
    CHECK(realization_to_json(back).dump() == realization_to_json(r).dump());
  }
}

}

namespace {

// Determinant and adjugate of a small square polynomial matrix by cofactors.
EP det_of(const EM& m);

EM minor_of(const EM& m, std::size_t row, std::size_t col) {
  const std::size_t n = m.rows();
  std::vector<std::vector<EM>> grid;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == row) continue;
    std::vector<EM> r;
    for (std::size_t j = 0; j < n; ++j)
      if (j != col) r.push_back(mat(m.entry(i, j)));
    grid.push_back(std::move(r));
  }
  return EM::from_blocks(grid);
}

EP det_of(const EM& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m.entry(0, 0);
  EP d(m.num_vars());
  for (std::size_t j = 0; j < n; ++j) {
    EP term = m.entry(0, j) * det_of(minor_of(m, 0, j));
    d += j % 2 == 0 ? term : -term;
  }
  return d;
}

EM adjugate(const EM& m) {
  const std::size_t n = m.rows();
  if (n == 1) return mat(c(m.num_vars(), 1));
  std::vector<std::vector<EM>> grid(n, std::vector<EM>(n, EM(m.num_vars(), 1, 1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      EP cof = det_of(minor_of(m, j, i));
      grid[i][j] = mat((i + j) % 2 == 0 ? cof : -cof);
    }
  return EM::from_blocks(grid);
}

// f = A - B (D + Z)^{-1} C as an exact rational function.
EF function_of(const CoeffMatrix<GaussianRational>& h, std::size_t m, const BlockStructure& s) {
  const std::size_t d = s.num_vars(), n = s.total();
  auto block = [&](std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) {
    CoeffMatrix<GaussianRational> b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = h(r0 + i, c0 + j);
    return EM::constant(d, b);
  };
  EM dz = block(m, m, n, n);
  for (std::size_t k = 0; k < d; ++k) {
    CoeffMatrix<GaussianRational> e(n, n);
    for (std::size_t i = 0; i < s.blocks[k]; ++i) e(s.offset(k) + i, s.offset(k) + i) = gr(1);
    dz += EM::constant(d, e) * x(d, k);
  }
  EP q = det_of(dz);
  EM p = block(0, 0, m, m) * q - block(0, m, m, n) * adjugate(dz) * block(m, 0, n, m);
  return {p, q};
}

}  // namespace

TEST_CASE("realizing random Hermitian realizations") {
  std::mt19937_64 rng(57);
  std::uniform_int_distribution<int> coef(-2, 2);
  const std::vector<std::pair<std::size_t, BlockStructure>> shapes{
      {1, {0, {1, 1}}}, {1, {1, {1, 1}}}, {2, {0, {1, 1}}}, {1, {1, {2}}}, {1, {0, {1, 1, 1}}}, {2, {1, {1, 1}}}};
  for (const auto& [m, s] : shapes) {
    for (int t = 0; t < 3; ++t) {
      const std::size_t size = m + s.total();
      CoeffMatrix<GaussianRational> h(size, size);
      for (std::size_t i = 0; i < size; ++i) {
        h(i, i) = gr(coef(rng));
        for (std::size_t j = i + 1; j < size; ++j) {
          h(i, j) = gr(coef(rng), coef(rng));
          h(j, i) = h(i, j).conj();
        }
      }
      EF f = function_of(h, m, s);
      if (f.denominator().total_degree() == 0) continue;
      CAPTURE(m);
      CAPTURE(s.total());
      CAPTURE(t);
      auto r = realize_pick(f);
      CHECK(r.hermitian);
      auto report = certify(r, to_float(f), 100, 13);
      CHECK(report.passed());
    }
  }
}

TEST_CASE("realizing random Pick realizations through the lift") {
  std::mt19937_64 rng(58);
  std::uniform_int_distribution<int> coef(-2, 2);
  const std::vector<std::pair<std::size_t, BlockStructure>> shapes{
      {1, {0, {1}}}, {1, {1, {1}}}, {1, {0, {1, 1}}}, {2, {0, {1}}}, {1, {1, {1, 1}}}};
  for (const auto& [m, s] : shapes) {
    for (int t = 0; t < 3; ++t) {
      const std::size_t size = m + s.total();
      CoeffMatrix<GaussianRational> h(size, size);
      std::vector<GaussianRational> v(size);
      for (auto& e : v) e = gr(coef(rng), coef(rng));
      for (std::size_t i = 0; i < size; ++i) {
        h(i, i) = gr(coef(rng));
        for (std::size_t j = i + 1; j < size; ++j) {
          h(i, j) = gr(coef(rng), coef(rng));
          h(j, i) = h(i, j).conj();
        }
      }
      for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j) h(i, j) += kI * v[i] * v[j].conj();
      EF f = function_of(h, m, s);
      if (f.denominator().total_degree() == 0) continue;
      CAPTURE(m);
      CAPTURE(s.total());
      CAPTURE(t);
      RealizationLog log;
      auto r = realize_pick(f, {}, &log);
      CHECK(log.lifted);
      auto report = certify(r, to_float(f), 100, 14);
      CHECK(report.passed());
    }
  }
}
