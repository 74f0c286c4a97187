#include "test_support.hpp"

#include "pickrealize/pick_analysis.hpp"
#include "pickrealize/sampling.hpp"

using namespace testing;

namespace {

// Re-evaluates a witness against its function.
double witness_eigenvalue(const EF& f, const Witness& w) {
  if (w.kind == WitnessKind::PickViolation) return min_eigenvalue(imaginary_part(f.eval(w.point)));
  Eigen::MatrixXcd m = to_float(wronskians(f)[w.variable]).eval(w.point);
  return min_eigenvalue((m + m.adjoint()) / 2.0);
}

}  // namespace

TEST_SUITE("pick_analysis") {

TEST_CASE("sampler draws upper half-plane points deterministically") {
  PointSampler a(7), b(7);
  for (int t = 0; t < 50; ++t) {
    Point z = a.upper(3);
    CHECK(z == b.upper(3));
    for (const auto& v : z) CHECK(v.imag() > 0.0);
  }
  Point r = a.real(2);
  for (const auto& v : r) CHECK(v.imag() == 0.0);
}

TEST_CASE("sampling does not falsify z1") {
  auto v = sample_pick(fn(x(1, 0)), 200, 42);
  CHECK(v.status == PickStatus::Inconclusive);
  CHECK_FALSE(v.witness);
}

TEST_CASE("sampling falsifies -z1") {
  EF f = fn(-x(1, 0));
  auto v = sample_pick(f, 200, 42);
  REQUIRE(v.status == PickStatus::Falsified);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == WitnessKind::PickViolation);
  CHECK(v.witness->point[0].imag() > 0.0);
  CHECK(witness_eigenvalue(f, *v.witness) < -1e-9);
}

TEST_CASE("sampling falsifies an indefinite diagonal") {
  EF f(diag({x(1, 0), -x(1, 0)}), c(1, 1));
  auto v = sample_pick(f, 200, 42);
  REQUIRE(v.status == PickStatus::Falsified);
  CHECK(witness_eigenvalue(f, *v.witness) < -1e-9);
  CHECK(witness_eigenvalue(f, *v.witness) == doctest::Approx(v.witness->eigenvalue));
}

TEST_CASE("cayley symmetry") {
  CHECK(check_cayley_symmetry(fn(x(1, 0))).symmetric);
  CHECK_FALSE(check_cayley_symmetry(fn(c(0, kI))).symmetric);

  auto s = check_cayley_symmetry(fn(c(1, kI) * x(1, 0), c(1, kI)));
  CHECK(s.symmetric);
  CHECK(s.normalized.numerator() == mat(x(1, 0)));
  CHECK(s.normalized.denominator() == c(1, 1));
}

TEST_CASE("criterion certifies z1 + z2") {
  auto v = cayley_inner_criterion(fn(x(2, 0) + x(2, 1)));
  REQUIRE(v.status == PickStatus::CertifiedCayleyInner);
  REQUIRE(v.certificates.size() == 2);
  for (const auto& cert : v.certificates) {
    CHECK(cert.factor.rank() == 1);
    CHECK(cert.factor.residual == 0.0);
  }
}

TEST_CASE("criterion certifies -1/(z1 + z2)") {
  EF f = fn(c(2, -1), x(2, 0) + x(2, 1));
  auto ws = wronskians(f);
  CHECK(ws[0] == mat(c(2, 1)));
  CHECK(ws[1] == mat(c(2, 1)));
  auto v = cayley_inner_criterion(f);
  REQUIRE(v.status == PickStatus::CertifiedCayleyInner);
  const auto& phi = v.certificates[0].factor.phi;
  CHECK(phi.cols() == 1);
  CHECK(std::abs(std::abs(phi.coefficient(Exponent{0, 0})(0, 0)) - 1.0) < 1e-14);
}

TEST_CASE("criterion falsifies z1 z2") {
  EF f = fn(x(2, 0) * x(2, 1));
  CHECK(wronskians(f)[0] == mat(x(2, 1)));
  auto v = cayley_inner_criterion(f);
  REQUIRE(v.status == PickStatus::Falsified);
  REQUIRE(v.witness);
  CHECK(v.witness->kind == WitnessKind::Wronskian);
  CHECK(v.witness->point[1 - v.witness->variable].real() < 0.0);
  CHECK(witness_eigenvalue(f, *v.witness) < -1e-9);
}

TEST_CASE("criterion requires multi-affine input") {
  CHECK_THROWS_AS(cayley_inner_criterion(fn(x(1, 0) * x(1, 0))), DegreeTooLow);
}

TEST_CASE("verify statuses") {
  CHECK(verify(fn(x(1, 0))).status == PickStatus::CertifiedCayleyInner);
  CHECK(verify(fn(-x(1, 0))).status == PickStatus::Falsified);
  CHECK(verify(fn(c(0, kI))).status == PickStatus::CertifiedPickViaRealization);
  CHECK(verify(fn(c(1, kI) + x(1, 0))).status == PickStatus::CertifiedPickViaRealization);

  auto sq = verify(fn(x(1, 0) * x(1, 0)));
  CHECK(sq.status == PickStatus::Falsified);
}

TEST_CASE("verify is deterministic for a fixed seed") {
  EF f = fn(x(2, 0) * x(2, 1));
  auto a = verify(f), b = verify(f);
  REQUIRE(a.witness);
  REQUIRE(b.witness);
  CHECK(a.witness->point == b.witness->point);
  CHECK(a.report == b.report);
}

TEST_CASE("falsified witnesses re-verify") {
  std::vector<EF> rejected{fn(-x(1, 0)), fn(x(2, 0) * x(2, 1)), EF(diag({x(1, 0), -x(1, 0)}), c(1, 1)),
                           fn(x(1, 0) * x(1, 0))};
  for (const auto& f : rejected) {
    auto v = verify(f);
    REQUIRE(v.status == PickStatus::Falsified);
    REQUIRE(v.witness);
    if (v.witness->space == WitnessSpace::Original) CHECK(witness_eigenvalue(f, *v.witness) < -1e-9);
    else CHECK(v.witness->eigenvalue < -1e-9);
  }
}

}
