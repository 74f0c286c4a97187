#include "pickrealize/sampling.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace pickrealize {

Point PointSampler::upper(std::size_t d) {
  Point z(d);
  for (auto& v : z) {
    double re = cauchy_(engine_);
    double im = exponential_(engine_);
    v = Complex(re, im);
  }
  return z;
}

Point PointSampler::real(std::size_t d) {
  Point x(d);
  for (auto& v : x) v = Complex(cauchy_(engine_), 0.0);
  return x;
}

template <Coefficient T>
std::vector<Point> sample_regular_points(const RationalMatrixFunction<T>& f, std::size_t n, PointSampler& sampler) {
  std::vector<Point> points;
  const double delta = f.pole_tolerance();
  for (std::size_t attempt = 0; attempt < 10 * n && points.size() < n; ++attempt) {
    Point z = sampler.upper(f.num_vars());
    if (std::abs(f.denominator().eval(z)) >= delta) points.push_back(std::move(z));
  }
  return points;
}

double hermitian_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd imaginary_part(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()) / Complex(0.0, 2.0);
}

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.size() == 0) return 0.0;
  Eigen::MatrixXcd sym = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

// Coefficients c_0..c_D of t -> q(a + t b), recovered from values on roots of unity.
template <Coefficient T>
std::vector<Complex> restrict_to_line(const Polynomial<T>& q, const Point& a, const Point& b, int degree) {
  const int n = degree + 1;
  std::vector<Complex> values(static_cast<std::size_t>(n));
  Point z(a.size());
  for (int j = 0; j < n; ++j) {
    Complex t = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    for (std::size_t k = 0; k < a.size(); ++k) z[k] = a[k] + t * b[k];
    values[static_cast<std::size_t>(j)] = q.eval(z);
  }
  std::vector<Complex> coeffs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Complex s(0.0, 0.0);
    for (int j = 0; j < n; ++j) s += values[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / n);
    coeffs[static_cast<std::size_t>(k)] = s / static_cast<double>(n);
  }
  return coeffs;
}

std::vector<Complex> roots(std::vector<Complex> c) {
  while (c.size() > 1 && std::abs(c.back()) < 1e-12) c.pop_back();
  const auto deg = static_cast<Eigen::Index>(c.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<Complex> r(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return r;
}

}  // namespace

template <Coefficient T>
std::optional<std::string> coprimality_warning(const RationalMatrixFunction<T>& f, std::uint64_t seed) {
  const int degree = f.denominator().total_degree();
  if (degree == 0) return std::nullopt;
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t d = f.num_vars();
  constexpr int kLines = 3;
  int hits = 0;
  for (int line = 0; line < kLines; ++line) {
    Point a(d), b(d), z(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = Complex(normal(engine), normal(engine));
      b[k] = Complex(normal(engine), normal(engine));
    }
    double reference = 0.0;
    for (std::size_t k = 0; k < d; ++k) z[k] = a[k] + b[k];
    reference = f.numerator().eval(z).norm() + f.numerator().eval(a).norm();
    bool found = false;
    for (Complex t : roots(restrict_to_line(f.denominator(), a, b, degree))) {
      for (std::size_t k = 0; k < d; ++k) z[k] = a[k] + t * b[k];
      double scale = std::pow(1.0 + std::abs(t), f.numerator().total_degree());
      if (f.numerator().eval(z).norm() <= 1e-7 * (1.0 + reference) * scale) found = true;
    }
    if (found) ++hits;
  }
  if (hits == kLines)
    return "numerator and denominator appear to share a common factor; results assume coprime P, q";
  return std::nullopt;
}

template std::vector<Point> sample_regular_points(const RationalMatrixFunction<GaussianRational>&, std::size_t,
                                                  PointSampler&);
template std::vector<Point> sample_regular_points(const RationalMatrixFunction<Complex>&, std::size_t,
                                                  PointSampler&);
template std::optional<std::string> coprimality_warning(const RationalMatrixFunction<GaussianRational>&,
                                                        std::uint64_t);
template std::optional<std::string> coprimality_warning(const RationalMatrixFunction<Complex>&, std::uint64_t);

}  // namespace pickrealize
