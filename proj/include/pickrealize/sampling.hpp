#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pickrealize/polynomial.hpp"

namespace pickrealize {

// Points of the upper poly-half-plane: Cauchy real parts, Exp(1) imaginary parts.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed) : engine_(seed) {}

  Point upper(std::size_t d);
  Point real(std::size_t d);
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::cauchy_distribution<double> cauchy_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

// Up to n points of Pi^d away from the poles of f; draws at most 10 n candidates.
template <Coefficient T>
std::vector<Point> sample_regular_points(const RationalMatrixFunction<T>& f, std::size_t n, PointSampler& sampler);

// Heuristic: looks for common zeros of numerator and denominator along random
// complex lines. Returns a warning message if one is found on every line.
template <Coefficient T>
std::optional<std::string> coprimality_warning(const RationalMatrixFunction<T>& f, std::uint64_t seed);

// Largest eigenvalue magnitude of a Hermitian matrix.
double hermitian_norm(const Eigen::MatrixXcd& m);
// (M - M^*) / 2i
Eigen::MatrixXcd imaginary_part(const Eigen::MatrixXcd& m);
double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

}  // namespace pickrealize
