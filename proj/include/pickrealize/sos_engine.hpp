#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

#include "pickrealize/polynomial.hpp"

namespace pickrealize {

struct SosOptions {
  int max_iters = 20000;
  double tol = 1e-10;
  bool escalate = true;
};

// W(z) = Psi(z) G Psi(z)^# where Psi is the block monomial row indexed by
// (basis element, row) pairs listed in `index`.
struct GramProblem {
  std::vector<Exponent> basis;
  FloatMatrixPolynomial target;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  Eigen::MatrixXcd gram;

  std::size_t size() const { return index.size(); }
  std::size_t rows() const { return target.rows(); }
};

struct SOSFactor {
  FloatMatrixPolynomial phi;
  double residual = 0.0;
  std::size_t rank() const { return phi.cols(); }
};

struct GramSolveStats {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// [[A, B], [B^T, A]] with A = (W + conj W) / 2, B = (W - conj W) / 2i.
template <Coefficient T>
MatrixPolynomial<T> hermitian_to_real_embedding(const MatrixPolynomial<T>& w);

Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& m);
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m);

std::vector<std::size_t> active_variables(const FloatMatrixPolynomial& w);
// All square-free monomials in the variables W contains.
std::vector<Exponent> multi_affine_basis(const FloatMatrixPolynomial& w);
// All monomials of total degree <= max_degree in the variables W contains.
std::vector<Exponent> total_degree_basis(const FloatMatrixPolynomial& w, int max_degree);

// Keeps, for each row a, the basis elements allowed by the degree range of W_aa.
GramProblem make_gram_problem(const FloatMatrixPolynomial& w, std::vector<Exponent> basis);

// Dykstra alternating projections between the coefficient-matching affine set
// and the PSD cone, starting from 0.
GramSolveStats gram_solve_iterate(GramProblem& problem, int max_iters, double tol);
// Throws SolverStalled unless both residuals fall below tol.
GramProblem gram_solve(GramProblem problem, int max_iters, double tol);

// Eigen-factor G = L L^* and read off Phi(z) = Psi(z) L.
SOSFactor factor_gram(const Eigen::MatrixXcd& g, const GramProblem& layout);

// H = (R1 - i R2) / sqrt(2) for a real factor R = [R1; R2] of the embedding.
FloatMatrixPolynomial recombine_embedded_factor(const FloatMatrixPolynomial& r);

FloatMatrixPolynomial sos_product(const FloatMatrixPolynomial& phi);
double sos_residual(const FloatMatrixPolynomial& phi, const FloatMatrixPolynomial& w);

// Full route: embed, solve, recombine, factor, polish, verify.
SOSFactor sos_factor(const FloatMatrixPolynomial& w, const SosOptions& options = {});

}  // namespace pickrealize
