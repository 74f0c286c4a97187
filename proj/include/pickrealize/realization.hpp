#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pickrealize/degree_reduction.hpp"
#include "pickrealize/pick_analysis.hpp"
#include "pickrealize/polynomial.hpp"
#include "pickrealize/realization_types.hpp"
#include "pickrealize/sos_engine.hpp"

namespace pickrealize {

inline constexpr int kConstantSlot = -1;

// f = g11 - g12 (g22 + Lambda)^{-1} g21 where g = coefficient is (m+n) x (m+n)
// and Lambda = diag(lambda) holds 0 (kConstantSlot) or a single variable per slot.
struct LftRep {
  FloatFunction coefficient;
  std::size_t m = 0;
  std::vector<int> lambda;

  std::size_t n() const { return lambda.size(); }
};

Eigen::MatrixXcd eval_lft(const LftRep& rep, std::span<const Complex> point);

// Outer coefficient expressed through inner: parameter blocks are concatenated.
LftRep superpose(const LftRep& outer, const LftRep& inner);

// Stable reordering of slots: constant slots first, then variables ascending.
LftRep permute_reblock(const LftRep& rep);

// One extraction of z_var from a multi-affine Cayley-inner h given a factor of
// its Wronskian in z_var. The result's coefficient no longer depends on z_var.
LftRep darlington_step(const FloatFunction& h, std::size_t var, const SOSFactor& phi);

struct StepRecord {
  std::size_t variable = 0;
  int extraction_case = 0;  // 1: q1 nonzero, 2: q1 identically zero
  std::size_t rank = 0;
  double residual = 0.0;
  double wronskian_norm = 0.0;
};

struct RealizationLog {
  std::vector<StepRecord> steps;
  std::vector<std::string> warnings;
  bool lifted = false;
  double hermitian_defect = 0.0;
};

SchurRealization realize_cayley_inner(const FloatFunction& h0, const ReductionPlan& plan,
                                      const SosOptions& sos = {}, RealizationLog* log = nullptr);

template <Coefficient T>
SchurRealization realize_pick(const RationalMatrixFunction<T>& f, const AnalysisOptions& options = {},
                              RealizationLog* log = nullptr);

TransferRealization schur_to_transfer(const SchurRealization& r);
SchurRealization transfer_to_schur(const TransferRealization& r);
PencilRealization schur_to_pencil(const SchurRealization& r);
SchurRealization to_schur(const Realization& r);
Realization convert_form(const SchurRealization& r, RealizationForm form);

Eigen::MatrixXcd eval_realization(const SchurRealization& r, std::span<const Complex> point);
Eigen::MatrixXcd eval_realization(const TransferRealization& r, std::span<const Complex> point);
Eigen::MatrixXcd eval_realization(const PencilRealization& r, std::span<const Complex> point);
Eigen::MatrixXcd eval_realization(const Realization& r, std::span<const Complex> point);

const Eigen::MatrixXcd& realization_matrix(const Realization& r);
std::size_t realization_size(const Realization& r);
RealizationForm form_of(const Realization& r);

struct KernelDecomposition {
  std::vector<Eigen::MatrixXcd> theta_z;
  std::vector<Eigen::MatrixXcd> theta_zeta;
  Eigen::MatrixXcd lhs;  // (f(z) - f(zeta)^*) / 2i
  Eigen::MatrixXcd rhs;  // assembled kernel sum
  double residual = 0.0;
};

KernelDecomposition kernel_decomposition(const PencilRealization& p, std::span<const Complex> z,
                                         std::span<const Complex> zeta);

struct CertificateReport {
  std::size_t points = 0;
  std::size_t skipped = 0;
  double max_eval_error = 0.0;
  bool eval_ok = false;
  double min_pick_eigenvalue = 0.0;
  bool pick_ok = false;
  double hermitian_defect = 0.0;
  bool hermitian_ok = false;
  bool projectors_ok = false;
  double identity_residual = 0.0;
  bool identity_ok = false;

  bool passed() const { return eval_ok && pick_ok && hermitian_ok && projectors_ok && identity_ok; }
};

CertificateReport certify(const Realization& r, const FloatFunction& f, std::size_t n_points, std::uint64_t seed,
                          double tol = 1e-9);

double inf_norm(const Eigen::MatrixXcd& m);

}  // namespace pickrealize
