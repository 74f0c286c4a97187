#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pickrealize/polynomial.hpp"
#include "pickrealize/sos_engine.hpp"

namespace pickrealize {

enum class PickStatus { CertifiedCayleyInner, CertifiedPickViaRealization, Falsified, Inconclusive };

std::string to_string(PickStatus status);

enum class WitnessKind { PickViolation, Wronskian };

// Which variables a witness point refers to.
enum class WitnessSpace { Original, Reduced, Lifted };

struct Witness {
  WitnessKind kind = WitnessKind::PickViolation;
  WitnessSpace space = WitnessSpace::Original;
  Point point;
  std::size_t variable = 0;  // Wronskian index, only for kind == Wronskian
  double eigenvalue = 0.0;
};

struct VariableCertificate {
  std::size_t variable = 0;
  SOSFactor factor;
};

struct PickVerdict {
  PickStatus status = PickStatus::Inconclusive;
  std::optional<Witness> witness;
  std::vector<VariableCertificate> certificates;
  std::string report;
};

struct AnalysisOptions {
  double tol = 1e-9;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  SosOptions sos;
};

// Thrown by the realization pipeline when f is shown not to be Pick.
class PickFalsified : public Error {
 public:
  explicit PickFalsified(PickVerdict verdict)
      : Error("PickFalsified: " + verdict.report), verdict_(std::move(verdict)) {}
  const PickVerdict& verdict() const { return verdict_; }

 private:
  PickVerdict verdict_;
};

// Negativity threshold -tol (1 + ||M||) for a Hermitian matrix M.
double negativity_threshold(const Eigen::MatrixXcd& m, double tol);

template <Coefficient T>
PickVerdict sample_pick(const RationalMatrixFunction<T>& f, std::size_t n_samples, std::uint64_t seed,
                        double tol = 1e-9);

template <Coefficient T>
struct SymmetryCheck {
  bool symmetric = false;
  RationalMatrixFunction<T> normalized;
};

// Divides numerator and denominator by the largest-magnitude denominator
// coefficient, then tests q(conj z)^- = q(z) and P(conj z)^* = P(z).
template <Coefficient T>
SymmetryCheck<T> check_cayley_symmetry(const RationalMatrixFunction<T>& f);

template <Coefficient T>
std::vector<MatrixPolynomial<T>> wronskians(const RationalMatrixFunction<T>& f);

// Wronskian test for multi-affine Cayley-symmetric f.
template <Coefficient T>
PickVerdict cayley_inner_criterion(const RationalMatrixFunction<T>& f, const AnalysisOptions& options = {});

// Falsify by sampling, then certify: Wronskian SOS for symmetric f, realization
// plus certificate otherwise.
template <Coefficient T>
PickVerdict verify(const RationalMatrixFunction<T>& f, const AnalysisOptions& options = {});

}  // namespace pickrealize
