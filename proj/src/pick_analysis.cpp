#include "pickrealize/pick_analysis.hpp"

#include <sstream>

#include "pickrealize/degree_reduction.hpp"
#include "pickrealize/realization.hpp"
#include "pickrealize/sampling.hpp"

namespace pickrealize {

std::string to_string(PickStatus status) {
  switch (status) {
    case PickStatus::CertifiedCayleyInner: return "CertifiedCayleyInner";
    case PickStatus::CertifiedPickViaRealization: return "CertifiedPickViaRealization";
    case PickStatus::Falsified: return "Falsified";
    case PickStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double negativity_threshold(const Eigen::MatrixXcd& m, double tol) { return -tol * (1.0 + hermitian_norm(m)); }

template <Coefficient T>
PickVerdict sample_pick(const RationalMatrixFunction<T>& f, std::size_t n_samples, std::uint64_t seed, double tol) {
  PointSampler sampler(seed);
  auto points = sample_regular_points(f, n_samples, sampler);
  PickVerdict v;
  for (const auto& z : points) {
    Eigen::MatrixXcd im = imaginary_part(f.eval(z));
    double lambda = min_eigenvalue(im);
    if (lambda < negativity_threshold(im, tol)) {
      v.status = PickStatus::Falsified;
      v.witness = Witness{WitnessKind::PickViolation, WitnessSpace::Original, z, 0, lambda};
      std::ostringstream os;
      os << "Im f has eigenvalue " << lambda << " at a sampled point of the upper half-plane";
      v.report = os.str();
      return v;
    }
  }
  v.report = "no Pick violation at " + std::to_string(points.size()) + " sampled points";
  return v;
}

template <Coefficient T>
SymmetryCheck<T> check_cayley_symmetry(const RationalMatrixFunction<T>& f) {
  using Traits = CoefficientTraits<T>;
  const auto& q = f.denominator();
  const T* lead = nullptr;
  double best = -1.0;
  for (const auto& [e, c] : q.terms()) {
    double mag = Traits::magnitude(c);
    if (mag > best) {
      best = mag;
      lead = &c;
    }
  }
  const T scale = Traits::from_int(1) / *lead;
  RationalMatrixFunction<T> normalized(f.numerator() * scale, f.denominator() * scale);
  const bool symmetric = conj_reflect(normalized.denominator()) == normalized.denominator() &&
                         herm_reflect(normalized.numerator()) == normalized.numerator();
  return {symmetric, std::move(normalized)};
}

template <Coefficient T>
std::vector<MatrixPolynomial<T>> wronskians(const RationalMatrixFunction<T>& f) {
  std::vector<MatrixPolynomial<T>> w;
  for (std::size_t k = 0; k < f.num_vars(); ++k) w.push_back(wronskian(f.denominator(), f.numerator(), k));
  return w;
}

template <Coefficient T>
PickVerdict cayley_inner_criterion(const RationalMatrixFunction<T>& f, const AnalysisOptions& options) {
  if (!is_multi_affine(f)) throw DegreeTooLow("criterion needs a multi-affine function");
  PickVerdict v;
  auto ws = wronskians(f);
  std::vector<FloatMatrixPolynomial> wf;
  for (const auto& w : ws) wf.push_back(to_float(w));

  PointSampler sampler(options.seed + 1);
  for (std::size_t s = 0; s < options.samples; ++s) {
    Point x = sampler.real(f.num_vars());
    for (std::size_t k = 0; k < wf.size(); ++k) {
      Eigen::MatrixXcd m = wf[k].eval(x);
      Eigen::MatrixXcd sym = (m + m.adjoint()) / 2.0;
      double lambda = min_eigenvalue(sym);
      if (lambda < negativity_threshold(sym, options.tol)) {
        v.status = PickStatus::Falsified;
        v.witness = Witness{WitnessKind::Wronskian, WitnessSpace::Original, x, k, lambda};
        std::ostringstream os;
        os << "Wronskian W_" << k << " has eigenvalue " << lambda << " at a real point";
        v.report = os.str();
        return v;
      }
    }
  }
  for (std::size_t k = 0; k < wf.size(); ++k) {
    try {
      v.certificates.push_back({k, sos_factor(wf[k], options.sos)});
    } catch (const SolverStalled& e) {
      v.status = PickStatus::Inconclusive;
      v.report = "Wronskian W_" + std::to_string(k) + ": " + e.what();
      return v;
    } catch (const NotHermitianStructure& e) {
      v.status = PickStatus::Inconclusive;
      v.report = "Wronskian W_" + std::to_string(k) + ": " + e.what();
      return v;
    }
  }
  v.status = PickStatus::CertifiedCayleyInner;
  v.report = "all " + std::to_string(wf.size()) + " Wronskians factored as sums of squares";
  return v;
}

template <Coefficient T>
PickVerdict verify(const RationalMatrixFunction<T>& f, const AnalysisOptions& options) {
  auto sampled = sample_pick(f, options.samples, options.seed, options.tol);
  if (sampled.status == PickStatus::Falsified) return sampled;

  auto sym = check_cayley_symmetry(f);
  if (sym.symmetric) {
    auto [h, plan] = reduce_to_multi_affine(sym.normalized);
    auto v = cayley_inner_criterion(h, options);
    if (v.witness && !plan.trivial()) v.witness->space = WitnessSpace::Reduced;
    return v;
  }

  PickVerdict v;
  try {
    RealizationLog log;
    auto r = realize_pick(f, options, &log);
    auto report = certify(r, to_float(f), options.samples, options.seed, options.tol);
    if (report.passed()) {
      v.status = PickStatus::CertifiedPickViaRealization;
      v.report = "realized with n = " + std::to_string(r.n()) + "; certificate passed";
    } else {
      v.report = "realization certificate failed";
    }
  } catch (const PickFalsified& e) {
    return e.verdict();
  } catch (const SolverStalled& e) {
    v.report = e.what();
  }
  return v;
}

#define PICKREALIZE_INSTANTIATE(T)                                                                         \
  template PickVerdict sample_pick(const RationalMatrixFunction<T>&, std::size_t, std::uint64_t, double); \
  template SymmetryCheck<T> check_cayley_symmetry(const RationalMatrixFunction<T>&);                      \
  template std::vector<MatrixPolynomial<T>> wronskians(const RationalMatrixFunction<T>&);                 \
  template PickVerdict cayley_inner_criterion(const RationalMatrixFunction<T>&, const AnalysisOptions&);  \
  template PickVerdict verify(const RationalMatrixFunction<T>&, const AnalysisOptions&);

PICKREALIZE_INSTANTIATE(GaussianRational)
PICKREALIZE_INSTANTIATE(Complex)

#undef PICKREALIZE_INSTANTIATE

}  // namespace pickrealize
