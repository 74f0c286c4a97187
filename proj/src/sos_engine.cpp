#include "pickrealize/sos_engine.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace pickrealize {

namespace {

template <Coefficient T>
MatrixPolynomial<T> transpose_coefficients(const MatrixPolynomial<T>& p) {
  MatrixPolynomial<T> r(p.num_vars(), p.cols(), p.rows());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.transpose());
  return r;
}

Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Coefficient-matching constraints: each Gram entry belongs to at most one group.
template <class Scalar>
struct AffineSet {
  Eigen::Index size = 0;
  std::vector<std::vector<Eigen::Index>> members;
  std::vector<Scalar> targets;
  std::vector<int> group_of;
  double unreachable = 0.0;

  double residual(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& g) const {
    double r = unreachable;
    for (std::size_t k = 0; k < members.size(); ++k) {
      Scalar s(0);
      for (Eigen::Index f : members[k]) s += g.data()[f];
      r = std::max(r, std::abs(targets[k] - s));
    }
    return r;
  }

  void project(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& g) const {
    for (std::size_t k = 0; k < members.size(); ++k) {
      Scalar s(0);
      for (Eigen::Index f : members[k]) s += g.data()[f];
      Scalar delta = (targets[k] - s) / static_cast<double>(members[k].size());
      for (Eigen::Index f : members[k]) g.data()[f] += delta;
    }
  }
};

template <class Scalar>
AffineSet<Scalar> build_affine_set(const GramProblem& p) {
  AffineSet<Scalar> set;
  const auto K = ix(p.size());
  set.size = K;
  set.group_of.assign(static_cast<std::size_t>(K * K), -1);
  std::map<std::tuple<Exponent, std::size_t, std::size_t>, int> key_to_group;
  for (Eigen::Index j = 0; j < K; ++j)
    for (Eigen::Index i = 0; i < K; ++i) {
      const auto& [bi, ai] = p.index[static_cast<std::size_t>(i)];
      const auto& [bj, aj] = p.index[static_cast<std::size_t>(j)];
      auto key = std::make_tuple(p.basis[bi] + p.basis[bj], ai, aj);
      auto [it, inserted] = key_to_group.try_emplace(key, static_cast<int>(set.members.size()));
      if (inserted) {
        set.members.emplace_back();
        Complex t = p.target.coefficient(std::get<0>(key)).to_eigen()(ix(ai), ix(aj));
        if constexpr (std::is_same_v<Scalar, double>) set.targets.push_back(t.real());
        else set.targets.push_back(t);
      }
      set.members[static_cast<std::size_t>(it->second)].push_back(i + j * K);
      set.group_of[static_cast<std::size_t>(i + j * K)] = it->second;
    }
  for (const auto& [e, c] : p.target.terms())
    for (std::size_t a = 0; a < c.rows(); ++a)
      for (std::size_t b = 0; b < c.cols(); ++b)
        if (!key_to_group.count(std::make_tuple(e, a, b)))
          set.unreachable = std::max(set.unreachable, std::abs(c(a, b)));
  return set;
}

template <class Mat>
Mat project_psd(const Mat& m) {
  if (m.size() == 0) return m;
  Mat sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().adjoint();
}

template <class Mat>
double min_eig(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Mat sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

template <class Scalar>
GramSolveStats dykstra(const AffineSet<Scalar>& set, int max_iters, double tol,
                       Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& out) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  constexpr int kStallWindow = 2000;
  GramSolveStats stats;
  Mat x = Mat::Zero(set.size, set.size);
  set.project(x);
  stats.residual = set.residual(x);
  if (min_eig(x) >= -tol) {
    out = x;
    stats.converged = stats.residual <= tol;
    return stats;
  }
  Mat q = Mat::Zero(set.size, set.size);
  Mat best = project_psd(x);
  double best_residual = std::numeric_limits<double>::infinity();
  double mark = best_residual;
  int last_improvement = 0;
  for (int it = 1; it <= max_iters; ++it) {
    stats.iterations = it;
    Mat y = project_psd(Mat(x + q));
    q = x + q - y;
    double r = set.residual(y);
    if (r < best_residual) {
      best_residual = r;
      best = y;
    }
    if (r <= tol) {
      stats.converged = true;
      break;
    }
    if (r < 0.99 * mark) {
      mark = r;
      last_improvement = it;
    }
    if (it - last_improvement > kStallWindow) break;
    x = std::move(y);
    set.project(x);
  }
  stats.residual = best_residual;
  out = std::move(best);
  return stats;
}

bool has_real_coefficients(const FloatMatrixPolynomial& w) {
  for (const auto& [e, c] : w.terms())
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j)
        if (c(i, j).imag() != 0.0) return false;
  return true;
}

// Levenberg-Marquardt on the complex factor L (columns of Phi stacked by index) for
// A(L L^*) = targets.
Eigen::MatrixXcd polish_factor(const Eigen::MatrixXcd& l0, const AffineSet<Complex>& set, double stop) {
  const Eigen::Index K = set.size;
  const Eigen::Index r = l0.cols();
  const auto groups = static_cast<Eigen::Index>(set.members.size());
  if (K == 0 || r == 0 || groups == 0) return l0;
  auto residual_vector = [&](const Eigen::MatrixXcd& l) {
    Eigen::MatrixXcd g = l * l.adjoint();
    Eigen::VectorXd res(2 * groups);
    for (Eigen::Index k = 0; k < groups; ++k) {
      Complex s(0.0, 0.0);
      for (Eigen::Index f : set.members[static_cast<std::size_t>(k)]) s += g.data()[f];
      Complex d = s - set.targets[static_cast<std::size_t>(k)];
      res(k) = d.real();
      res(groups + k) = d.imag();
    }
    return res;
  };
  Eigen::MatrixXcd l = l0;
  Eigen::VectorXd res = residual_vector(l);
  double current = res.cwiseAbs().maxCoeff();
  double mu = 1e-6;
  for (int iter = 0; iter < 200 && current > stop; ++iter) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * groups, 2 * K * r);
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index p = 0; p < K; ++p) {
        const Eigen::Index col_re = (j * K + p) * 2;
        const Eigen::Index col_im = col_re + 1;
        for (Eigen::Index t = 0; t < K; ++t) {
          int g_row = set.group_of[static_cast<std::size_t>(p + t * K)];
          int g_col = set.group_of[static_cast<std::size_t>(t + p * K)];
          Complex lt = l(t, j);
          if (g_row >= 0) {
            Complex d_re = std::conj(lt);
            Complex d_im = Complex(0.0, 1.0) * std::conj(lt);
            jac(g_row, col_re) += d_re.real();
            jac(groups + g_row, col_re) += d_re.imag();
            jac(g_row, col_im) += d_im.real();
            jac(groups + g_row, col_im) += d_im.imag();
          }
          if (g_col >= 0) {
            Complex d_re = lt;
            Complex d_im = Complex(0.0, -1.0) * lt;
            jac(g_col, col_re) += d_re.real();
            jac(groups + g_col, col_re) += d_re.imag();
            jac(g_col, col_im) += d_im.real();
            jac(groups + g_col, col_im) += d_im.imag();
          }
        }
      }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * res;
    const double base = res.squaredNorm();
    bool improved = false;
    for (int attempt = 0; attempt < 12 && !improved; ++attempt) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
      Eigen::VectorXd step = lhs.ldlt().solve(-grad);
      Eigen::MatrixXcd trial = l;
      for (Eigen::Index j = 0; j < r; ++j)
        for (Eigen::Index p = 0; p < K; ++p) {
          const Eigen::Index c = (j * K + p) * 2;
          trial(p, j) += Complex(step(c), step(c + 1));
        }
      Eigen::VectorXd trial_res = residual_vector(trial);
      if (trial_res.squaredNorm() < base) {
        l = std::move(trial);
        res = std::move(trial_res);
        current = res.cwiseAbs().maxCoeff();
        mu = std::max(mu / 10.0, 1e-15);
        improved = true;
      } else {
        mu *= 10.0;
      }
    }
    if (!improved) break;
  }
  return l;
}

FloatMatrixPolynomial phi_from_factor(const Eigen::MatrixXcd& l, const GramProblem& layout) {
  const std::size_t r = static_cast<std::size_t>(l.cols());
  std::map<Exponent, CoeffMatrix<Complex>> coeffs;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    const auto& [b, a] = layout.index[p];
    auto [it, inserted] = coeffs.try_emplace(layout.basis[b], layout.rows(), r);
    for (std::size_t j = 0; j < r; ++j) it->second(a, j) += l(ix(p), ix(j));
  }
  FloatMatrixPolynomial phi(layout.target.num_vars(), layout.rows(), r);
  for (const auto& [e, c] : coeffs) phi.add_term(e, c);
  return phi;
}

// Eigen factor with descending eigenvalues, truncation and sign normalization.
Eigen::MatrixXcd eigen_factor(const Eigen::MatrixXcd& g) {
  const Eigen::Index K = g.rows();
  if (K == 0) return Eigen::MatrixXcd(0, 0);
  Eigen::MatrixXcd sym = (g + g.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double lmax = lambda(K - 1);
  std::vector<Eigen::Index> keep;
  if (lmax > 0.0)
    for (Eigen::Index k = K - 1; k >= 0; --k)
      if (lambda(k) > 1e-10 * lmax) keep.push_back(k);
  Eigen::MatrixXcd l(K, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    Eigen::VectorXcd v = es.eigenvectors().col(keep[c]);
    for (Eigen::Index i = 0; i < K; ++i)
      if (std::abs(v(i)) > 1e-12) {
        v *= std::conj(v(i)) / std::abs(v(i));
        v(i) = Complex(v(i).real(), 0.0);
        break;
      }
    l.col(ix(c)) = std::sqrt(lambda(keep[c])) * v;
  }
  return l;
}

void collect_monomials(const std::vector<std::size_t>& active, std::size_t pos, int budget, Exponent& current,
                       std::vector<Exponent>& out) {
  if (pos == active.size()) {
    out.push_back(current);
    return;
  }
  for (int p = 0; p <= budget; ++p) {
    current[active[pos]] = p;
    collect_monomials(active, pos + 1, budget - p, current, out);
  }
  current[active[pos]] = 0;
}

void sort_basis(std::vector<Exponent>& basis) {
  std::sort(basis.begin(), basis.end(), [](const Exponent& a, const Exponent& b) {
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
    return b < a;
  });
}

}  // namespace

template <Coefficient T>
MatrixPolynomial<T> hermitian_to_real_embedding(const MatrixPolynomial<T>& w) {
  using Traits = CoefficientTraits<T>;
  if (!w.is_square()) throw ShapeMismatch("embedding needs a square polynomial");
  if (!(herm_reflect(w) == w)) throw NotHermitianStructure("W(conj z)^* differs from W(z)");
  const T half = Traits::inverse_of(2);
  const T minus_half_i = -(Traits::imaginary_unit() * half);
  auto w_bar = conj_coefficients(w);
  auto a = (w + w_bar) * half;
  auto b = (w - w_bar) * minus_half_i;
  return MatrixPolynomial<T>::from_blocks({{a, b}, {transpose_coefficients(b), a}});
}

template MatrixPolynomial<GaussianRational> hermitian_to_real_embedding(const MatrixPolynomial<GaussianRational>&);
template MatrixPolynomial<Complex> hermitian_to_real_embedding(const MatrixPolynomial<Complex>&);

Eigen::MatrixXcd psd_project(const Eigen::MatrixXcd& m) { return project_psd(m); }
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& m) { return project_psd(m); }

std::vector<std::size_t> active_variables(const FloatMatrixPolynomial& w) {
  std::vector<std::size_t> active;
  for (std::size_t v = 0; v < w.num_vars(); ++v)
    if (w.degree_in(v) > 0) active.push_back(v);
  return active;
}

std::vector<Exponent> multi_affine_basis(const FloatMatrixPolynomial& w) {
  auto active = active_variables(w);
  std::vector<Exponent> basis;
  for (std::size_t mask = 0; mask < (std::size_t{1} << active.size()); ++mask) {
    Exponent e(w.num_vars());
    for (std::size_t k = 0; k < active.size(); ++k)
      if (mask & (std::size_t{1} << k)) e[active[k]] = 1;
    basis.push_back(std::move(e));
  }
  sort_basis(basis);
  return basis;
}

std::vector<Exponent> total_degree_basis(const FloatMatrixPolynomial& w, int max_degree) {
  auto active = active_variables(w);
  std::vector<Exponent> basis;
  Exponent current(w.num_vars());
  collect_monomials(active, 0, max_degree, current, basis);
  sort_basis(basis);
  return basis;
}

GramProblem make_gram_problem(const FloatMatrixPolynomial& w, std::vector<Exponent> basis) {
  if (!w.is_square()) throw ShapeMismatch("Gram problem needs a square target");
  GramProblem p;
  p.basis = std::move(basis);
  p.target = w;
  const std::size_t d = w.num_vars();
  for (const auto& b : p.basis)
    if (b.size() != d) throw ShapeMismatch("basis exponent length differs from variable count");
  for (std::size_t a = 0; a < w.rows(); ++a) {
    auto diag = w.entry(a, a);
    if (diag.is_zero()) continue;
    std::vector<int> lo(d, std::numeric_limits<int>::max()), hi(d, 0);
    for (const auto& [e, c] : diag.terms())
      for (std::size_t v = 0; v < d; ++v) {
        lo[v] = std::min(lo[v], e[v]);
        hi[v] = std::max(hi[v], e[v]);
      }
    for (std::size_t b = 0; b < p.basis.size(); ++b) {
      bool ok = true;
      for (std::size_t v = 0; v < d && ok; ++v)
        ok = 2 * p.basis[b][v] >= lo[v] && 2 * p.basis[b][v] <= hi[v];
      if (ok) p.index.emplace_back(b, a);
    }
  }
  p.gram = Eigen::MatrixXcd::Zero(ix(p.size()), ix(p.size()));
  return p;
}

GramSolveStats gram_solve_iterate(GramProblem& problem, int max_iters, double tol) {
  const double scaled_tol = tol * (1.0 + problem.target.max_abs_coefficient());
  if (has_real_coefficients(problem.target)) {
    auto set = build_affine_set<double>(problem);
    Eigen::MatrixXd g;
    auto stats = dykstra(set, max_iters, scaled_tol, g);
    problem.gram = g.cast<Complex>();
    return stats;
  }
  auto set = build_affine_set<Complex>(problem);
  Eigen::MatrixXcd g;
  auto stats = dykstra(set, max_iters, scaled_tol, g);
  problem.gram = std::move(g);
  return stats;
}

GramProblem gram_solve(GramProblem problem, int max_iters, double tol) {
  auto stats = gram_solve_iterate(problem, max_iters, tol);
  if (!stats.converged)
    throw SolverStalled("no PSD Gram matrix found after " + std::to_string(stats.iterations) +
                        " iterations (residual " + std::to_string(stats.residual) + ")");
  return problem;
}

SOSFactor factor_gram(const Eigen::MatrixXcd& g, const GramProblem& layout) {
  if (static_cast<std::size_t>(g.rows()) != layout.size()) throw DimensionMismatch("Gram size differs from layout");
  SOSFactor f;
  f.phi = phi_from_factor(eigen_factor(g), layout);
  f.residual = sos_residual(f.phi, layout.target);
  return f;
}

FloatMatrixPolynomial recombine_embedded_factor(const FloatMatrixPolynomial& r) {
  if (r.rows() % 2 != 0) throw ShapeMismatch("embedded factor must have an even row count");
  const std::size_t m = r.rows() / 2;
  auto r1 = r.block(0, 0, m, r.cols());
  auto r2 = r.block(m, 0, m, r.cols());
  return (r1 - r2 * Complex(0.0, 1.0)) * Complex(1.0 / std::sqrt(2.0), 0.0);
}

FloatMatrixPolynomial sos_product(const FloatMatrixPolynomial& phi) { return phi * herm_reflect(phi); }

double sos_residual(const FloatMatrixPolynomial& phi, const FloatMatrixPolynomial& w) {
  if (phi.cols() == 0) return w.max_abs_coefficient();
  return (sos_product(phi) - w).max_abs_coefficient();
}

SOSFactor sos_factor(const FloatMatrixPolynomial& w, const SosOptions& options) {
  if (!w.is_square()) throw ShapeMismatch("SOS target must be square");
  const double norm = w.max_abs_coefficient();
  auto reflected = herm_reflect(w);
  if ((w - reflected).max_abs_coefficient() > 1e-9 * (1.0 + norm))
    throw NotHermitianStructure("W(conj z)^* differs from W(z)");
  FloatMatrixPolynomial wh = (w + reflected) * Complex(0.5, 0.0);
  if (wh.is_zero()) return {FloatMatrixPolynomial(w.num_vars(), w.rows(), 0), 0.0};

  const double verify_tol = 1e-8 * (1.0 + norm);
  const auto embedded = hermitian_to_real_embedding(wh);
  std::vector<std::vector<Exponent>> bases{multi_affine_basis(wh)};
  if (options.escalate) {
    auto wide = total_degree_basis(wh, (wh.total_degree() + 1) / 2);
    for (const auto& e : bases.front())
      if (std::find(wide.begin(), wide.end(), e) == wide.end()) wide.push_back(e);
    sort_basis(wide);
    if (wide != bases.front()) bases.push_back(std::move(wide));
  }

  double best = std::numeric_limits<double>::infinity();
  for (const auto& basis : bases) {
    auto problem = make_gram_problem(embedded, basis);
    auto stats = gram_solve_iterate(problem, options.max_iters, options.tol);
    if (!stats.converged && stats.residual > 0.25 * (1.0 + norm)) {
      best = std::min(best, stats.residual);
      continue;
    }
    auto layout = make_gram_problem(wh, basis);
    const auto K = ix(layout.size());
    if (2 * K != ix(problem.size())) throw DimensionMismatch("embedded Gram layout mismatch");
    const Eigen::MatrixXcd& e = problem.gram;
    Eigen::MatrixXcd gc = (e.topLeftCorner(K, K) + e.bottomRightCorner(K, K)) / 2.0 +
                          Complex(0.0, 0.5) * (e.topRightCorner(K, K) - e.bottomLeftCorner(K, K));
    Eigen::MatrixXcd l = eigen_factor(gc);
    SOSFactor factor{phi_from_factor(l, layout), 0.0};
    factor.residual = sos_residual(factor.phi, wh);
    if (factor.residual > 1e-14 * (1.0 + norm)) {
      // Polish leading-eigenvector truncations by increasing rank.
      auto set = build_affine_set<Complex>(layout);
      for (Eigen::Index r = 1; r <= l.cols(); ++r) {
        Eigen::MatrixXcd polished = polish_factor(l.leftCols(r), set, 1e-15 * (1.0 + norm));
        SOSFactor candidate{phi_from_factor(polished, layout), 0.0};
        candidate.residual = sos_residual(candidate.phi, wh);
        if (candidate.residual < factor.residual) factor = std::move(candidate);
        if (factor.residual <= 1e-12 * (1.0 + norm)) break;
      }
    }
    factor.residual = sos_residual(factor.phi, w);
    if (factor.residual <= verify_tol) return factor;
    best = std::min(best, factor.residual);
  }
  throw SolverStalled("no SOS factor within tolerance (best residual " + std::to_string(best) + ")");
}

}  // namespace pickrealize
