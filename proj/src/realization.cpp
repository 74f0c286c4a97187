#include "pickrealize/realization.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pickrealize/cayley_lift.hpp"
#include "pickrealize/sampling.hpp"

namespace pickrealize {

namespace {

Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

constexpr double kSingularRcond = 1e-12;

Eigen::MatrixXcd solve_checked(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& rhs) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  if (!(lu.rcond() >= kSingularRcond)) throw SingularAtPoint("resolvent block is numerically singular");
  return lu.solve(rhs);
}

// Diagonal of the parameter block Lambda at a point.
Eigen::VectorXcd slot_values(const std::vector<int>& lambda, std::span<const Complex> point) {
  Eigen::VectorXcd v(ix(lambda.size()));
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == kConstantSlot) v(ix(i)) = 0.0;
    else {
      if (static_cast<std::size_t>(lambda[i]) >= point.size()) throw DimensionMismatch("slot variable out of range");
      v(ix(i)) = point[static_cast<std::size_t>(lambda[i])];
    }
  }
  return v;
}

Eigen::VectorXcd structure_values(const BlockStructure& s, std::span<const Complex> point, Complex constant) {
  if (point.size() != s.num_vars()) throw DimensionMismatch("evaluation point has wrong dimension");
  Eigen::VectorXcd v(ix(s.total()));
  std::size_t pos = 0;
  for (std::size_t i = 0; i < s.n0; ++i) v(ix(pos++)) = constant;
  for (std::size_t k = 0; k < s.num_vars(); ++k)
    for (std::size_t i = 0; i < s.blocks[k]; ++i) v(ix(pos++)) = point[k];
  return v;
}

FloatMatrixPolynomial permute_symmetric(const FloatMatrixPolynomial& p, const std::vector<std::size_t>& order) {
  FloatMatrixPolynomial r(p.num_vars(), p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) {
    CoeffMatrix<Complex> q(p.rows(), p.cols());
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = 0; j < order.size(); ++j) q(i, j) = c(order[i], order[j]);
    r.add_term(e, q);
  }
  return r;
}

Eigen::MatrixXcd permute_symmetric(const Eigen::MatrixXcd& m, const std::vector<std::size_t>& order) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j) r(ix(i), ix(j)) = m(ix(order[i]), ix(order[j]));
  return r;
}

// Full-size permutation that stably sorts the slots by key (constant first).
std::vector<std::size_t> reblock_order(std::size_t m, const std::vector<int>& lambda) {
  std::vector<std::size_t> slots(lambda.size());
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  std::stable_sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) { return lambda[a] < lambda[b]; });
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t s : slots) order.push_back(m + s);
  return order;
}

Eigen::MatrixXcd hermitian_sqrt_factor(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXcd sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return root.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_zero_one_diagonal(const Eigen::MatrixXcd& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      Complex v = a(i, j);
      if (i != j && v != Complex(0.0, 0.0)) return false;
      if (i == j && v != Complex(0.0, 0.0) && v != Complex(1.0, 0.0)) return false;
    }
  return true;
}

}  // namespace

double inf_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXcd eval_lft(const LftRep& rep, std::span<const Complex> point) {
  Eigen::MatrixXcd g = rep.coefficient.eval(point);
  const auto m = ix(rep.m);
  const auto n = ix(rep.n());
  if (g.rows() != m + n) throw DimensionMismatch("coefficient size differs from m + n");
  if (n == 0) return g;
  Eigen::MatrixXcd block = g.bottomRightCorner(n, n);
  block.diagonal() += slot_values(rep.lambda, point);
  return g.topLeftCorner(m, m) - g.topRightCorner(m, n) * solve_checked(block, g.bottomLeftCorner(n, m));
}

LftRep superpose(const LftRep& outer, const LftRep& inner) {
  if (inner.m != outer.m + outer.n())
    throw DimensionMismatch("inner representation size " + std::to_string(inner.m) + " does not match outer " +
                            std::to_string(outer.m + outer.n()));
  LftRep r;
  r.coefficient = inner.coefficient;
  r.m = outer.m;
  r.lambda = outer.lambda;
  r.lambda.insert(r.lambda.end(), inner.lambda.begin(), inner.lambda.end());
  return r;
}

LftRep permute_reblock(const LftRep& rep) {
  auto order = reblock_order(rep.m, rep.lambda);
  LftRep r;
  r.m = rep.m;
  r.coefficient = FloatFunction(permute_symmetric(rep.coefficient.numerator(), order), rep.coefficient.denominator());
  for (std::size_t i = rep.m; i < order.size(); ++i) r.lambda.push_back(rep.lambda[order[i] - rep.m]);
  return r;
}

LftRep darlington_step(const FloatFunction& h, std::size_t var, const SOSFactor& phi) {
  if (var >= h.num_vars()) throw DimensionMismatch("variable index out of range");
  auto [p1, p2] = split_affine(h.numerator(), var);
  auto [q1, q2] = split_affine(h.denominator(), var);
  if (q1.is_zero() && q2.is_zero()) throw InconsistentCase("both denominator parts vanish");
  auto w = p1 * q2 - p2 * q1;
  const double residual = sos_residual(phi.phi, w);
  if (residual > 1e-8 * (1.0 + w.max_abs_coefficient()))
    throw ResidualTooLarge("factor residual " + std::to_string(residual) + " for Wronskian in variable " +
                           std::to_string(var));
  const std::size_t m = h.size();
  const std::size_t r = phi.rank();
  const std::size_t d = h.num_vars();
  const int v = static_cast<int>(var);

  LftRep rep;
  rep.m = m;
  if (!q1.is_zero()) {
    if (r == 0) {
      rep.coefficient = FloatFunction(p1, q1);
      return rep;
    }
    const auto& f = phi.phi;
    auto num = FloatMatrixPolynomial::from_blocks(
        {{p1, f}, {herm_reflect(f), FloatMatrixPolynomial::scalar_identity(q2, r)}});
    rep.coefficient = FloatFunction(std::move(num), q1);
    rep.lambda.assign(r, v);
    return rep;
  }
  if (r == 0) {
    rep.coefficient = FloatFunction(p2, q2);
    return rep;
  }
  const auto& f = phi.phi;
  FloatMatrixPolynomial zero_mr(d, m, r), zero_rm(d, r, m), zero_rr(d, r, r);
  auto q2_eye = FloatMatrixPolynomial::scalar_identity(q2, r);
  auto num = FloatMatrixPolynomial::from_blocks(
      {{p2, f, zero_mr}, {herm_reflect(f), zero_rr, q2_eye}, {zero_rm, q2_eye, zero_rr}});
  rep.coefficient = FloatFunction(std::move(num), q2);
  rep.lambda.assign(r, kConstantSlot);
  rep.lambda.insert(rep.lambda.end(), r, v);
  return rep;
}

SchurRealization realize_cayley_inner(const FloatFunction& h0, const ReductionPlan& plan, const SosOptions& sos,
                                      RealizationLog* log) {
  if (!is_multi_affine(h0)) throw DegreeTooLow("realization loop needs a multi-affine function");
  if (plan.fresh_count != h0.num_vars()) throw DimensionMismatch("reduction plan does not match function");
  LftRep rep{h0, h0.size(), {}};
  for (std::size_t var = 0; var < h0.num_vars(); ++var) {
    const auto& h = rep.coefficient;
    auto [p1, p2] = split_affine(h.numerator(), var);
    auto [q1, q2] = split_affine(h.denominator(), var);
    auto w = p1 * q2 - p2 * q1;
    SOSFactor phi = sos_factor(w, sos);
    LftRep step = darlington_step(h, var, phi);
    if (log) log->steps.push_back({var, q1.is_zero() ? 2 : 1, phi.rank(), phi.residual, w.max_abs_coefficient()});
    rep = superpose(rep, step);
  }

  const auto& num = rep.coefficient.numerator();
  const auto& den = rep.coefficient.denominator();
  if (num.total_degree() > 0 || den.total_degree() > 0)
    throw NonConstantTerminal("terminal coefficient still depends on the variables");
  const Exponent zero(h0.num_vars());
  Eigen::MatrixXcd b = num.coefficient(zero).to_eigen() / den.coefficient(zero);
  const double defect = inf_norm(b - b.adjoint());
  if (log) log->hermitian_defect = defect;
  if (defect > 1e-9 * (1.0 + inf_norm(b)))
    throw NotHermitianStructure("terminal coefficient asymmetry " + std::to_string(defect));
  b = (b + b.adjoint()) / 2.0;

  auto owner = plan.owners();
  std::vector<int> labels = rep.lambda;
  for (int& l : labels)
    if (l != kConstantSlot) l = static_cast<int>(owner[static_cast<std::size_t>(l)]);
  auto order = reblock_order(rep.m, labels);

  SchurRealization out;
  out.m = rep.m;
  out.H = permute_symmetric(b, order);
  out.hermitian = true;
  out.structure.blocks.assign(plan.groups.size(), 0);
  for (int l : labels) {
    if (l == kConstantSlot) ++out.structure.n0;
    else ++out.structure.blocks[static_cast<std::size_t>(l)];
  }
  return out;
}

template <Coefficient T>
SchurRealization realize_pick(const RationalMatrixFunction<T>& f, const AnalysisOptions& options,
                              RealizationLog* log) {
  RealizationLog local;
  RealizationLog& lg = log ? *log : local;
  auto sampled = sample_pick(f, options.samples, options.seed, options.tol);
  if (sampled.status == PickStatus::Falsified) throw PickFalsified(std::move(sampled));
  if (auto warning = coprimality_warning(f, options.seed)) lg.warnings.push_back(*warning);

  auto sym = check_cayley_symmetry(f);
  RationalMatrixFunction<T> target = sym.normalized;
  lg.lifted = !sym.symmetric;
  if (lg.lifted) target = lift(f).g;
  auto [h0, plan] = reduce_to_multi_affine(target);
  auto verdict = cayley_inner_criterion(h0, options);
  if (verdict.status == PickStatus::Falsified) {
    if (verdict.witness) verdict.witness->space = lg.lifted ? WitnessSpace::Lifted : WitnessSpace::Reduced;
    throw PickFalsified(std::move(verdict));
  }
  if (verdict.status != PickStatus::CertifiedCayleyInner) throw SolverStalled(verdict.report);

  auto r = realize_cayley_inner(to_float(h0), plan, options.sos, &lg);
  if (lg.lifted) {
    r.lift_variable = LiftResult<T>::lift_variable;
    r = specialize_lift(r);
  }
  return r;
}

template SchurRealization realize_pick(const RationalMatrixFunction<GaussianRational>&, const AnalysisOptions&,
                                       RealizationLog*);
template SchurRealization realize_pick(const RationalMatrixFunction<Complex>&, const AnalysisOptions&,
                                       RealizationLog*);

// Pads with a coupling block J selecting the variable blocks so the constant
// slots can carry the identity of the transfer form:
// H_t = [[A, B, 0], [C, D + I_n, J], [0, J^T, 0]], Z_t = diag(I_n, z_k I_{nk}).
TransferRealization schur_to_transfer(const SchurRealization& r) {
  const std::size_t m = r.m, n = r.n(), nv = n - r.structure.n0;
  TransferRealization t;
  t.m = m;
  t.hermitian = r.hermitian;
  t.structure.n0 = n;
  t.structure.blocks = r.structure.blocks;
  t.H = Eigen::MatrixXcd::Zero(ix(m + n + nv), ix(m + n + nv));
  t.H.topLeftCorner(ix(m + n), ix(m + n)) = r.H;
  t.H.block(ix(m), ix(m), ix(n), ix(n)) += Eigen::MatrixXcd::Identity(ix(n), ix(n));
  for (std::size_t i = 0; i < nv; ++i) {
    t.H(ix(m + r.structure.n0 + i), ix(m + n + i)) = 1.0;
    t.H(ix(m + n + i), ix(m + r.structure.n0 + i)) = 1.0;
  }
  return t;
}

// H_s = [[A, B, 0], [C, D - diag(I_{n0}, 0), J], [0, J^T, 0]] with all of the
// transfer state as constant block.
SchurRealization transfer_to_schur(const TransferRealization& r) {
  const std::size_t m = r.m, n = r.structure.total(), nv = n - r.structure.n0;
  SchurRealization s;
  s.m = m;
  s.hermitian = r.hermitian;
  s.structure.n0 = n;
  s.structure.blocks = r.structure.blocks;
  s.H = Eigen::MatrixXcd::Zero(ix(m + n + nv), ix(m + n + nv));
  s.H.topLeftCorner(ix(m + n), ix(m + n)) = r.H;
  for (std::size_t i = 0; i < r.structure.n0; ++i) s.H(ix(m + i), ix(m + i)) -= 1.0;
  for (std::size_t i = 0; i < nv; ++i) {
    s.H(ix(m + r.structure.n0 + i), ix(m + n + i)) = 1.0;
    s.H(ix(m + n + i), ix(m + r.structure.n0 + i)) = 1.0;
  }
  return s;
}

PencilRealization schur_to_pencil(const SchurRealization& r) {
  PencilRealization p;
  p.m = r.m;
  p.H = r.H;
  p.structure = r.structure;
  p.hermitian = r.hermitian;
  const auto size = r.H.rows();
  for (std::size_t k = 0; k < r.structure.num_vars(); ++k) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(size, size);
    const std::size_t off = r.m + r.structure.offset(k);
    for (std::size_t i = 0; i < r.structure.blocks[k]; ++i) a(ix(off + i), ix(off + i)) = 1.0;
    p.A.push_back(std::move(a));
  }
  return p;
}

SchurRealization to_schur(const Realization& r) {
  if (const auto* s = std::get_if<SchurRealization>(&r)) return *s;
  if (const auto* t = std::get_if<TransferRealization>(&r)) return transfer_to_schur(*t);
  const auto& p = std::get<PencilRealization>(r);
  SchurRealization s;
  s.m = p.m;
  s.H = p.H;
  s.structure = p.structure;
  s.hermitian = p.hermitian;
  return s;
}

Realization convert_form(const SchurRealization& r, RealizationForm form) {
  switch (form) {
    case RealizationForm::Schur: return r;
    case RealizationForm::Transfer: return schur_to_transfer(r);
    case RealizationForm::Pencil: return schur_to_pencil(r);
  }
  return r;
}

Eigen::MatrixXcd eval_realization(const SchurRealization& r, std::span<const Complex> point) {
  const auto n = ix(r.n());
  if (n == 0) return r.A();
  Eigen::MatrixXcd dz = r.D();
  dz.diagonal() += structure_values(r.structure, point, 0.0);
  return r.A() - r.B() * solve_checked(dz, r.C());
}

Eigen::MatrixXcd eval_realization(const TransferRealization& r, std::span<const Complex> point) {
  const auto m = ix(r.m), n = ix(r.structure.total());
  Eigen::MatrixXcd a = r.H.topLeftCorner(m, m);
  if (n == 0) return a;
  Eigen::VectorXcd z = structure_values(r.structure, point, 1.0);
  Eigen::MatrixXcd dz = r.H.bottomRightCorner(n, n) * z.asDiagonal();
  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(n, n) - dz;
  Eigen::MatrixXcd x = solve_checked(lhs, r.H.bottomLeftCorner(n, m));
  return a + r.H.topRightCorner(m, n) * z.asDiagonal() * x;
}

Eigen::MatrixXcd eval_realization(const PencilRealization& r, std::span<const Complex> point) {
  if (point.size() != r.A.size()) throw DimensionMismatch("evaluation point has wrong dimension");
  Eigen::MatrixXcd a = r.H;
  for (std::size_t k = 0; k < r.A.size(); ++k) a += point[k] * r.A[k];
  const auto m = ix(r.m), n = a.rows() - ix(r.m);
  if (n == 0) return a;
  return a.topLeftCorner(m, m) - a.topRightCorner(m, n) * solve_checked(a.bottomRightCorner(n, n), a.bottomLeftCorner(n, m));
}

Eigen::MatrixXcd eval_realization(const Realization& r, std::span<const Complex> point) {
  return std::visit([&](const auto& x) { return eval_realization(x, point); }, r);
}

const Eigen::MatrixXcd& realization_matrix(const Realization& r) {
  return std::visit([](const auto& x) -> const Eigen::MatrixXcd& { return x.H; }, r);
}

std::size_t realization_size(const Realization& r) {
  return std::visit([](const auto& x) { return x.m; }, r);
}

RealizationForm form_of(const Realization& r) {
  if (std::holds_alternative<SchurRealization>(r)) return RealizationForm::Schur;
  if (std::holds_alternative<TransferRealization>(r)) return RealizationForm::Transfer;
  return RealizationForm::Pencil;
}

KernelDecomposition kernel_decomposition(const PencilRealization& p, std::span<const Complex> z,
                                         std::span<const Complex> zeta) {
  if (z.size() != p.A.size() || zeta.size() != p.A.size())
    throw DimensionMismatch("evaluation point has wrong dimension");
  const auto m = ix(p.m), n = p.H.rows() - ix(p.m);
  auto state = [&](std::span<const Complex> w) {
    Eigen::MatrixXcd a = p.H;
    for (std::size_t k = 0; k < p.A.size(); ++k) a += w[k] * p.A[k];
    Eigen::MatrixXcd x(a.rows(), m);
    x.topRows(m) = Eigen::MatrixXcd::Identity(m, m);
    if (n > 0) x.bottomRows(n) = -solve_checked(a.bottomRightCorner(n, n), a.bottomLeftCorner(n, m));
    return x;
  };
  Eigen::MatrixXcd xz = state(z), xw = state(zeta);
  std::vector<Eigen::MatrixXcd> factors{hermitian_sqrt_factor(imaginary_part(p.H))};
  for (const auto& a : p.A) factors.push_back(hermitian_sqrt_factor(a));

  KernelDecomposition k;
  k.rhs = Eigen::MatrixXcd::Zero(m, m);
  for (std::size_t j = 0; j < factors.size(); ++j) {
    k.theta_z.push_back(factors[j] * xz);
    k.theta_zeta.push_back(factors[j] * xw);
    Eigen::MatrixXcd term = k.theta_zeta.back().adjoint() * k.theta_z.back();
    if (j > 0) term *= (z[j - 1] - std::conj(zeta[j - 1])) / Complex(0.0, 2.0);
    k.rhs += term;
  }
  Eigen::MatrixXcd fz = eval_realization(p, z), fw = eval_realization(p, zeta);
  k.lhs = (fz - fw.adjoint()) / Complex(0.0, 2.0);
  k.residual = (k.lhs - k.rhs).norm() / (1.0 + k.lhs.norm());
  return k;
}

CertificateReport certify(const Realization& r, const FloatFunction& f, std::size_t n_points, std::uint64_t seed,
                          double tol) {
  CertificateReport report;
  const Eigen::MatrixXcd& h = realization_matrix(r);
  const double h_norm = inf_norm(h);
  const bool hermitian_flag = std::visit([](const auto& x) { return x.hermitian; }, r);

  report.min_pick_eigenvalue = min_eigenvalue(imaginary_part(h));
  report.pick_ok = report.min_pick_eigenvalue >= -tol * (1.0 + h_norm);
  report.hermitian_defect = inf_norm(h - h.adjoint());
  report.hermitian_ok = !hermitian_flag || report.hermitian_defect <= tol * (1.0 + h_norm);

  PencilRealization pencil = std::holds_alternative<PencilRealization>(r)
                                 ? std::get<PencilRealization>(r)
                                 : schur_to_pencil(to_schur(r));
  report.projectors_ok = true;
  for (std::size_t j = 0; j < pencil.A.size(); ++j) {
    const auto& a = pencil.A[j];
    if (a.rows() != h.rows() && std::holds_alternative<PencilRealization>(r)) report.projectors_ok = false;
    if (min_eigenvalue(a) < -tol * (1.0 + inf_norm(a))) report.projectors_ok = false;
    if (is_zero_one_diagonal(a)) {
      for (std::size_t k = j + 1; k < pencil.A.size(); ++k)
        if (is_zero_one_diagonal(pencil.A[k]) && (a * pencil.A[k]).cwiseAbs().maxCoeff() != 0.0)
          report.projectors_ok = false;
    }
  }

  const std::size_t d = f.num_vars();
  PointSampler sampler(seed);
  std::vector<Point> used;
  for (std::size_t attempt = 0; attempt < 10 * n_points && used.size() < n_points; ++attempt) {
    Point z = sampler.upper(d);
    Eigen::MatrixXcd fz, rz;
    try {
      fz = f.eval(z);
      rz = eval_realization(r, z);
    } catch (const PoleProximity&) {
      ++report.skipped;
      continue;
    } catch (const SingularAtPoint&) {
      ++report.skipped;
      continue;
    }
    report.max_eval_error = std::max(report.max_eval_error, (fz - rz).norm() / (1.0 + fz.norm()));
    used.push_back(std::move(z));
  }
  report.points = used.size();
  report.eval_ok = report.points == n_points && report.max_eval_error <= 1e-8;

  report.identity_ok = true;
  const std::size_t checks = std::min<std::size_t>(10, used.size());
  for (std::size_t i = 0; i < checks; ++i) {
    try {
      auto diag = kernel_decomposition(pencil, used[i], used[i]);
      auto cross = kernel_decomposition(pencil, used[i], used[(i + 1) % used.size()]);
      report.identity_residual = std::max({report.identity_residual, diag.residual, cross.residual});
    } catch (const SingularAtPoint&) {
      report.identity_ok = false;
    }
  }
  if (report.identity_residual > 1e-8) report.identity_ok = false;
  if (checks == 0 && n_points > 0) report.identity_ok = false;
  return report;
}

std::string to_string(RealizationForm form) {
  switch (form) {
    case RealizationForm::Schur: return "schur";
    case RealizationForm::Transfer: return "transfer";
    case RealizationForm::Pencil: return "pencil";
  }
  return "schur";
}

RealizationForm parse_form(const std::string& name) {
  if (name == "schur") return RealizationForm::Schur;
  if (name == "transfer") return RealizationForm::Transfer;
  if (name == "pencil") return RealizationForm::Pencil;
  throw InputError("unknown realization form '" + name + "'");
}

}  // namespace pickrealize
