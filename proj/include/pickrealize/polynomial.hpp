#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pickrealize/coeff_matrix.hpp"
#include "pickrealize/coefficient.hpp"
#include "pickrealize/errors.hpp"
#include "pickrealize/exponent.hpp"

namespace pickrealize {

using Point = std::vector<Complex>;

namespace detail {

inline Complex monomial_value(const Exponent& e, std::span<const Complex> point) {
  Complex v(1.0, 0.0);
  for (std::size_t k = 0; k < e.size(); ++k)
    for (int p = 0; p < e[k]; ++p) v *= point[k];
  return v;
}

inline void check_point(std::size_t num_vars, std::span<const Complex> point) {
  if (point.size() != num_vars) throw DimensionMismatch("evaluation point has wrong dimension");
}

}  // namespace detail

// Sparse scalar polynomial in num_vars variables.
template <Coefficient T>
class Polynomial {
 public:
  using Traits = CoefficientTraits<T>;
  using Terms = std::map<Exponent, T>;

  explicit Polynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const T& value) {
    Polynomial p(num_vars);
    p.add_term(Exponent(num_vars), value);
    return p;
  }
  static Polynomial variable(std::size_t num_vars, std::size_t k) {
    Polynomial p(num_vars);
    p.add_term(Exponent::unit(num_vars, k), Traits::from_int(1));
    return p;
  }
  static Polynomial monomial(const Exponent& e, const T& value) {
    Polynomial p(e.size());
    p.add_term(e, value);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const T& c) {
    if (e.size() != num_vars_) throw ShapeMismatch("exponent length differs from variable count");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  T coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T{} : it->second;
  }

  int degree_in(std::size_t k) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
    return d;
  }
  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

  Complex eval(std::span<const Complex> point) const {
    detail::check_point(num_vars_, point);
    Complex v(0.0, 0.0);
    for (const auto& [e, c] : terms_) v += Traits::to_complex(c) * detail::monomial_value(e, point);
    return v;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return *this = std::move(r);
  }
  Polynomial operator-() const {
    Polynomial r(num_vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, -c);
    return r;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_vars(b);
    Polynomial r(a.num_vars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars_ != b.num_vars_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
      if (!(e == it->first) || !Traits::equal(c, it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  void check_vars(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw ShapeMismatch("polynomials have different variable counts");
  }

  std::size_t num_vars_ = 0;
  Terms terms_;
};

// Sparse polynomial with rows x cols matrix coefficients.
template <Coefficient T>
class MatrixPolynomial {
 public:
  using Traits = CoefficientTraits<T>;
  using Matrix = CoeffMatrix<T>;
  using Terms = std::map<Exponent, Matrix>;

  MatrixPolynomial() = default;
  MatrixPolynomial(std::size_t num_vars, std::size_t rows, std::size_t cols)
      : num_vars_(num_vars), rows_(rows), cols_(cols) {}

  static MatrixPolynomial constant(std::size_t num_vars, const Matrix& value) {
    MatrixPolynomial p(num_vars, value.rows(), value.cols());
    p.add_term(Exponent(num_vars), value);
    return p;
  }
  static MatrixPolynomial identity(std::size_t num_vars, std::size_t n) {
    return constant(num_vars, Matrix::identity(n));
  }
  // Scalar polynomial times the n x n identity.
  static MatrixPolynomial scalar_identity(const Polynomial<T>& s, std::size_t n) {
    MatrixPolynomial p(s.num_vars(), n, n);
    for (const auto& [e, c] : s.terms()) p.add_term(e, Matrix::identity(n) * c);
    return p;
  }
  static MatrixPolynomial from_scalar(const Polynomial<T>& s) { return scalar_identity(s, 1); }

  // Assemble from a grid of blocks; block rows share heights, block columns share widths.
  static MatrixPolynomial from_blocks(const std::vector<std::vector<MatrixPolynomial>>& grid) {
    if (grid.empty() || grid.front().empty()) throw ShapeMismatch("empty block grid");
    std::size_t d = grid.front().front().num_vars();
    std::vector<std::size_t> heights, widths;
    for (const auto& row : grid) {
      if (row.size() != grid.front().size()) throw ShapeMismatch("ragged block grid");
      heights.push_back(row.front().rows());
    }
    for (const auto& blk : grid.front()) widths.push_back(blk.cols());
    std::size_t total_rows = 0, total_cols = 0;
    for (auto h : heights) total_rows += h;
    for (auto w : widths) total_cols += w;
    MatrixPolynomial r(d, total_rows, total_cols);
    std::size_t r0 = 0;
    for (std::size_t bi = 0; bi < grid.size(); ++bi) {
      std::size_t c0 = 0;
      for (std::size_t bj = 0; bj < grid[bi].size(); ++bj) {
        const auto& blk = grid[bi][bj];
        if (blk.rows() != heights[bi] || blk.cols() != widths[bj] || blk.num_vars() != d)
          throw ShapeMismatch("block sizes do not chain");
        r.place(blk, r0, c0);
        c0 += widths[bj];
      }
      r0 += heights[bi];
    }
    return r;
  }

  std::size_t num_vars() const { return num_vars_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const Matrix& c) {
    if (e.size() != num_vars_) throw ShapeMismatch("exponent length differs from variable count");
    if (c.rows() != rows_ || c.cols() != cols_) throw ShapeMismatch("coefficient shape mismatch");
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) it->second += c;
    it->second.drop_small();
    if (it->second.is_zero()) terms_.erase(it);
  }

  Matrix coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Matrix(rows_, cols_) : it->second;
  }

  Polynomial<T> entry(std::size_t i, std::size_t j) const {
    Polynomial<T> p(num_vars_);
    for (const auto& [e, c] : terms_) p.add_term(e, c(i, j));
    return p;
  }

  MatrixPolynomial block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range");
    MatrixPolynomial r(num_vars_, nr, nc);
    for (const auto& [e, c] : terms_) {
      Matrix b(nr, nc);
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = c(r0 + i, c0 + j);
      r.add_term(e, b);
    }
    return r;
  }

  int degree_in(std::size_t k) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
    return d;
  }
  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m = std::max(m, Traits::magnitude(c(i, j)));
    return m;
  }

  Eigen::MatrixXcd eval(std::span<const Complex> point) const {
    detail::check_point(num_vars_, point);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (const auto& [e, c] : terms_) v += c.to_eigen() * detail::monomial_value(e, point);
    return v;
  }

  MatrixPolynomial& operator+=(const MatrixPolynomial& o) {
    check_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MatrixPolynomial& operator-=(const MatrixPolynomial& o) {
    check_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c * Traits::from_int(-1));
    return *this;
  }
  MatrixPolynomial& operator*=(const T& s) {
    MatrixPolynomial r(num_vars_, rows_, cols_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return *this = std::move(r);
  }
  friend MatrixPolynomial operator+(MatrixPolynomial a, const MatrixPolynomial& b) { return a += b; }
  friend MatrixPolynomial operator-(MatrixPolynomial a, const MatrixPolynomial& b) { return a -= b; }
  friend MatrixPolynomial operator*(MatrixPolynomial a, const T& s) { return a *= s; }
  friend MatrixPolynomial operator*(const T& s, MatrixPolynomial a) { return a *= s; }
  friend MatrixPolynomial operator*(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    if (a.num_vars_ != b.num_vars_) throw ShapeMismatch("polynomials have different variable counts");
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix polynomial inner dimension");
    MatrixPolynomial r(a.num_vars_, a.rows_, b.cols_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend MatrixPolynomial operator*(const Polynomial<T>& s, const MatrixPolynomial& p) {
    if (s.num_vars() != p.num_vars_) throw ShapeMismatch("polynomials have different variable counts");
    MatrixPolynomial r(p.num_vars_, p.rows_, p.cols_);
    for (const auto& [es, cs] : s.terms())
      for (const auto& [ep, cp] : p.terms_) r.add_term(es + ep, cp * cs);
    return r;
  }
  friend MatrixPolynomial operator*(const MatrixPolynomial& p, const Polynomial<T>& s) { return s * p; }
  friend bool operator==(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    if (a.num_vars_ != b.num_vars_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
      if (!(e == it->first) || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  void check_shape(const MatrixPolynomial& o) const {
    if (o.num_vars_ != num_vars_ || o.rows_ != rows_ || o.cols_ != cols_)
      throw ShapeMismatch("matrix polynomial shapes differ");
  }
  void place(const MatrixPolynomial& blk, std::size_t r0, std::size_t c0) {
    for (const auto& [e, c] : blk.terms_) {
      Matrix full(rows_, cols_);
      for (std::size_t i = 0; i < blk.rows_; ++i)
        for (std::size_t j = 0; j < blk.cols_; ++j) full(r0 + i, c0 + j) = c(i, j);
      add_term(e, full);
    }
  }

  std::size_t num_vars_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Terms terms_;
};

// f = numerator / denominator with square matrix numerator and scalar denominator.
template <Coefficient T>
class RationalMatrixFunction {
 public:
  RationalMatrixFunction() = default;
  RationalMatrixFunction(MatrixPolynomial<T> numerator, Polynomial<T> denominator)
      : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
    if (!numerator_.is_square()) throw ShapeMismatch("numerator must be square");
    if (numerator_.num_vars() != denominator_.num_vars())
      throw ShapeMismatch("numerator and denominator have different variable counts");
    if (denominator_.is_zero()) throw InputError("denominator is identically zero");
  }

  const MatrixPolynomial<T>& numerator() const { return numerator_; }
  const Polynomial<T>& denominator() const { return denominator_; }
  std::size_t size() const { return numerator_.rows(); }
  std::size_t num_vars() const { return numerator_.num_vars(); }

  // |q(z)| threshold below which evaluation reports PoleProximity.
  double pole_tolerance() const {
    return 1e-8 * (1.0 + std::max(numerator_.max_abs_coefficient(), denominator_.max_abs_coefficient()));
  }

  Eigen::MatrixXcd eval(std::span<const Complex> point) const {
    Complex q = denominator_.eval(point);
    if (std::abs(q) < pole_tolerance()) throw PoleProximity("|q(z)| below pole tolerance");
    return numerator_.eval(point) / q;
  }

 private:
  MatrixPolynomial<T> numerator_;
  Polynomial<T> denominator_;
};

using ExactPolynomial = Polynomial<GaussianRational>;
using ExactMatrixPolynomial = MatrixPolynomial<GaussianRational>;
using ExactFunction = RationalMatrixFunction<GaussianRational>;
using FloatPolynomial = Polynomial<Complex>;
using FloatMatrixPolynomial = MatrixPolynomial<Complex>;
using FloatFunction = RationalMatrixFunction<Complex>;

// ---------------------------------------------------------------------------
// Structural operations

template <Coefficient T>
Polynomial<T> partial_derivative(const Polynomial<T>& p, std::size_t k) {
  if (k >= p.num_vars()) throw DimensionMismatch("variable index out of range");
  Polynomial<T> r(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] == 0) continue;
    Exponent f = e;
    f[k] -= 1;
    r.add_term(f, c * CoefficientTraits<T>::from_int(e[k]));
  }
  return r;
}

template <Coefficient T>
MatrixPolynomial<T> partial_derivative(const MatrixPolynomial<T>& p, std::size_t k) {
  if (k >= p.num_vars()) throw DimensionMismatch("variable index out of range");
  MatrixPolynomial<T> r(p.num_vars(), p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] == 0) continue;
    Exponent f = e;
    f[k] -= 1;
    r.add_term(f, c * CoefficientTraits<T>::from_int(e[k]));
  }
  return r;
}

// z -> conj(q(conj z)): conjugates every coefficient.
template <Coefficient T>
Polynomial<T> conj_reflect(const Polynomial<T>& q) {
  Polynomial<T> r(q.num_vars());
  for (const auto& [e, c] : q.terms()) r.add_term(e, CoefficientTraits<T>::conj(c));
  return r;
}

// z -> P(conj z)^*: conjugate-transposes every coefficient.
template <Coefficient T>
MatrixPolynomial<T> herm_reflect(const MatrixPolynomial<T>& p) {
  MatrixPolynomial<T> r(p.num_vars(), p.cols(), p.rows());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.adjoint());
  return r;
}

// Coefficient-wise complex conjugate without transposition.
template <Coefficient T>
MatrixPolynomial<T> conj_coefficients(const MatrixPolynomial<T>& p) {
  MatrixPolynomial<T> r(p.num_vars(), p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.conjugate());
  return r;
}

// W_k = q dP/dz_k - P dq/dz_k.
template <Coefficient T>
MatrixPolynomial<T> wronskian(const Polynomial<T>& q, const MatrixPolynomial<T>& p, std::size_t k) {
  if (!p.is_square()) throw ShapeMismatch("Wronskian needs a square numerator");
  return q * partial_derivative(p, k) - p * partial_derivative(q, k);
}

template <Coefficient T>
std::vector<int> degrees_per_variable(const Polynomial<T>& p) {
  std::vector<int> d(p.num_vars(), 0);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = p.degree_in(k);
  return d;
}

template <Coefficient T>
std::vector<int> degrees_per_variable(const MatrixPolynomial<T>& p) {
  std::vector<int> d(p.num_vars(), 0);
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = p.degree_in(k);
  return d;
}

template <Coefficient T>
std::vector<int> degrees_per_variable(const RationalMatrixFunction<T>& f) {
  auto a = degrees_per_variable(f.numerator());
  auto b = degrees_per_variable(f.denominator());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::max(a[k], b[k]);
  return a;
}

template <Coefficient T>
bool is_multi_affine(const RationalMatrixFunction<T>& f) {
  auto d = degrees_per_variable(f);
  return std::all_of(d.begin(), d.end(), [](int k) { return k <= 1; });
}

// Variables named by groups[i] are all replaced by the single new variable i.
using VariableGroups = std::vector<std::vector<std::size_t>>;

namespace detail {

inline std::vector<std::size_t> group_owner(const VariableGroups& groups, std::size_t num_vars) {
  std::vector<std::size_t> owner(num_vars, groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t v : groups[g]) {
      if (v >= num_vars || owner[v] != groups.size())
        throw InputError("variable groups must partition the variable indices");
      owner[v] = g;
    }
  for (std::size_t o : owner)
    if (o == groups.size()) throw InputError("variable groups must partition the variable indices");
  return owner;
}

inline Exponent merge_exponent(const Exponent& e, const std::vector<std::size_t>& owner, std::size_t n) {
  Exponent r(n);
  for (std::size_t v = 0; v < e.size(); ++v) r[owner[v]] += e[v];
  return r;
}

}  // namespace detail

template <Coefficient T>
Polynomial<T> identify_variables(const Polynomial<T>& p, const VariableGroups& groups) {
  auto owner = detail::group_owner(groups, p.num_vars());
  Polynomial<T> r(groups.size());
  for (const auto& [e, c] : p.terms()) r.add_term(detail::merge_exponent(e, owner, groups.size()), c);
  return r;
}

template <Coefficient T>
MatrixPolynomial<T> identify_variables(const MatrixPolynomial<T>& p, const VariableGroups& groups) {
  auto owner = detail::group_owner(groups, p.num_vars());
  MatrixPolynomial<T> r(groups.size(), p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) r.add_term(detail::merge_exponent(e, owner, groups.size()), c);
  return r;
}

template <Coefficient T>
RationalMatrixFunction<T> identify_variables(const RationalMatrixFunction<T>& f, const VariableGroups& groups) {
  return {identify_variables(f.numerator(), groups), identify_variables(f.denominator(), groups)};
}

// p = z_k * first + second with first, second independent of z_k.
template <Coefficient T>
std::pair<Polynomial<T>, Polynomial<T>> split_affine(const Polynomial<T>& p, std::size_t k) {
  Polynomial<T> linear(p.num_vars()), constant(p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] > 1) throw DegreeTooLow("polynomial is not affine in the split variable");
    Exponent f = e;
    f[k] = 0;
    (e[k] == 1 ? linear : constant).add_term(f, c);
  }
  return {std::move(linear), std::move(constant)};
}

template <Coefficient T>
std::pair<MatrixPolynomial<T>, MatrixPolynomial<T>> split_affine(const MatrixPolynomial<T>& p, std::size_t k) {
  MatrixPolynomial<T> linear(p.num_vars(), p.rows(), p.cols()), constant(p.num_vars(), p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) {
    if (e[k] > 1) throw DegreeTooLow("polynomial is not affine in the split variable");
    Exponent f = e;
    f[k] = 0;
    (e[k] == 1 ? linear : constant).add_term(f, c);
  }
  return {std::move(linear), std::move(constant)};
}

// Insert a fresh variable at position `at`; existing variables shift up.
template <Coefficient T>
Polynomial<T> insert_variable(const Polynomial<T>& p, std::size_t at) {
  Polynomial<T> r(p.num_vars() + 1);
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> pw = e.powers();
    pw.insert(pw.begin() + static_cast<std::ptrdiff_t>(at), 0);
    r.add_term(Exponent(std::move(pw)), c);
  }
  return r;
}

template <Coefficient T>
MatrixPolynomial<T> insert_variable(const MatrixPolynomial<T>& p, std::size_t at) {
  MatrixPolynomial<T> r(p.num_vars() + 1, p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> pw = e.powers();
    pw.insert(pw.begin() + static_cast<std::ptrdiff_t>(at), 0);
    r.add_term(Exponent(std::move(pw)), c);
  }
  return r;
}

// Substitute z_k := value, removing the variable.
template <Coefficient T>
Polynomial<T> substitute_variable(const Polynomial<T>& p, std::size_t k, const T& value) {
  Polynomial<T> r(p.num_vars() - 1);
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> pw = e.powers();
    T factor = c;
    for (int i = 0; i < pw[k]; ++i) factor *= value;
    pw.erase(pw.begin() + static_cast<std::ptrdiff_t>(k));
    r.add_term(Exponent(std::move(pw)), factor);
  }
  return r;
}

template <Coefficient T>
MatrixPolynomial<T> substitute_variable(const MatrixPolynomial<T>& p, std::size_t k, const T& value) {
  MatrixPolynomial<T> r(p.num_vars() - 1, p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> pw = e.powers();
    T factor = CoefficientTraits<T>::from_int(1);
    for (int i = 0; i < pw[k]; ++i) factor *= value;
    pw.erase(pw.begin() + static_cast<std::ptrdiff_t>(k));
    r.add_term(Exponent(std::move(pw)), c * factor);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Mode conversion

template <Coefficient U, Coefficient T>
Polynomial<U> convert(const Polynomial<T>& p) {
  Polynomial<U> r(p.num_vars());
  for (const auto& [e, c] : p.terms())
    r.add_term(e, CoefficientTraits<U>::from_complex(CoefficientTraits<T>::to_complex(c)));
  return r;
}

template <Coefficient U, Coefficient T>
MatrixPolynomial<U> convert(const MatrixPolynomial<T>& p) {
  MatrixPolynomial<U> r(p.num_vars(), p.rows(), p.cols());
  for (const auto& [e, c] : p.terms()) r.add_term(e, CoeffMatrix<U>::from_eigen(c.to_eigen()));
  return r;
}

template <Coefficient U, Coefficient T>
RationalMatrixFunction<U> convert(const RationalMatrixFunction<T>& f) {
  return {convert<U>(f.numerator()), convert<U>(f.denominator())};
}

template <Coefficient T>
FloatFunction to_float(const RationalMatrixFunction<T>& f) {
  if constexpr (std::is_same_v<T, Complex>) return f;
  else return convert<Complex>(f);
}

template <Coefficient T>
FloatMatrixPolynomial to_float(const MatrixPolynomial<T>& p) {
  if constexpr (std::is_same_v<T, Complex>) return p;
  else return convert<Complex>(p);
}

}  // namespace pickrealize
