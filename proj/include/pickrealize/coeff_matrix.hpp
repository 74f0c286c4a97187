#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "pickrealize/coefficient.hpp"
#include "pickrealize/errors.hpp"

namespace pickrealize {

// Small dense row-major matrix over an exact or float coefficient field.
template <Coefficient T>
class CoeffMatrix {
 public:
  using Traits = CoefficientTraits<T>;

  CoeffMatrix() = default;
  CoeffMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CoeffMatrix identity(std::size_t n) {
    CoeffMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::from_int(1);
    return m;
  }
  static CoeffMatrix scalar(const T& value) {
    CoeffMatrix m(1, 1);
    m(0, 0) = value;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const T& v : data_)
      if (!Traits::is_zero(v)) return false;
    return true;
  }

  // Zero entries below the drop tolerance (float mode only; exact mode drops true zeros).
  void drop_small() {
    for (T& v : data_)
      if (Traits::is_zero(v)) v = T{};
  }

  CoeffMatrix adjoint() const {
    CoeffMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = Traits::conj((*this)(i, j));
    return r;
  }
  CoeffMatrix conjugate() const {
    CoeffMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = Traits::conj(data_[k]);
    return r;
  }
  CoeffMatrix transpose() const {
    CoeffMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  CoeffMatrix& operator+=(const CoeffMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CoeffMatrix& operator-=(const CoeffMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CoeffMatrix& operator*=(const T& s) {
    for (T& v : data_) v *= s;
    return *this;
  }
  friend CoeffMatrix operator+(CoeffMatrix a, const CoeffMatrix& b) { return a += b; }
  friend CoeffMatrix operator-(CoeffMatrix a, const CoeffMatrix& b) { return a -= b; }
  friend CoeffMatrix operator*(CoeffMatrix a, const T& s) { return a *= s; }
  friend CoeffMatrix operator*(const T& s, CoeffMatrix a) { return a *= s; }
  friend CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product inner dimension");
    CoeffMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (Traits::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend bool operator==(const CoeffMatrix& a, const CoeffMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!Traits::equal(a.data_[k], b.data_[k])) return false;
    return true;
  }

  Eigen::MatrixXcd to_eigen() const {
    Eigen::MatrixXcd r(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Traits::to_complex((*this)(i, j));
    return r;
  }
  static CoeffMatrix from_eigen(const Eigen::MatrixXcd& m) {
    CoeffMatrix r(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        r(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Traits::from_complex(m(i, j));
    return r;
  }

 private:
  void check_same(const CoeffMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("coefficient matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

}  // namespace pickrealize
