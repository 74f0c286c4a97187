#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "pickrealize/errors.hpp"

namespace pickrealize {

// Multi-index of the monomial z_0^{e_0} ... z_{d-1}^{e_{d-1}}.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t num_vars) : powers_(num_vars, 0) {}
  Exponent(std::initializer_list<int> powers) : Exponent(std::vector<int>(powers)) {}
  explicit Exponent(std::vector<int> powers) : powers_(std::move(powers)) {
    if (std::any_of(powers_.begin(), powers_.end(), [](int p) { return p < 0; }))
      throw InputError("negative exponent");
  }

  static Exponent unit(std::size_t num_vars, std::size_t k) {
    Exponent e(num_vars);
    e.powers_.at(k) = 1;
    return e;
  }

  std::size_t size() const { return powers_.size(); }
  int operator[](std::size_t k) const { return powers_[k]; }
  int& operator[](std::size_t k) { return powers_[k]; }
  const std::vector<int>& powers() const { return powers_; }
  int total_degree() const { return std::accumulate(powers_.begin(), powers_.end(), 0); }
  bool is_zero() const {
    return std::all_of(powers_.begin(), powers_.end(), [](int p) { return p == 0; });
  }

  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) throw ShapeMismatch("exponent length mismatch");
    Exponent r = a;
    for (std::size_t k = 0; k < a.size(); ++k) r.powers_[k] += b.powers_[k];
    return r;
  }
  friend bool operator==(const Exponent& a, const Exponent& b) { return a.powers_ == b.powers_; }
  friend bool operator<(const Exponent& a, const Exponent& b) {
    return std::lexicographical_compare(a.powers_.begin(), a.powers_.end(), b.powers_.begin(),
                                        b.powers_.end());
  }

 private:
  std::vector<int> powers_;
};

}  // namespace pickrealize
