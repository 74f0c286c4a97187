#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pickrealize {

// Sizes of the diagonal parameter block diag(0_{n0}, z_1 I_{n1}, ..., z_d I_{nd}).
struct BlockStructure {
  std::size_t n0 = 0;
  std::vector<std::size_t> blocks;

  std::size_t num_vars() const { return blocks.size(); }
  std::size_t total() const { return std::accumulate(blocks.begin(), blocks.end(), n0); }
  // Offset of variable k's block inside the n x n parameter block.
  std::size_t offset(std::size_t k) const {
    return std::accumulate(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(k), n0);
  }
  friend bool operator==(const BlockStructure&, const BlockStructure&) = default;
};

enum class RealizationForm { Schur, Transfer, Pencil };

std::string to_string(RealizationForm form);
RealizationForm parse_form(const std::string& name);

// f(z) = A - B (D + Z)^{-1} C with H = [[A, B], [C, D]], Z = diag(0_{n0}, z_k I_{nk}).
struct SchurRealization {
  Eigen::MatrixXcd H;
  std::size_t m = 0;
  BlockStructure structure;
  bool hermitian = false;
  std::optional<std::size_t> lift_variable;

  std::size_t n() const { return structure.total(); }
  Eigen::MatrixXcd A() const { return H.topLeftCorner(idx(m), idx(m)); }
  Eigen::MatrixXcd B() const { return H.topRightCorner(idx(m), idx(n())); }
  Eigen::MatrixXcd C() const { return H.bottomLeftCorner(idx(n()), idx(m)); }
  Eigen::MatrixXcd D() const { return H.bottomRightCorner(idx(n()), idx(n())); }

  static Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }
};

// f(z) = A + B Z (I - D Z)^{-1} C with Z = diag(I_{n0}, z_k I_{nk}).
struct TransferRealization {
  Eigen::MatrixXcd H;
  std::size_t m = 0;
  BlockStructure structure;
  bool hermitian = false;
};

// f(z) = A11(z) - A12(z) A22(z)^{-1} A21(z) with A(z) = H + sum_k z_k A_k.
struct PencilRealization {
  Eigen::MatrixXcd H;
  std::size_t m = 0;
  BlockStructure structure;
  std::vector<Eigen::MatrixXcd> A;
  bool hermitian = false;
};

using Realization = std::variant<SchurRealization, TransferRealization, PencilRealization>;

}  // namespace pickrealize
