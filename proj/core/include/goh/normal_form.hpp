#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "goh/jet.hpp"
#include "goh/linalg.hpp"
#include "goh/vector_field.hpp"

namespace goh {

// Where a jet frame sits in the normalization pipeline. V(j): every X^k is
// d_k plus corrections with no d_i component for i < j (i <= m); Z(j):
// additionally X^j has no d_j correction; normal = V(m + 1).
struct JetStage {
  enum class Kind { raw, v, z, normal };
  Kind kind = Kind::raw;
  std::size_t j = 0;

  static JetStage raw() { return {Kind::raw, 0}; }
  static JetStage v(std::size_t j) { return {Kind::v, j}; }
  static JetStage z(std::size_t j) { return {Kind::z, j}; }
  static JetStage normal() { return {Kind::normal, 0}; }
  std::string to_string() const;
  friend bool operator==(const JetStage&, const JetStage&) = default;
};

// d-jets at the origin of m vector fields on R^n.
class JetFrame {
 public:
  // components[i][k] is the k-th coordinate of X^{i+1}.
  JetFrame(std::vector<std::vector<JetSeries>> components, JetStage stage = JetStage::raw());
  static JetFrame from_frame(const Frame& frame, std::uint32_t order);

  std::size_t dimension() const { return n_; }
  std::size_t rank() const { return components_.size(); }
  std::uint32_t order() const { return order_; }
  const JetStage& stage() const { return stage_; }
  const std::vector<std::vector<JetSeries>>& components() const { return components_; }
  // Coordinate k of field i, both 1-based.
  const JetSeries& component(std::size_t i, std::size_t k) const { return components_[i - 1][k - 1]; }

  // Stage predicates, checked exactly on the stored jets.
  bool in_v(std::size_t j) const;
  bool in_z(std::size_t j) const;
  bool is_normal() const { return in_v(rank() + 1); }

  // Polynomial frame with the jet bodies as components.
  Frame to_frame() const;

 private:
  std::size_t n_ = 0;
  std::uint32_t order_ = 0;
  std::vector<std::vector<JetSeries>> components_;
  JetStage stage_;
};

struct LinearNormalization {
  JetFrame frame;
  // Columns X^1(0), ..., X^m(0) completed by standard vectors, leftmost
  // first; new coordinates y satisfy x = basis * y.
  RationalMatrix basis;
};

// Pulls the frame back by x = B y so that X^k(0) = d_k. Throws
// IndependenceError when the constant terms are dependent.
LinearNormalization normalize_linear(const JetFrame& frame);
// X^j <- X^j / (1 + A^j_j). Requires stage V(j).
JetFrame phi_step(const JetFrame& frame, std::size_t j);
// X^k <- X^k - A^k_j X^j for k != j. Requires stage Z(j).
JetFrame psi_step(const JetFrame& frame, std::size_t j);
// normalize_linear followed by phi_step, psi_step for j = 1..m.
LinearNormalization normalize_frame(const JetFrame& frame);

}  // namespace goh
