#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "goh/polynomial.hpp"

namespace goh {

enum class FieldKind { base, phase };

// p-homogeneity of the two blocks of a phase field.
struct BlockDegrees {
  PDegree x_block;
  PDegree p_block;
};

// Polynomial vector field. A base field has n components in x only; a phase
// field has 2n components (x-block then p-block) in (x, p).
class VectorField {
 public:
  VectorField() = default;
  VectorField(std::vector<Polynomial> components, FieldKind kind);

  static VectorField zero(std::size_t n, FieldKind kind);
  // d/dx_k on the base, 1-based.
  static VectorField coordinate(std::size_t n, std::size_t k);

  FieldKind kind() const { return kind_; }
  std::size_t dimension() const { return n_; }
  Ambient ambient() const { return kind_ == FieldKind::base ? Ambient::base(n_) : Ambient::phase(n_); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  // Multiplication by a function with the same ambient.
  friend VectorField operator*(const Polynomial& f, const VectorField& v);
  friend VectorField operator*(const Rational& c, const VectorField& v);
  friend bool operator==(const VectorField&, const VectorField&) = default;

  // Directional derivative V(f) = sum_k V_k d_k f.
  Polynomial apply(const Polynomial& f) const;
  // Blocks of a phase field, as polynomials in (x, p).
  std::vector<Polynomial> x_block() const;
  std::vector<Polynomial> p_block() const;
  BlockDegrees block_degrees() const;

  std::vector<Rational> evaluate(std::span<const Rational> point) const;
  std::vector<double> evaluate(std::span<const double> point) const;
  VectorField truncated(std::uint64_t max_degree) const;

  std::string to_string() const;

 private:
  void require_compatible(const VectorField& other) const;

  std::size_t n_ = 0;
  FieldKind kind_ = FieldKind::base;
  std::vector<Polynomial> components_;
};

// [X, Y] = DY.X - DX.Y.
VectorField lie_bracket(const VectorField& a, const VectorField& b);
// h(x, p) = p . X(x); linear in p.
Polynomial hamiltonian_lift(const VectorField& field);
// Symplectic gradient: x' = dh/dp, p' = -dh/dx. A base-ambient h is
// treated as a function on phase space.
VectorField hamiltonian_vector_field(const Polynomial& h);
// {h, g} = sum_k (dh/dp_k dg/dx_k - dh/dx_k dg/dp_k), so {p1, x1} = 1 and
// hamiltonian_vector_field(h).apply(g) = {h, g}.
Polynomial poisson_bracket(const Polynomial& h, const Polynomial& g);
// Euclidean divergence in the declared coordinates.
Polynomial divergence(const VectorField& field);

// m polynomial base fields on R^n spanning a distribution of rank m < n.
// When the fields have the shape X^i = d_i + A_i d_n with m = n - 1, the
// frame records A_1..A_{n-1} as its corank-one normal form.
class Frame {
 public:
  // Validates m < n, a common base ambient, and independence at the origin.
  explicit Frame(std::vector<VectorField> fields);
  // X^i = d_i + A_i d_n for the n - 1 given functions of x1..xn.
  static Frame corank_one(std::vector<Polynomial> normal_form);

  std::size_t dimension() const { return n_; }
  std::size_t rank() const { return fields_.size(); }
  const std::vector<VectorField>& fields() const { return fields_; }
  const VectorField& field(std::size_t i) const { return fields_[i]; }
  const std::optional<std::vector<Polynomial>>& normal_form() const { return normal_form_; }
  bool is_corank_one() const { return normal_form_.has_value(); }

  // Diagnostic only: whether iterated brackets of length <= depth span
  // R^n at the given rational point.
  bool bracket_generating_at(std::span<const Rational> point, std::size_t depth) const;

 private:
  std::size_t n_ = 0;
  std::vector<VectorField> fields_;
  std::optional<std::vector<Polynomial>> normal_form_;
};

}  // namespace goh
