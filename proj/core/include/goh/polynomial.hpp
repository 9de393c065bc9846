#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "goh/rational.hpp"

namespace goh {

// Variable layout of a polynomial ring. Base variables x1..xn occupy indices
// 0..n-1; when the fiber is present, p1..pn occupy indices n..2n-1.
struct Ambient {
  std::size_t n = 0;
  bool fiber = false;

  static Ambient base(std::size_t n) { return {n, false}; }
  static Ambient phase(std::size_t n) { return {n, true}; }

  std::size_t variable_count() const { return fiber ? 2 * n : n; }
  std::size_t x(std::size_t k) const;  // 1-based x_k -> index
  std::size_t p(std::size_t k) const;  // 1-based p_k -> index
  bool is_fiber_variable(std::size_t var) const { return fiber && var >= n; }
  std::string variable_name(std::size_t var) const;

  friend bool operator==(const Ambient&, const Ambient&) = default;
};

// Sparse exponent vector: sorted (variable, exponent) pairs, exponents > 0.
class Monomial {
 public:
  using Power = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  static Monomial variable(std::size_t var, std::uint32_t exponent = 1);
  // Builds from arbitrary pairs; merges duplicates and drops zero exponents.
  static Monomial from_powers(std::vector<Power> powers);

  const std::vector<Power>& powers() const { return powers_; }
  bool is_one() const { return powers_.empty(); }
  std::uint32_t exponent(std::size_t var) const;
  std::uint64_t degree() const;
  // Sum of exponents over the fiber block of `ambient`.
  std::uint64_t p_degree(const Ambient& ambient) const;
  std::uint64_t x_degree(const Ambient& ambient) const;

  Monomial operator*(const Monomial& other) const;
  // Monomial with the exponent of `var` lowered by one (caller ensures > 0).
  Monomial lowered(std::size_t var) const;
  Monomial without(std::size_t var) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Power> powers_;
};

// Graded lexicographic order with x1 < ... < xn < p1 < ... < pn: compare
// total degree, then exponents starting from the highest variable.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Result of a p-homogeneity query. `zero` flags the zero polynomial, which
// is homogeneous of every degree and is therefore reported with no degree.
struct PDegree {
  std::optional<std::uint64_t> degree;
  bool zero = false;
};

// Sparse multivariate polynomial over Q. Zero coefficients are never stored,
// so structural equality of term maps is polynomial equality.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLex>;

  Polynomial() = default;
  explicit Polynomial(Ambient ambient) : ambient_(ambient) {}
  Polynomial(Ambient ambient, const Rational& c);

  static Polynomial zero(Ambient ambient) { return Polynomial(ambient); }
  static Polynomial one(Ambient ambient) { return Polynomial(ambient, Rational(1)); }
  static Polynomial constant(Ambient ambient, const Rational& c) { return Polynomial(ambient, c); }
  static Polynomial variable(Ambient ambient, std::size_t var);
  static Polynomial x(Ambient ambient, std::size_t k) { return variable(ambient, ambient.x(k)); }
  static Polynomial p(Ambient ambient, std::size_t k) { return variable(ambient, ambient.p(k)); }
  static Polynomial term(Ambient ambient, const Monomial& m, const Rational& c);

  const Ambient& ambient() const { return ambient_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  std::uint64_t total_degree() const;  // 0 for the zero polynomial
  // Largest exponent of `var` over all terms.
  std::uint32_t degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ambient_ == b.ambient_ && a.terms_ == b.terms_;
  }

  Polynomial pow(std::uint32_t exponent) const;
  Polynomial derivative(std::size_t var) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  PDegree p_homogeneous_degree() const;

  // Drops every term of total degree > max_degree.
  Polynomial truncated(std::uint64_t max_degree) const;
  // Drops terms whose degree in the base variables exceeds max_degree.
  Polynomial truncated_in_x(std::uint64_t max_degree) const;

  // Substitutes images[v] for variable v. All images share `target`.
  Polynomial compose(std::span<const Polynomial> images, Ambient target) const;
  // Reinterprets the polynomial in a larger ambient with the same base
  // dimension (base -> phase). Throws DimensionError otherwise.
  Polynomial embedded(Ambient target) const;
  // Inverse of embedded(): requires no fiber variable to occur.
  Polynomial restricted_to_base() const;

  std::string to_string() const;

 private:
  void require_same_ambient(const Polynomial& other) const;
  void add_term(const Monomial& m, const Rational& c);

  Ambient ambient_{};
  TermMap terms_;
};

// Canonical text of a monomial, e.g. "x1^2*p4"; "1" for the unit.
std::string monomial_to_string(const Monomial& m, const Ambient& ambient);

// Compiled form of a polynomial for repeated IEEE double evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const Polynomial& f);

  double operator()(std::span<const double> point) const;
  // Evaluation with |coefficients| at |point|: a magnitude scale for
  // rounding-error bounds.
  double magnitude(std::span<const double> point) const;

 private:
  struct Term {
    double coefficient;
    std::vector<Monomial::Power> powers;
  };
  std::vector<Term> terms_;
};

}  // namespace goh
