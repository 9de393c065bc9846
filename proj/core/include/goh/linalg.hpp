#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "goh/rational.hpp"

namespace goh {

// Dense row-major matrix over Q. Small sizes only (frames, Goh matrices).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transposed() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Reduced row echelon form together with its pivot columns.
struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

EchelonForm row_reduce(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);
// Basis of {v : m v = 0}, one vector per free column, in column order.
std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m);
// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

// Dense univariate polynomial over Q, coefficients in increasing degree with
// no trailing zeros.
class Univariate {
 public:
  Univariate() = default;
  explicit Univariate(std::vector<Rational> coefficients);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }  // -1 for zero
  Rational evaluate(const Rational& t) const;
  double evaluate(double t) const;
  Univariate derivative() const;
  Univariate monic() const;

  friend bool operator==(const Univariate&, const Univariate&) = default;

 private:
  std::vector<Rational> coeffs_;
};

Univariate remainder(const Univariate& a, const Univariate& b);
Univariate quotient(const Univariate& a, const Univariate& b);
// Monic greatest common divisor; gcd(0, 0) = 0.
Univariate gcd(const Univariate& a, const Univariate& b);
Univariate squarefree_part(const Univariate& f);

struct RealRoot {
  double approx = 0.0;
  std::optional<Rational> exact;  // set when the root is rational and was recovered
  // Isolating open interval (lo, hi) holding this root and no other root of
  // the input; lo == hi == *exact for rational roots.
  Rational lo, hi;
};

// Real roots of a nonzero polynomial (multiplicities dropped), ascending.
// Roots are isolated exactly with a Sturm sequence, refined by rational
// bisection, and tested for rationality by continued-fraction convergents.
std::vector<RealRoot> real_roots(const Univariate& f);

// Number of distinct roots of a nonzero f in the open interval (lo, hi).
std::size_t count_roots(const Univariate& f, const Rational& lo, const Rational& hi);

// Whether h vanishes at a root returned by real_roots(f).
bool vanishes_at(const Univariate& h, const Univariate& f, const RealRoot& root);

// Best rational approximation of q with denominator <= max_denominator
// (last continued-fraction convergent within the bound).
Rational bounded_convergent(const Rational& q, const Integer& max_denominator);

}  // namespace goh
