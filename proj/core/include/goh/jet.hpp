#pragma once

#include <cstdint>

#include "goh/polynomial.hpp"

namespace goh {

// Truncated power series in the base variables: a polynomial in x whose
// monomials all have total degree <= order. Products are re-truncated
// immediately.
class JetSeries {
 public:
  JetSeries(Polynomial body, std::uint32_t order);
  static JetSeries zero(std::size_t n, std::uint32_t order);
  static JetSeries one(std::size_t n, std::uint32_t order);

  const Polynomial& body() const { return body_; }
  std::uint32_t order() const { return order_; }
  std::size_t dimension() const { return body_.ambient().n; }
  bool is_zero() const { return body_.is_zero(); }
  Rational constant_term() const { return body_.constant_term(); }

  JetSeries& operator+=(const JetSeries& other);
  JetSeries& operator-=(const JetSeries& other);
  friend JetSeries operator+(JetSeries a, const JetSeries& b) { return a += b; }
  friend JetSeries operator-(JetSeries a, const JetSeries& b) { return a -= b; }
  friend JetSeries operator*(const JetSeries& a, const JetSeries& b);
  JetSeries operator-() const { return {-body_, order_}; }
  friend bool operator==(const JetSeries&, const JetSeries&) = default;

 private:
  void require_compatible(const JetSeries& other) const;

  Polynomial body_;
  std::uint32_t order_;
};

// Inverse of a unit jet by geometric-series iteration:
// u = c(1 + w), w(0) = 0  =>  1/u = c^-1 * sum_{k<=order} (-w)^k.
// Throws NonUnitError when the constant term vanishes.
JetSeries series_invert_unit(const JetSeries& u);

}  // namespace goh
