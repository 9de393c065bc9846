#include "goh/jet.hpp"

#include "goh/errors.hpp"

namespace goh {

JetSeries::JetSeries(Polynomial body, std::uint32_t order) : body_(std::move(body)), order_(order) {
  if (body_.ambient().fiber) throw DimensionError("jets live in the base variables only");
  body_ = body_.truncated(order_);
}

JetSeries JetSeries::zero(std::size_t n, std::uint32_t order) { return {Polynomial::zero(Ambient::base(n)), order}; }

JetSeries JetSeries::one(std::size_t n, std::uint32_t order) { return {Polynomial::one(Ambient::base(n)), order}; }

void JetSeries::require_compatible(const JetSeries& other) const {
  if (order_ != other.order_) throw DimensionError("jet orders differ");
}

JetSeries& JetSeries::operator+=(const JetSeries& other) {
  require_compatible(other);
  body_ += other.body_;
  return *this;
}

JetSeries& JetSeries::operator-=(const JetSeries& other) {
  require_compatible(other);
  body_ -= other.body_;
  return *this;
}

JetSeries operator*(const JetSeries& a, const JetSeries& b) {
  a.require_compatible(b);
  // Multiplying pre-truncated operands and truncating once is exact for
  // the degree <= order part.
  return {a.body_ * b.body_, a.order_};
}

JetSeries series_invert_unit(const JetSeries& u) {
  const Rational c = u.constant_term();
  if (is_zero(c)) throw NonUnitError("jet has zero constant term and is not invertible");
  const Rational inv_c = 1 / c;
  // w = u/c - 1 has no constant term, so (-w)^k vanishes for k > order.
  const JetSeries w(u.body() * inv_c - Polynomial::one(u.body().ambient()), u.order());
  const JetSeries minus_w = -w;
  JetSeries sum = JetSeries::one(u.dimension(), u.order());
  JetSeries power = sum;
  for (std::uint32_t k = 1; k <= u.order(); ++k) {
    power = power * minus_w;
    if (power.is_zero()) break;
    sum += power;
  }
  return {sum.body() * inv_c, u.order()};
}

}  // namespace goh
