#include "goh/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "goh/errors.hpp"

namespace goh {

Rational make_rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw RangeError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw RangeError("non-finite value has no rational form");
  return Rational(value);
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::size_t Ambient::x(std::size_t k) const {
  if (k == 0 || k > n) throw RangeError("x" + std::to_string(k) + " outside ambient of dimension " + std::to_string(n));
  return k - 1;
}

std::size_t Ambient::p(std::size_t k) const {
  if (!fiber) throw RangeError("p" + std::to_string(k) + " used in a base-only ambient");
  if (k == 0 || k > n) throw RangeError("p" + std::to_string(k) + " outside ambient of dimension " + std::to_string(n));
  return n + k - 1;
}

std::string Ambient::variable_name(std::size_t var) const {
  if (var < n) return "x" + std::to_string(var + 1);
  return "p" + std::to_string(var - n + 1);
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::size_t var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.powers_.emplace_back(static_cast<std::uint32_t>(var), exponent);
  return m;
}

Monomial Monomial::from_powers(std::vector<Power> powers) {
  std::sort(powers.begin(), powers.end());
  Monomial m;
  for (const auto& [var, e] : powers) {
    if (e == 0) continue;
    if (!m.powers_.empty() && m.powers_.back().first == var) {
      m.powers_.back().second += e;
    } else {
      m.powers_.emplace_back(var, e);
    }
  }
  return m;
}

std::uint32_t Monomial::exponent(std::size_t var) const {
  for (const auto& [v, e] : powers_) {
    if (v == var) return e;
    if (v > var) break;
  }
  return 0;
}

std::uint64_t Monomial::degree() const {
  std::uint64_t d = 0;
  for (const auto& pw : powers_) d += pw.second;
  return d;
}

std::uint64_t Monomial::p_degree(const Ambient& ambient) const {
  std::uint64_t d = 0;
  for (const auto& [v, e] : powers_)
    if (ambient.is_fiber_variable(v)) d += e;
  return d;
}

std::uint64_t Monomial::x_degree(const Ambient& ambient) const {
  return degree() - p_degree(ambient);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.powers_.reserve(powers_.size() + other.powers_.size());
  auto a = powers_.begin();
  auto b = other.powers_.begin();
  while (a != powers_.end() && b != other.powers_.end()) {
    if (a->first < b->first) {
      out.powers_.push_back(*a++);
    } else if (b->first < a->first) {
      out.powers_.push_back(*b++);
    } else {
      out.powers_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.powers_.insert(out.powers_.end(), a, powers_.end());
  out.powers_.insert(out.powers_.end(), b, other.powers_.end());
  return out;
}

Monomial Monomial::lowered(std::size_t var) const {
  Monomial out = *this;
  for (auto it = out.powers_.begin(); it != out.powers_.end(); ++it) {
    if (it->first == var) {
      if (--it->second == 0) out.powers_.erase(it);
      return out;
    }
  }
  return out;
}

Monomial Monomial::without(std::size_t var) const {
  Monomial out = *this;
  std::erase_if(out.powers_, [var](const Power& pw) { return pw.first == var; });
  return out;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  // Walk both exponent lists from the highest variable down.
  auto ia = a.powers().rbegin();
  auto ib = b.powers().rbegin();
  while (ia != a.powers().rend() && ib != b.powers().rend()) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second != ib->second) return ia->second < ib->second;
    ++ia;
    ++ib;
  }
  return ia == a.powers().rend() && ib != b.powers().rend();
}

std::string monomial_to_string(const Monomial& m, const Ambient& ambient) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [v, e] : m.powers()) {
    if (!out.empty()) out += '*';
    out += ambient.variable_name(v);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Ambient ambient, const Rational& c) : ambient_(ambient) {
  if (!goh::is_zero(c)) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(Ambient ambient, std::size_t var) {
  if (var >= ambient.variable_count()) throw RangeError("variable index outside ambient");
  Polynomial f(ambient);
  f.terms_.emplace(Monomial::variable(var), Rational(1));
  return f;
}

Polynomial Polynomial::term(Ambient ambient, const Monomial& m, const Rational& c) {
  Polynomial f(ambient);
  if (!m.is_one() && m.powers().back().first >= ambient.variable_count())
    throw RangeError("monomial outside ambient");
  if (!goh::is_zero(c)) f.terms_.emplace(m, c);
  return f;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const { return coefficient(Monomial{}); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

void Polynomial::require_same_ambient(const Polynomial& other) const {
  if (!(ambient_ == other.ambient_)) {
    throw DimensionError("ambient mismatch: (n=" + std::to_string(ambient_.n) + (ambient_.fiber ? ", phase" : ", base") +
                         ") vs (n=" + std::to_string(other.ambient_.n) + (other.ambient_.fiber ? ", phase" : ", base") + ")");
  }
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (goh::is_zero(it->second)) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ambient(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ambient(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ambient(b);
  Polynomial out(a.ambient_);
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (goh::is_zero(c)) {
    terms_.clear();
  } else {
    for (auto& entry : terms_) entry.second *= c;
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& entry : out.terms_) entry.second = -entry.second;
  return out;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result = one(ambient_);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ambient_.variable_count()) throw RangeError("derivative variable outside ambient");
  Polynomial out(ambient_);
  for (const auto& [m, c] : terms_) {
    const auto e = m.exponent(var);
    if (e == 0) continue;
    out.add_term(m.lowered(var), c * e);
  }
  return out;
}

namespace {

template <typename Scalar>
Scalar evaluate_terms(const Polynomial::TermMap& terms, std::span<const Scalar> point) {
  Scalar total = 0;
  for (const auto& [m, c] : terms) {
    Scalar value = [&] {
      if constexpr (std::is_same_v<Scalar, double>) {
        return c.get_d();
      } else {
        return Scalar(c);
      }
    }();
    for (const auto& [v, e] : m.powers()) {
      Scalar factor = point[v];
      for (std::uint32_t k = 1; k < e; ++k) factor *= point[v];
      value *= factor;
    }
    total += value;
  }
  return total;
}

}  // namespace

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != ambient_.variable_count())
    throw DimensionError("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                         std::to_string(ambient_.variable_count()));
  return evaluate_terms<Rational>(terms_, point);
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != ambient_.variable_count())
    throw DimensionError("evaluation point has " + std::to_string(point.size()) + " coordinates, expected " +
                         std::to_string(ambient_.variable_count()));
  return evaluate_terms<double>(terms_, point);
}

PDegree Polynomial::p_homogeneous_degree() const {
  if (terms_.empty()) return {std::nullopt, true};
  std::optional<std::uint64_t> degree;
  for (const auto& entry : terms_) {
    const auto d = entry.first.p_degree(ambient_);
    if (degree && *degree != d) return {std::nullopt, false};
    degree = d;
  }
  return {degree, false};
}

Polynomial Polynomial::truncated(std::uint64_t max_degree) const {
  Polynomial out(ambient_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() > max_degree) break;  // graded order: the rest are larger
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

Polynomial Polynomial::truncated_in_x(std::uint64_t max_degree) const {
  Polynomial out(ambient_);
  for (const auto& [m, c] : terms_)
    if (m.x_degree(ambient_) <= max_degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  return out;
}

Polynomial Polynomial::compose(std::span<const Polynomial> images, Ambient target) const {
  if (images.size() != ambient_.variable_count())
    throw DimensionError("composition needs one image per variable");
  for (const auto& img : images)
    if (!(img.ambient() == target)) throw DimensionError("composition images must share the target ambient");
  // Cache powers of each image as they are requested.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power_of = [&](std::size_t v, std::uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(one(target));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Polynomial out(target);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(target, c);
    for (const auto& [v, e] : m.powers()) t *= power_of(v, e);
    out += t;
  }
  return out;
}

Polynomial Polynomial::embedded(Ambient target) const {
  if (target.n != ambient_.n || (ambient_.fiber && !target.fiber))
    throw DimensionError("cannot embed polynomial into a smaller or different-dimension ambient");
  Polynomial out(target);
  out.terms_ = terms_;
  return out;
}

Polynomial Polynomial::restricted_to_base() const {
  Polynomial out(Ambient::base(ambient_.n));
  for (const auto& [m, c] : terms_) {
    if (m.p_degree(ambient_) != 0) throw DimensionError("polynomial depends on fiber variables");
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = sgn(c) < 0;
    const Rational magnitude = abs(c);
    const bool unit = magnitude == 1;
    std::string body;
    if (m.is_one()) {
      body = magnitude.get_str();
    } else if (unit) {
      body = monomial_to_string(m, ambient_);
    } else {
      body = magnitude.get_str() + "*" + monomial_to_string(m, ambient_);
    }
    if (!first) {
      out += negative ? " - " : " + ";
      out += body;
    } else if (!negative) {
      out += body;
    } else {
      out += "-" + body;
    }
    first = false;
  }
  return out;
}

// ------------------------------------------------------- CompiledPolynomial

CompiledPolynomial::CompiledPolynomial(const Polynomial& f) {
  terms_.reserve(f.size());
  for (const auto& [m, c] : f.terms()) terms_.push_back({c.get_d(), m.powers()});
}

double CompiledPolynomial::operator()(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double value = t.coefficient;
    for (const auto& [v, e] : t.powers) {
      for (std::uint32_t k = 0; k < e; ++k) value *= point[v];
    }
    total += value;
  }
  return total;
}

double CompiledPolynomial::magnitude(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double value = std::abs(t.coefficient);
    for (const auto& [v, e] : t.powers) {
      for (std::uint32_t k = 0; k < e; ++k) value *= std::abs(point[v]);
    }
    total += value;
  }
  return total;
}

}  // namespace goh
