#pragma once

#include <string>
#include <vector>

#include "demos.hpp"
#include "goh/abnormal.hpp"
#include "goh/parser.hpp"
#include "goh/pfaffian.hpp"
#include "goh/random.hpp"
#include "goh/vector_field.hpp"

namespace goh::testing {

inline Polynomial parse(std::string_view text, Ambient ambient) { return parse_expression(text, ambient); }

inline Frame fixture(const std::string& name) { return cli::demo_frame(name).build(); }

inline Rational nonzero_rational(Rng& rng, long bound = 2, long den = 3) {
  for (;;) {
    Rational q = rng.rational(bound, den);
    if (!is_zero(q)) return q;
  }
}

// Sum of `terms` random monomials of degree <= max_degree in the first
// `vars` variables of the ambient.
inline Polynomial random_polynomial(Rng& rng, Ambient ambient, std::size_t vars, unsigned max_degree,
                                    std::size_t terms) {
  Polynomial out = Polynomial::zero(ambient);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto degree = static_cast<std::uint32_t>(rng.integer(0, max_degree));
    std::vector<Monomial::Power> powers;
    for (std::uint32_t d = 0; d < degree; ++d)
      powers.emplace_back(static_cast<std::uint32_t>(rng.integer(0, static_cast<long>(vars) - 1)), 1U);
    out += Polynomial::term(ambient, Monomial::from_powers(std::move(powers)), nonzero_rational(rng));
  }
  return out;
}

inline Polynomial random_base_polynomial(Rng& rng, std::size_t n, unsigned max_degree, std::size_t terms = 3) {
  return random_polynomial(rng, Ambient::base(n), n, max_degree, terms);
}

// sum_k p_k * c_k(x) with random c_k.
inline Polynomial random_fiber_linear(Rng& rng, std::size_t n, unsigned max_degree) {
  const Ambient phase = Ambient::phase(n);
  Polynomial out = Polynomial::zero(phase);
  for (std::size_t k = 1; k <= n; ++k)
    out += Polynomial::p(phase, k) * random_base_polynomial(rng, n, max_degree, 2).embedded(phase);
  return out;
}

inline SkewMatrix<Rational> random_rational_skew(Rng& rng, std::size_t m) {
  SkewMatrix<Rational> a(m, Rational(0));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) a.set(i, j, rng.rational(3, 4));
  return a;
}

// Entries mix rational constants and polynomials of degree <= 2 in x1..x3.
inline SkewMatrix<Polynomial> random_polynomial_skew(Rng& rng, std::size_t m) {
  const Ambient ambient = Ambient::base(3);
  SkewMatrix<Polynomial> a(m, Polynomial::zero(ambient));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      if (rng.coin()) {
        a.set(i, j, Polynomial::constant(ambient, rng.rational(2, 2)));
      } else {
        a.set(i, j, random_polynomial(rng, ambient, 3, 2, static_cast<std::size_t>(rng.integer(1, 3))));
      }
    }
  return a;
}

inline Frame random_corank_one(Rng& rng, std::size_t n, unsigned degree) {
  std::vector<Polynomial> a;
  for (std::size_t i = 1; i < n; ++i) a.push_back(random_base_polynomial(rng, n, degree, 3));
  return Frame::corank_one(std::move(a));
}

// m fields on R^n with independent random constant parts and random
// corrections of degree 1..degree.
inline Frame random_frame(Rng& rng, std::size_t n, std::size_t m, unsigned degree) {
  const Ambient base = Ambient::base(n);
  for (;;) {
    std::vector<VectorField> fields;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Polynomial> c;
      for (std::size_t k = 0; k < n; ++k) {
        Polynomial f = Polynomial::constant(base, rng.integer(-2, 2));
        if (rng.integer(0, 2) > 0) {
          Polynomial g = random_base_polynomial(rng, n, degree, 2);
          f += g - Polynomial::constant(base, g.constant_term());
        }
        c.push_back(std::move(f));
      }
      fields.emplace_back(std::move(c), FieldKind::base);
    }
    try {
      return Frame(std::move(fields));
    } catch (const IndependenceError&) {
    }
  }
}

}  // namespace goh::testing
