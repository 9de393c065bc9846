#include <doctest.h>

#include "support.hpp"

using namespace goh;
using goh::testing::parse;

namespace {

VectorField base_field(const std::vector<std::string>& comps, std::size_t n) {
  std::vector<Polynomial> c;
  for (const auto& s : comps) c.push_back(parse(s, Ambient::base(n)));
  return VectorField(std::move(c), FieldKind::base);
}

VectorField random_base_field(Rng& rng, std::size_t n, unsigned degree) {
  std::vector<Polynomial> c;
  for (std::size_t k = 0; k < n; ++k) c.push_back(testing::random_base_polynomial(rng, n, degree, 2));
  return VectorField(std::move(c), FieldKind::base);
}

}  // namespace

TEST_CASE("lie bracket examples") {
  const VectorField d1 = VectorField::coordinate(3, 1);
  const VectorField x = base_field({"0", "1", "x1"}, 3);
  CHECK(lie_bracket(d1, x) == VectorField::coordinate(3, 3));
  CHECK(lie_bracket(x, x).is_zero());
  CHECK_THROWS_AS(lie_bracket(d1, VectorField::coordinate(4, 1)), DimensionError);
}

TEST_CASE("bracket of corank-one fields along the last coordinate") {
  Rng rng(21);
  const std::size_t n = 4;
  const Ambient base = Ambient::base(n);
  for (int trial = 0; trial < 10; ++trial) {
    const Frame frame = testing::random_corank_one(rng, n, 2);
    const auto& a = *frame.normal_form();
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j < n; ++j) {
        const Polynomial expected = a[j - 1].derivative(base.x(i)) - a[i - 1].derivative(base.x(j)) +
                                    a[i - 1] * a[j - 1].derivative(base.x(n)) -
                                    a[j - 1] * a[i - 1].derivative(base.x(n));
        CHECK(lie_bracket(frame.field(i - 1), frame.field(j - 1))[n - 1] == expected);
      }
  }
}

TEST_CASE("hamiltonian lift and vector field") {
  const Ambient phase = Ambient::phase(3);
  CHECK(hamiltonian_lift(VectorField::coordinate(3, 1)) == parse("p1", phase));
  CHECK(hamiltonian_lift(base_field({"0", "1", "x1"}, 3)) == parse("p2 + x1*p3", phase));
  CHECK(hamiltonian_lift(VectorField::zero(3, FieldKind::base)).is_zero());

  const VectorField hp1 = hamiltonian_vector_field(parse("p1", phase));
  CHECK(hp1.x_block() == std::vector<Polynomial>{parse("1", phase), parse("0", phase), parse("0", phase)});
  CHECK(hp1.p_block() == std::vector<Polynomial>(3, Polynomial::zero(phase)));

  const VectorField h = hamiltonian_vector_field(parse("p2 + x1*p3", phase));
  CHECK(h.x_block() == std::vector<Polynomial>{parse("0", phase), parse("1", phase), parse("x1", phase)});
  CHECK(h.p_block() == std::vector<Polynomial>{parse("-p3", phase), parse("0", phase), parse("0", phase)});
  CHECK(hamiltonian_vector_field(parse("7", phase)).is_zero());
}

TEST_CASE("poisson bracket conventions") {
  const Ambient phase = Ambient::phase(3);
  CHECK(poisson_bracket(parse("p1", phase), parse("x1", phase)) == parse("1", phase));
  CHECK(poisson_bracket(parse("p1", phase), parse("p2 + x1*p3", phase)) == parse("p3", phase));
  const Polynomial h = parse("x2*p1 + x3^2*p3", phase);
  CHECK(poisson_bracket(h, h).is_zero());
  CHECK(hamiltonian_vector_field(h).apply(parse("x1*x2 + p2", phase)) == poisson_bracket(h, parse("x1*x2 + p2", phase)));
}

TEST_CASE("divergence examples") {
  CHECK(divergence(base_field({"1", "0", "1", "x2"}, 4)).is_zero());
  CHECK(divergence(base_field({"x1", "0"}, 2)) == parse("1", Ambient::base(2)));
}

TEST_CASE("vector field properties on random inputs") {
  Rng rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    const VectorField x = random_base_field(rng, n, 2), y = random_base_field(rng, n, 2), z = random_base_field(rng, n, 2);
    // Jacobi identity.
    const VectorField jacobi = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                               lie_bracket(z, lie_bracket(x, y));
    CHECK(jacobi.is_zero());
    CHECK((lie_bracket(x, y) + lie_bracket(y, x)).is_zero());
    // Lifts turn Lie brackets into Poisson brackets.
    CHECK(poisson_bracket(hamiltonian_lift(x), hamiltonian_lift(y)) == hamiltonian_lift(lie_bracket(x, y)));

    const Polynomial f = testing::random_fiber_linear(rng, n, 2), g = testing::random_fiber_linear(rng, n, 2),
                     h = testing::random_fiber_linear(rng, n, 2);
    const Polynomial pj = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                          poisson_bracket(h, poisson_bracket(f, g));
    CHECK(pj.is_zero());

    const Polynomial any = testing::random_polynomial(rng, Ambient::phase(n), 2 * n, 3, 5);
    CHECK(divergence(hamiltonian_vector_field(any)).is_zero());
  }
}

TEST_CASE("hamiltonian fields under fiber dilation") {
  Rng rng(23);
  const std::size_t n = 3;
  // A fresh variable lambda lives as x_{n+1} of a larger ambient.
  const Ambient big = Ambient::phase(n + 1);
  const Polynomial lambda = Polynomial::x(big, n + 1);
  std::vector<Polynomial> plain, dilated;
  for (std::size_t k = 1; k <= n; ++k) {
    plain.push_back(Polynomial::x(big, k));
    dilated.push_back(Polynomial::x(big, k));
  }
  for (std::size_t k = 1; k <= n; ++k) {
    plain.push_back(Polynomial::p(big, k));
    dilated.push_back(lambda * Polynomial::p(big, k));
  }
  for (int trial = 0; trial < 15; ++trial) {
    const VectorField field = hamiltonian_vector_field(testing::random_fiber_linear(rng, n, 2));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(field.x_block()[k].compose(dilated, big) == field.x_block()[k].compose(plain, big));
      CHECK(field.p_block()[k].compose(dilated, big) == lambda * field.p_block()[k].compose(plain, big));
    }
  }
}

TEST_CASE("frames") {
  const Frame martinet = testing::fixture("martinet");
  CHECK(martinet.is_corank_one());
  CHECK(martinet.dimension() == 3);
  CHECK(martinet.rank() == 2);
  const std::vector<Rational> origin(3, Rational(0));
  CHECK(martinet.bracket_generating_at(origin, 3));
  CHECK_FALSE(martinet.bracket_generating_at(origin, 2));
  const std::vector<Rational> off{1, 0, 0};
  CHECK(martinet.bracket_generating_at(off, 2));

  CHECK_THROWS_AS(Frame({VectorField::coordinate(2, 1), VectorField::coordinate(2, 2)}), DimensionError);
  CHECK_THROWS_AS(Frame({VectorField::coordinate(3, 1), base_field({"1", "x2", "0"}, 3)}), IndependenceError);
  const Frame general({VectorField::coordinate(3, 1), base_field({"1", "1", "x1"}, 3)});
  CHECK_FALSE(general.is_corank_one());
  const Frame shaped({VectorField::coordinate(3, 1), base_field({"0", "1", "x1^2"}, 3)});
  REQUIRE(shaped.is_corank_one());
  CHECK(shaped.normal_form()->at(1) == parse("x1^2", Ambient::base(3)));
}
