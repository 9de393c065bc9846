#include "goh/abnormal.hpp"

#include "goh/errors.hpp"
#include "goh/linalg.hpp"

namespace goh {

GohMatrix goh_matrix(const Frame& frame) {
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  const Ambient phase = Ambient::phase(n);
  SkewMatrix<Polynomial> full(m, Polynomial::zero(phase));
  std::optional<SkewMatrix<Polynomial>> reduced;
  if (frame.is_corank_one()) reduced.emplace(m, Polynomial::zero(Ambient::base(n)));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      const VectorField bracket = lie_bracket(frame.field(i - 1), frame.field(j - 1));
      full.set(i, j, hamiltonian_lift(bracket));
      if (reduced) {
        for (std::size_t k = 0; k + 1 < n; ++k)
          if (!bracket[k].is_zero())
            throw StructuralError("bracket of normal-form fields has a component off d_x" + std::to_string(n));
        reduced->set(i, j, bracket[n - 1]);
      }
    }
  return {std::move(full), std::move(reduced)};
}

std::vector<Rational> PhasePoint::joined() const {
  std::vector<Rational> out = x;
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

namespace {

void require_on_annihilator(const Frame& frame, const PhasePoint& point) {
  const std::size_t n = frame.dimension();
  if (point.x.size() != n || point.p.size() != n) throw DimensionError("phase point must have n + n coordinates");
  bool nonzero = false;
  for (const auto& v : point.p) nonzero = nonzero || !is_zero(v);
  if (!nonzero) throw ConstraintViolation("covector p is zero");
  for (std::size_t i = 0; i < frame.rank(); ++i) {
    Rational h = 0;
    for (std::size_t k = 0; k < n; ++k) h += point.p[k] * frame.field(i)[k].evaluate(point.x);
    if (!is_zero(h))
      throw ConstraintViolation("point is off the annihilator: h^" + std::to_string(i + 1) + " = " + to_string(h));
  }
}

SkewMatrix<Rational> evaluate_skew(const SkewMatrix<Polynomial>& a, std::span<const Rational> point) {
  return a.map([&](const Polynomial& f) { return f.evaluate(point); });
}

}  // namespace

std::size_t kernel_dim_at(const Frame& frame, const GohMatrix& goh, const PhasePoint& point) {
  require_on_annihilator(frame, point);
  const auto joined = point.joined();
  return frame.rank() - skew_rank(evaluate_skew(goh.full, joined));
}

std::size_t kernel_dim_at(const Frame& frame, const PhasePoint& point) {
  return kernel_dim_at(frame, goh_matrix(frame), point);
}

std::optional<PhasePoint> random_annihilator_point(const Frame& frame, Rng& rng, long bound, long den) {
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  PhasePoint point;
  for (std::size_t k = 0; k < n; ++k) point.x.push_back(rng.rational(bound, den));
  if (const auto& a = frame.normal_form()) {
    Rational pn = 0;
    while (is_zero(pn)) pn = rng.rational(2, 4);
    for (std::size_t k = 0; k + 1 < n; ++k) point.p.push_back(-(*a)[k].evaluate(point.x) * pn);
    point.p.push_back(pn);
    return point;
  }
  RationalMatrix values(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) values(i, k) = frame.field(i)[k].evaluate(point.x);
  const auto basis = nullspace(values);
  if (basis.size() != n - m) return std::nullopt;
  point.p.assign(n, Rational(0));
  bool nonzero = false;
  while (!nonzero) {
    for (auto& v : point.p) v = 0;
    for (const auto& v : basis) {
      const Rational c = rng.rational(2, 4);
      for (std::size_t k = 0; k < n; ++k) point.p[k] += c * v[k];
    }
    for (const auto& v : point.p) nonzero = nonzero || !is_zero(v);
  }
  return point;
}

std::size_t generic_goh_rank(const Frame& frame, const GohMatrix& goh) {
  if (goh.reduced) return skew_rank(*goh.reduced);
  Rng rng(0x5eedULL);
  std::size_t best = 0;
  for (int attempt = 0; attempt < 24; ++attempt) {
    const auto point = random_annihilator_point(frame, rng);
    if (!point) continue;
    best = std::max(best, skew_rank(evaluate_skew(goh.full, point->joined())));
  }
  return best;
}

namespace {

struct Projection {
  VectorField z;
  std::vector<Polynomial> frame_coefficients;
};

Projection corank1_projection(const AbnormalGenerator& g, const Frame& frame, const GohMatrix& goh) {
  if (!frame.is_corank_one() || !goh.reduced)
    throw StructuralError("projection needs a frame in corank-one normal form");
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  const Ambient base = Ambient::base(n);
  const Ambient phase = Ambient::phase(n);
  const Polynomial pn_power = Polynomial::p(phase, n).pow(static_cast<std::uint32_t>(g.rank / 2));

  PfaffianTable<Polynomial> table(*goh.reduced);
  std::vector<Polynomial> coefficients(m, Polynomial::zero(base));
  VectorField z = VectorField::zero(n, FieldKind::base);
  for (std::size_t k = 0; k < g.set.size(); ++k) {
    const std::size_t i = g.set.elements()[k];
    Polynomial c = table(g.set.without(i));
    if (epsilon_sign(g.set, i) < 0) c = -c;
    if (!(pn_power * c.embedded(phase) == g.coefficients[k]))
      throw StructuralError("Pfaffian coefficient for " + g.set.to_string() + " does not factor through p_" +
                            std::to_string(n));
    z += c * frame.field(i - 1);
    coefficients[i - 1] = std::move(c);
  }

  // Restrict the x-block of Y to p = p_n (-A, 1) and compare with p_n^{r/2} Z.
  std::vector<Polynomial> images;
  for (std::size_t k = 1; k <= n; ++k) images.push_back(Polynomial::x(phase, k));
  const auto& a = *frame.normal_form();
  for (std::size_t k = 1; k < n; ++k) images.push_back(-(a[k - 1].embedded(phase) * Polynomial::p(phase, n)));
  images.push_back(Polynomial::p(phase, n));
  for (std::size_t k = 0; k < n; ++k) {
    const Polynomial restricted = g.y[k].compose(images, phase);
    if (!(restricted == pn_power * z[k].embedded(phase)))
      throw StructuralError("x-block of Y" + g.set.to_string() + " does not restrict to p_n^r/2 Z");
  }
  return {std::move(z), std::move(coefficients)};
}

}  // namespace

std::vector<AbnormalGenerator> abnormal_generators(const Frame& frame, const GohMatrix& goh, std::size_t r) {
  const std::size_t m = frame.rank();
  if (r % 2 == 1) throw RangeError("generator rank must be even");
  if (r >= m) throw RangeError("generator rank " + std::to_string(r) + " must be below m = " + std::to_string(m));
  std::vector<VectorField> hvec;
  for (const auto& x : frame.fields()) hvec.push_back(hamiltonian_vector_field(hamiltonian_lift(x)));

  PfaffianTable<Polynomial> table(goh.full);
  std::vector<AbnormalGenerator> out;
  for (const IndexSet& set : subsets(m, r + 1)) {
    AbnormalGenerator g;
    g.set = set;
    g.rank = r;
    auto kg = kernel_generator(table, set);
    g.y = VectorField::zero(frame.dimension(), FieldKind::phase);
    for (std::size_t k = 0; k < set.size(); ++k) g.y += kg.coefficients[k] * hvec[set.elements()[k] - 1];
    g.coefficients = std::move(kg.coefficients);
    g.degrees = g.y.block_degrees();
    if (frame.is_corank_one()) {
      auto projection = corank1_projection(g, frame, goh);
      g.z = std::move(projection.z);
      g.frame_coefficients = std::move(projection.frame_coefficients);
    }
    out.push_back(std::move(g));
  }
  return out;
}

VectorField project_corank1(const AbnormalGenerator& generator, const Frame& frame, const GohMatrix& goh) {
  return corank1_projection(generator, frame, goh).z;
}

bool DivergenceCertificate::valid() const {
  return phase_divergence.is_zero() && jacobi_expansion.is_zero() && (!base || base->residual.is_zero());
}

DivergenceCertificate compute_divergence_certificate(const AbnormalGenerator& g, const Frame& frame,
                                                     const GohMatrix& goh) {
  const std::size_t n = frame.dimension();
  DivergenceCertificate cert;
  cert.subject = g.set;
  cert.rank = g.rank;
  cert.phase_divergence = divergence(g.y);

  // sum over ordered distinct (j, k, l) in I of eps_{jkl} phi(H, I\{j,k,l}) {h^j, {h^k, h^l}}.
  const Ambient phase = Ambient::phase(n);
  cert.jacobi_expansion = Polynomial::zero(phase);
  if (g.set.size() >= 3) {
    PfaffianTable<Polynomial> table(goh.full);
    std::vector<Polynomial> lifts;
    for (const auto& x : frame.fields()) lifts.push_back(hamiltonian_lift(x));
    const auto& el = g.set.elements();
    for (std::size_t j : el)
      for (std::size_t k : el)
        for (std::size_t l : el) {
          if (j == k || k == l || j == l) continue;
          const std::uint64_t rest = g.set.mask() & ~(detail::bit(j) | detail::bit(k) | detail::bit(l));
          const Polynomial& phi = table.get(rest);
          if (phi.is_zero()) continue;
          const Polynomial inner = goh.full.entry(k, l);
          if (inner.is_zero()) continue;
          Polynomial term = phi * poisson_bracket(lifts[j - 1], inner);
          if (epsilon_sign(g.set, j, k, l) < 0) term = -term;
          cert.jacobi_expansion += term;
        }
  }

  if (g.z) {
    const auto& a = *frame.normal_form();
    const Ambient base = Ambient::base(n);
    BaseCombination combo;
    combo.divergence = divergence(*g.z);
    Polynomial sum = Polynomial::zero(base);
    std::vector<Polynomial> slopes;
    for (std::size_t j : g.set.elements()) {
      slopes.push_back(a[j - 1].derivative(n - 1));
      sum += slopes.back() * (*g.z)[j - 1];
    }
    if (sum.is_zero()) {
      combo.residual = combo.divergence;
      combo.coefficients.assign(slopes.size(), Polynomial::zero(base));
    } else {
      // One linear equation over Q: match a single monomial of the sum.
      const auto& [mono, coeff] = *sum.terms().begin();
      const Rational constant = combo.divergence.coefficient(mono) / coeff;
      combo.constant = constant;
      combo.residual = combo.divergence - constant * sum;
      for (auto& s : slopes) combo.coefficients.push_back(constant * s);
    }
    cert.base = std::move(combo);
  }
  return cert;
}

DivergenceCertificate divergence_certificate(const AbnormalGenerator& g, const Frame& frame, const GohMatrix& goh) {
  DivergenceCertificate cert = compute_divergence_certificate(g, frame, goh);
  const std::string who = "generator " + g.set.to_string();
  if (!cert.phase_divergence.is_zero())
    throw CertificateFailure(who + ": phase divergence is nonzero", cert.phase_divergence.to_string());
  if (!cert.jacobi_expansion.is_zero())
    throw CertificateFailure(who + ": Jacobi expansion is nonzero", cert.jacobi_expansion.to_string());
  if (cert.base && !cert.base->residual.is_zero())
    throw CertificateFailure(who + ": base divergence is not a combination of d_xn(A_j) Z(x_j)",
                             cert.base->residual.to_string());
  return cert;
}

std::vector<std::pair<IndexSet, Polynomial>> singular_set_equations(const Frame& frame, const GohMatrix& goh,
                                                                     std::size_t r) {
  if (!goh.reduced) throw StructuralError("singular set equations need a frame in corank-one normal form");
  if (r % 2 == 1 || r > frame.rank()) throw RangeError("minor size must be even and at most m");
  PfaffianTable<Polynomial> table(*goh.reduced);
  std::vector<std::pair<IndexSet, Polynomial>> out;
  for (const IndexSet& set : subsets(frame.rank(), r)) out.emplace_back(set, table(set));
  return out;
}

}  // namespace goh
