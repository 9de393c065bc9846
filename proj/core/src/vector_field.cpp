#include "goh/vector_field.hpp"

#include "goh/errors.hpp"
#include "goh/linalg.hpp"

namespace goh {

VectorField::VectorField(std::vector<Polynomial> components, FieldKind kind)
    : kind_(kind), components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("vector field needs at least one component");
  const Ambient amb = components_.front().ambient();
  n_ = amb.n;
  const std::size_t expected = kind == FieldKind::base ? n_ : 2 * n_;
  if (components_.size() != expected)
    throw DimensionError("vector field has " + std::to_string(components_.size()) + " components, expected " +
                         std::to_string(expected));
  for (auto& c : components_) {
    if (c.ambient().n != n_) throw DimensionError("vector field components disagree on dimension");
    if (kind == FieldKind::phase && !c.ambient().fiber) c = c.embedded(Ambient::phase(n_));
    if (kind == FieldKind::base && c.ambient().fiber) c = c.restricted_to_base();
  }
}

VectorField VectorField::zero(std::size_t n, FieldKind kind) {
  const Ambient amb = kind == FieldKind::base ? Ambient::base(n) : Ambient::phase(n);
  return VectorField(std::vector<Polynomial>(amb.variable_count(), Polynomial::zero(amb)), kind);
}

VectorField VectorField::coordinate(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw RangeError("coordinate field index out of range");
  std::vector<Polynomial> c(n, Polynomial::zero(Ambient::base(n)));
  c[k - 1] = Polynomial::one(Ambient::base(n));
  return VectorField(std::move(c), FieldKind::base);
}

bool VectorField::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

void VectorField::require_compatible(const VectorField& other) const {
  if (kind_ != other.kind_) throw DimensionError("vector field kind mismatch (base vs phase)");
  if (n_ != other.n_) throw DimensionError("vector field dimension mismatch");
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += other.components_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= other.components_[i];
  return *this;
}

VectorField operator*(const Polynomial& f, const VectorField& v) {
  VectorField out = v;
  const Polynomial g = f.ambient() == v.ambient() ? f : f.embedded(v.ambient());
  for (auto& c : out.components_) c = g * c;
  return out;
}

VectorField operator*(const Rational& c, const VectorField& v) {
  VectorField out = v;
  for (auto& comp : out.components_) comp *= c;
  return out;
}

Polynomial VectorField::apply(const Polynomial& f) const {
  const Ambient amb = ambient();
  Polynomial g = f;
  if (!(g.ambient() == amb)) {
    if (kind_ == FieldKind::phase && g.ambient() == Ambient::base(n_)) {
      g = g.embedded(amb);
    } else {
      throw DimensionError("function and vector field live on different spaces");
    }
  }
  Polynomial out(amb);
  for (std::size_t k = 0; k < components_.size(); ++k) {
    if (components_[k].is_zero()) continue;
    out += components_[k] * g.derivative(k);
  }
  return out;
}

std::vector<Polynomial> VectorField::x_block() const {
  return {components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(n_)};
}

std::vector<Polynomial> VectorField::p_block() const {
  if (kind_ != FieldKind::phase) throw DimensionError("base field has no p-block");
  return {components_.begin() + static_cast<std::ptrdiff_t>(n_), components_.end()};
}

namespace {

PDegree common_degree(std::span<const Polynomial> polys) {
  PDegree result{std::nullopt, true};
  for (const auto& f : polys) {
    const PDegree d = f.p_homogeneous_degree();
    if (d.zero) continue;
    if (!d.degree) return {std::nullopt, false};
    if (result.zero) {
      result = d;
    } else if (*result.degree != *d.degree) {
      return {std::nullopt, false};
    }
  }
  return result;
}

}  // namespace

BlockDegrees VectorField::block_degrees() const {
  const auto xs = x_block();
  const auto ps = p_block();
  return {common_degree(xs), common_degree(ps)};
}

std::vector<Rational> VectorField::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

std::vector<double> VectorField::evaluate(std::span<const double> point) const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

VectorField VectorField::truncated(std::uint64_t max_degree) const {
  VectorField out = *this;
  for (auto& c : out.components_) c = c.truncated(max_degree);
  return out;
}

std::string VectorField::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ", ";
    out += components_[i].to_string();
  }
  return out + ")";
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  if (a.kind() != b.kind() || a.dimension() != b.dimension())
    throw DimensionError("lie_bracket needs fields of the same kind and dimension");
  std::vector<Polynomial> out;
  out.reserve(a.components().size());
  for (std::size_t k = 0; k < a.components().size(); ++k) out.push_back(a.apply(b[k]) - b.apply(a[k]));
  return VectorField(std::move(out), a.kind());
}

Polynomial hamiltonian_lift(const VectorField& field) {
  if (field.kind() != FieldKind::base) throw DimensionError("hamiltonian_lift expects a base field");
  const std::size_t n = field.dimension();
  const Ambient phase = Ambient::phase(n);
  Polynomial h(phase);
  for (std::size_t k = 1; k <= n; ++k) {
    if (field[k - 1].is_zero()) continue;
    h += Polynomial::p(phase, k) * field[k - 1].embedded(phase);
  }
  return h;
}

namespace {

Polynomial as_phase(const Polynomial& h) {
  return h.ambient().fiber ? h : h.embedded(Ambient::phase(h.ambient().n));
}

}  // namespace

VectorField hamiltonian_vector_field(const Polynomial& h) {
  const Polynomial f = as_phase(h);
  const Ambient amb = f.ambient();
  const std::size_t n = amb.n;
  std::vector<Polynomial> c(2 * n, Polynomial::zero(amb));
  for (std::size_t k = 1; k <= n; ++k) {
    c[k - 1] = f.derivative(amb.p(k));
    c[n + k - 1] = -f.derivative(amb.x(k));
  }
  return VectorField(std::move(c), FieldKind::phase);
}

Polynomial poisson_bracket(const Polynomial& h, const Polynomial& g) {
  const Polynomial a = as_phase(h);
  const Polynomial b = as_phase(g);
  if (a.ambient() != b.ambient()) throw DimensionError("poisson_bracket dimension mismatch");
  const Ambient amb = a.ambient();
  Polynomial out(amb);
  for (std::size_t k = 1; k <= amb.n; ++k) {
    out += a.derivative(amb.p(k)) * b.derivative(amb.x(k));
    out -= a.derivative(amb.x(k)) * b.derivative(amb.p(k));
  }
  return out;
}

Polynomial divergence(const VectorField& field) {
  Polynomial out(field.ambient());
  for (std::size_t k = 0; k < field.components().size(); ++k) out += field[k].derivative(k);
  return out;
}

// ---------------------------------------------------------------- Frame

Frame::Frame(std::vector<VectorField> fields) : fields_(std::move(fields)) {
  if (fields_.empty()) throw DimensionError("frame needs at least one field");
  n_ = fields_.front().dimension();
  for (const auto& f : fields_) {
    if (f.kind() != FieldKind::base) throw DimensionError("frame fields must be base fields");
    if (f.dimension() != n_) throw DimensionError("frame fields disagree on dimension");
  }
  if (fields_.size() >= n_)
    throw DimensionError("frame rank " + std::to_string(fields_.size()) + " must be below dimension " +
                         std::to_string(n_));

  RationalMatrix values(fields_.size(), n_);
  for (std::size_t i = 0; i < fields_.size(); ++i)
    for (std::size_t k = 0; k < n_; ++k) values(i, k) = fields_[i][k].constant_term();
  if (goh::rank(values) != fields_.size())
    throw IndependenceError("frame fields are linearly dependent at the origin");

  // Corank-one normal form detection: X^i = d_i + A_i d_n.
  if (fields_.size() + 1 == n_) {
    std::vector<Polynomial> a;
    const Ambient base = Ambient::base(n_);
    bool shaped = true;
    for (std::size_t i = 0; i < fields_.size() && shaped; ++i) {
      for (std::size_t k = 0; k + 1 < n_ && shaped; ++k)
        shaped = fields_[i][k] == (k == i ? Polynomial::one(base) : Polynomial::zero(base));
      if (shaped) a.push_back(fields_[i][n_ - 1]);
    }
    if (shaped) normal_form_ = std::move(a);
  }
}

Frame Frame::corank_one(std::vector<Polynomial> normal_form) {
  if (normal_form.empty()) throw DimensionError("normal form needs at least one function");
  const std::size_t n = normal_form.size() + 1;
  const Ambient base = Ambient::base(n);
  std::vector<VectorField> fields;
  for (std::size_t i = 0; i < normal_form.size(); ++i) {
    const Polynomial& a = normal_form[i];
    if (a.ambient().n != n) throw DimensionError("normal form functions must live on R^" + std::to_string(n));
    std::vector<Polynomial> c(n, Polynomial::zero(base));
    c[i] = Polynomial::one(base);
    c[n - 1] = a.ambient().fiber ? a.restricted_to_base() : a;
    fields.emplace_back(std::move(c), FieldKind::base);
  }
  return Frame(std::move(fields));
}

bool Frame::bracket_generating_at(std::span<const Rational> point, std::size_t depth) const {
  if (point.size() != n_) throw DimensionError("point dimension mismatch");
  std::vector<std::vector<Rational>> rows;
  auto spans = [&] {
    RationalMatrix m(rows.size(), n_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = 0; k < n_; ++k) m(i, k) = rows[i][k];
    return goh::rank(m) == n_;
  };
  std::vector<VectorField> level = fields_;
  for (std::size_t length = 1; length <= depth; ++length) {
    for (const auto& v : level) rows.push_back(v.evaluate(point));
    if (spans()) return true;
    if (length == depth) break;
    std::vector<VectorField> next;
    for (const auto& x : fields_)
      for (const auto& v : level) {
        VectorField b = lie_bracket(x, v);
        if (!b.is_zero()) next.push_back(std::move(b));
      }
    level = std::move(next);
  }
  return false;
}

}  // namespace goh
