#include "goh/normal_form.hpp"

#include "goh/errors.hpp"

namespace goh {

std::string JetStage::to_string() const {
  switch (kind) {
    case Kind::raw:
      return "raw";
    case Kind::v:
      return "V(" + std::to_string(j) + ")";
    case Kind::z:
      return "Z(" + std::to_string(j) + ")";
    case Kind::normal:
      return "normal";
  }
  return "raw";
}

JetFrame::JetFrame(std::vector<std::vector<JetSeries>> components, JetStage stage)
    : components_(std::move(components)), stage_(stage) {
  if (components_.empty() || components_.front().empty()) throw DimensionError("jet frame needs fields");
  n_ = components_.front().size();
  order_ = components_.front().front().order();
  for (const auto& field : components_) {
    if (field.size() != n_) throw DimensionError("jet frame fields disagree on dimension");
    for (const auto& c : field) {
      if (c.dimension() != n_) throw DimensionError("jet components must live on R^" + std::to_string(n_));
      if (c.order() != order_) throw DimensionError("jet frame components disagree on order");
    }
  }
  if (components_.size() >= n_) throw DimensionError("jet frame rank must be below the dimension");
}

JetFrame JetFrame::from_frame(const Frame& frame, std::uint32_t order) {
  std::vector<std::vector<JetSeries>> components;
  for (const auto& field : frame.fields()) {
    std::vector<JetSeries> row;
    for (const auto& c : field.components()) row.emplace_back(c, order);
    components.push_back(std::move(row));
  }
  return JetFrame(std::move(components));
}

bool JetFrame::in_v(std::size_t j) const {
  const std::size_t m = rank();
  const Polynomial one = Polynomial::one(Ambient::base(n_));
  for (std::size_t k = 1; k <= m; ++k)
    for (std::size_t i = 1; i <= n_; ++i) {
      const JetSeries& c = component(k, i);
      if (i == k) {
        if (c.constant_term() != 1) return false;
        if (i < j && !(c.body() == one)) return false;
      } else {
        if (!is_zero(c.constant_term())) return false;
        if (i <= m && i < j && !c.is_zero()) return false;
      }
    }
  return true;
}

bool JetFrame::in_z(std::size_t j) const {
  return in_v(j) && component(j, j).body() == Polynomial::one(Ambient::base(n_));
}

Frame JetFrame::to_frame() const {
  std::vector<VectorField> fields;
  for (const auto& row : components_) {
    std::vector<Polynomial> c;
    for (const auto& jet : row) c.push_back(jet.body());
    fields.emplace_back(std::move(c), FieldKind::base);
  }
  return Frame(std::move(fields));
}

LinearNormalization normalize_linear(const JetFrame& frame) {
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  std::vector<std::vector<Rational>> columns;
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<Rational> col;
    for (std::size_t i = 1; i <= n; ++i) col.push_back(frame.component(k, i).constant_term());
    columns.push_back(std::move(col));
  }
  auto rank_of = [n](const std::vector<std::vector<Rational>>& cols) {
    RationalMatrix a(cols.size(), n);
    for (std::size_t r = 0; r < cols.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = cols[r][c];
    return rank(a);
  };
  if (rank_of(columns) != m) throw IndependenceError("constant terms of the frame are linearly dependent");
  for (std::size_t e = 0; e < n && columns.size() < n; ++e) {
    std::vector<Rational> unit(n);
    unit[e] = 1;
    columns.push_back(unit);
    if (rank_of(columns) != columns.size()) columns.pop_back();
  }
  RationalMatrix basis(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) basis(r, c) = columns[c][r];
  const RationalMatrix inv = *inverse(basis);

  const Ambient amb = Ambient::base(n);
  std::vector<Polynomial> images;
  for (std::size_t r = 0; r < n; ++r) {
    Polynomial img(amb);
    for (std::size_t c = 0; c < n; ++c)
      if (!is_zero(basis(r, c))) img += Polynomial::x(amb, c + 1) * basis(r, c);
    images.push_back(std::move(img));
  }
  std::vector<std::vector<JetSeries>> out;
  for (const auto& row : frame.components()) {
    std::vector<Polynomial> pulled;
    for (const auto& jet : row) pulled.push_back(jet.body().compose(images, amb));
    std::vector<JetSeries> new_row;
    for (std::size_t r = 0; r < n; ++r) {
      Polynomial c(amb);
      for (std::size_t s = 0; s < n; ++s)
        if (!is_zero(inv(r, s))) c += pulled[s] * inv(r, s);
      new_row.emplace_back(std::move(c), frame.order());
    }
    out.push_back(std::move(new_row));
  }
  return {JetFrame(std::move(out), JetStage::v(1)), basis};
}

JetFrame phi_step(const JetFrame& frame, std::size_t j) {
  if (j < 1 || j > frame.rank()) throw RangeError("phi_step index out of range");
  if (!frame.in_v(j)) throw StructuralError("phi_step needs a frame in stage V(" + std::to_string(j) + ")");
  const JetSeries scale = series_invert_unit(frame.component(j, j));
  auto components = frame.components();
  for (auto& c : components[j - 1]) c = scale * c;
  return JetFrame(std::move(components), JetStage::z(j));
}

JetFrame psi_step(const JetFrame& frame, std::size_t j) {
  if (j < 1 || j > frame.rank()) throw RangeError("psi_step index out of range");
  if (!frame.in_z(j)) throw StructuralError("psi_step needs a frame in stage Z(" + std::to_string(j) + ")");
  auto components = frame.components();
  const auto& pivot = frame.components()[j - 1];
  for (std::size_t k = 1; k <= frame.rank(); ++k) {
    if (k == j) continue;
    const JetSeries a = frame.component(k, j);
    if (a.is_zero()) continue;
    for (std::size_t i = 0; i < frame.dimension(); ++i) components[k - 1][i] -= a * pivot[i];
  }
  const JetStage next = j == frame.rank() ? JetStage::normal() : JetStage::v(j + 1);
  return JetFrame(std::move(components), next);
}

LinearNormalization normalize_frame(const JetFrame& frame) {
  LinearNormalization result = normalize_linear(frame);
  for (std::size_t j = 1; j <= frame.rank(); ++j) result.frame = psi_step(phi_step(result.frame, j), j);
  return result;
}

}  // namespace goh
