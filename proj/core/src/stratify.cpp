#include "goh/stratify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

#include "goh/errors.hpp"
#include "goh/linalg.hpp"

namespace goh {

std::vector<std::size_t> Stratification::dims() const {
  std::vector<std::size_t> out;
  for (const auto& level : levels) out.push_back(level.kernel_dim);
  return out;
}

namespace {

constexpr double kGrid = 1048576.0;  // samples sit on the grid k / 2^20

std::size_t float_rank(const Eigen::MatrixXd& a, double tolerance) {
  if (a.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double largest = s.size() ? s(0) : 0.0;
  if (largest == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tolerance * largest) ++rank;
  return rank;
}

Eigen::MatrixXd evaluate_dense(const SkewMatrix<Polynomial>& a, std::span<const double> point) {
  const auto m = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double v = a.upper(i + 1, j + 1).evaluate(point);
      out(i, j) = v;
      out(j, i) = -v;
    }
  return out;
}

std::size_t exact_rank(const SkewMatrix<Polynomial>& a, std::span<const Rational> point) {
  return skew_rank(a.map([&](const Polynomial& f) { return f.evaluate(point); }));
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

// Restriction of a base polynomial to the line x = a + t v.
Univariate restrict_to_line(const Polynomial& f, const std::vector<Rational>& a, const std::vector<Rational>& v) {
  const Ambient line = Ambient::base(1);
  std::vector<Polynomial> images;
  for (std::size_t k = 0; k < a.size(); ++k)
    images.push_back(Polynomial::constant(line, a[k]) + Polynomial::x(line, 1) * v[k]);
  const Polynomial g = f.compose(images, line);
  std::vector<Rational> coeffs(g.total_degree() + 1);
  for (const auto& [mono, c] : g.terms()) coeffs[mono.degree()] = c;
  return Univariate(std::move(coeffs));
}

class Recorder {
 public:
  Recorder(const Frame& frame, const StratifyConfig& config) : frame_(frame), config_(config) {}

  void add(Witness w, std::size_t rank) {
    const std::size_t m = frame_.rank();
    if ((m - w.kernel_dim) % 2 != 0) throw StructuralError("kernel dimension with the wrong parity");
    auto& level = levels_[w.kernel_dim];
    level.kernel_dim = w.kernel_dim;
    level.rank = rank;
    ++level.observations;
    if (level.witnesses.size() < config_.max_witnesses) level.witnesses.push_back(std::move(w));
  }

  std::vector<StratumLevel> take() {
    std::vector<StratumLevel> out;
    for (auto& [dim, level] : levels_) out.push_back(std::move(level));
    return out;
  }

 private:
  const Frame& frame_;
  const StratifyConfig& config_;
  std::map<std::size_t, StratumLevel> levels_;
};

}  // namespace

Stratification stratify(const Frame& frame, const GohMatrix& goh, const StratifyConfig& config) {
  if (!(config.lower < config.upper)) throw SamplingError("sampling box is empty");
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  Stratification result;
  Recorder recorder(frame, config);
  Rng rng(config.seed);

  // The reduced matrix carries the rank in corank one (p_n = 1 gauge).
  const bool reduced = goh.reduced.has_value();
  std::size_t valid = 0;
  for (std::size_t s = 0; s < config.samples; ++s) {
    PhasePoint point;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = std::round(rng.uniform(config.lower, config.upper) * kGrid);
      point.x.push_back(make_rational(static_cast<long>(u), static_cast<long>(kGrid)));
    }
    if (reduced) {
      for (std::size_t k = 0; k + 1 < n; ++k) point.p.push_back(-(*frame.normal_form())[k].evaluate(point.x));
      point.p.emplace_back(1);
    } else {
      RationalMatrix values(m, n);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) values(i, k) = frame.field(i)[k].evaluate(point.x);
      const auto basis = nullspace(values);
      if (basis.size() != n - m) continue;
      point.p.assign(n, Rational(0));
      for (const auto& v : basis) {
        const Rational c(rng.integer(1, 8));
        for (std::size_t k = 0; k < n; ++k) point.p[k] += c * v[k];
      }
    }
    ++valid;
    const auto joined = point.joined();
    const auto joined_d = to_doubles(joined);
    const auto x_d = to_doubles(point.x);
    const std::size_t approx =
        reduced ? float_rank(evaluate_dense(*goh.reduced, x_d), config.tolerance)
                : float_rank(evaluate_dense(goh.full, joined_d), config.tolerance);
    const std::size_t rank = reduced ? exact_rank(*goh.reduced, point.x) : exact_rank(goh.full, joined);
    if (approx != rank) ++result.float_disagreements;
    Witness w{Witness::Source::sample, x_d, to_doubles(point.p), point, m - rank};
    recorder.add(std::move(w), rank);
  }
  if (valid == 0) throw SamplingError("no valid annihilator sample in the box");
  result.samples = valid;

  if (reduced) {
    const std::size_t top = skew_rank(*goh.reduced);
    result.generic_rank = top;
    // Minors of each even size restricted to random lines; the gcd at size
    // `top` cuts out where the rank drops, and the smaller sizes decide the
    // exact rank at each root.
    Rng line_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::vector<Polynomial>> minors(top + 1);
    for (std::size_t size = 2; size <= top; size += 2)
      for (auto& [set, phi] : singular_set_equations(frame, goh, size))
        if (!phi.is_zero()) minors[size].push_back(std::move(phi));

    for (std::size_t line = 0; line < config.lines && top >= 2; ++line) {
      std::vector<Rational> a, v;
      bool moving = false;
      for (std::size_t k = 0; k < n; ++k) {
        const double u = std::round(line_rng.uniform(config.lower, config.upper) * 16.0);
        a.push_back(make_rational(static_cast<long>(u), 16L));
        v.emplace_back(line_rng.integer(-3, 3));
        moving = moving || !is_zero(v.back());
      }
      if (!moving) continue;
      ++result.lines;
      // t-range keeping the point inside the box.
      Rational t_lo = -1000000, t_hi = 1000000;
      const Rational box_lo = rational_from_double(config.lower), box_hi = rational_from_double(config.upper);
      for (std::size_t k = 0; k < n; ++k) {
        if (is_zero(v[k])) continue;
        Rational e1 = (box_lo - a[k]) / v[k], e2 = (box_hi - a[k]) / v[k];
        if (e1 > e2) std::swap(e1, e2);
        t_lo = std::max(t_lo, e1);
        t_hi = std::min(t_hi, e2);
      }
      std::vector<Univariate> gcds(top + 1);
      for (std::size_t size = 2; size <= top; size += 2) {
        Univariate g;
        for (const auto& phi : minors[size]) g = gcd(g, restrict_to_line(phi, a, v));
        gcds[size] = g;
      }
      const Univariate& locus = gcds[top];
      if (locus.is_zero() || locus.degree() <= 0) continue;  // line inside the locus, or missing it
      for (const RealRoot& root : real_roots(locus)) {
        if (root.hi < t_lo || root.lo > t_hi) continue;
        std::size_t rank = 0;
        for (std::size_t size = top - 2; size >= 2; size -= 2)
          if (!vanishes_at(gcds[size], locus, root)) {
            rank = size;
            break;
          }
        Witness w;
        w.source = Witness::Source::line;
        w.kernel_dim = m - rank;
        if (root.exact) {
          PhasePoint point;
          for (std::size_t k = 0; k < n; ++k) point.x.push_back(a[k] + *root.exact * v[k]);
          for (std::size_t k = 0; k + 1 < n; ++k) point.p.push_back(-(*frame.normal_form())[k].evaluate(point.x));
          point.p.emplace_back(1);
          if (kernel_dim_at(frame, goh, point) != w.kernel_dim)
            throw StructuralError("exact rank at a line witness disagrees with its Sturm certificate");
          w.x = to_doubles(point.x);
          w.p = to_doubles(point.p);
          w.exact = std::move(point);
        } else {
          for (std::size_t k = 0; k < n; ++k) w.x.push_back(a[k].get_d() + root.approx * v[k].get_d());
          for (std::size_t k = 0; k + 1 < n; ++k) w.p.push_back(-(*frame.normal_form())[k].evaluate(w.x));
          w.p.push_back(1.0);
        }
        recorder.add(std::move(w), rank);
      }
    }
  } else {
    result.generic_rank = generic_goh_rank(frame, goh);
  }

  result.levels = recorder.take();
  for (auto& level : result.levels) {
    if (reduced && level.rank + 2 <= result.generic_rank)
      for (auto& [set, phi] : singular_set_equations(frame, goh, level.rank + 2))
        if (!phi.is_zero()) level.vanishing_loci.emplace_back(set, std::move(phi));
  }
  return result;
}

}  // namespace goh
