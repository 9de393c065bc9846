#include "goh/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "goh/errors.hpp"

namespace goh {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  RationalMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

EchelonForm row_reduce(RationalMatrix m) {
  EchelonForm result;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    result.pivots.push_back(col);
    ++row;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  const EchelonForm ef = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = 1;
  }
  const EchelonForm ef = row_reduce(std::move(augmented));
  if (ef.pivots.size() < n || ef.pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ef.reduced(r, n + c);
  return inv;
}

Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(a(pivot, col))) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(a(r, col))) continue;
      const Rational factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

// ---------------------------------------------------------------- Univariate

Univariate::Univariate(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && goh::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational Univariate::evaluate(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Univariate::evaluate(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

Univariate Univariate::derivative() const {
  std::vector<Rational> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * static_cast<unsigned long>(k));
  return Univariate(std::move(d));
}

Univariate Univariate::monic() const {
  if (coeffs_.empty()) return {};
  const Rational lead = coeffs_.back();
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v /= lead;
  return Univariate(std::move(c));
}

namespace {

std::pair<Univariate, Univariate> divide(const Univariate& a, const Univariate& b) {
  if (b.is_zero()) throw RangeError("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const long db = b.degree();
  std::vector<Rational> quot(std::max<long>(a.degree() - db + 1, 0));
  for (long k = a.degree(); k >= db; --k) {
    const Rational factor = rem[k] / bc[db];
    if (is_zero(factor)) continue;
    quot[k - db] = factor;
    for (long j = 0; j <= db; ++j) rem[k - db + j] -= factor * bc[j];
  }
  rem.resize(std::max<long>(db, 0));
  return {Univariate(std::move(quot)), Univariate(std::move(rem))};
}

int sign_of(const Rational& q) { return sgn(q); }

// Sturm sequence f, f', -rem(f, f'), ...
std::vector<Univariate> sturm_sequence(const Univariate& f) {
  std::vector<Univariate> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    Univariate r = remainder(seq[seq.size() - 2], seq.back());
    std::vector<Rational> neg = r.coefficients();
    for (auto& c : neg) c = -c;
    seq.emplace_back(std::move(neg));
  }
  seq.pop_back();
  return seq;
}

int sign_changes(const std::vector<Univariate>& seq, const Rational& t) {
  int changes = 0;
  int last = 0;
  for (const auto& g : seq) {
    const int s = sign_of(g.evaluate(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Univariate remainder(const Univariate& a, const Univariate& b) { return divide(a, b).second; }
Univariate quotient(const Univariate& a, const Univariate& b) { return divide(a, b).first; }

Univariate gcd(const Univariate& a, const Univariate& b) {
  Univariate x = a;
  Univariate y = b;
  while (!y.is_zero()) {
    Univariate r = remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Univariate squarefree_part(const Univariate& f) {
  if (f.degree() <= 0) return f.monic();
  return quotient(f, gcd(f, f.derivative())).monic();
}

Rational bounded_convergent(const Rational& q, const Integer& max_denominator) {
  // Convergents h/k of the continued fraction of q.
  Integer h_prev = 0, h = 1, k_prev = 1, k = 0;
  Integer num = q.get_num();
  Integer den = q.get_den();
  Rational best = 0;
  bool have = false;
  while (sgn(den) != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const Integer h_next = a * h + h_prev;
    const Integer k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    best = make_rational(h, k);
    have = true;
    const Integer r = num - a * den;
    num = den;
    den = r;
  }
  return have ? best : Rational(0);
}

std::vector<RealRoot> real_roots(const Univariate& input) {
  if (input.is_zero()) throw RangeError("real_roots of the zero polynomial");
  std::vector<RealRoot> roots;
  if (input.degree() == 0) return roots;
  const Univariate f = squarefree_part(input);
  const auto seq = sturm_sequence(f);

  // Cauchy bound: every root satisfies |t| < 1 + max |c_i / c_lead|.
  Rational bound = 0;
  const auto& c = f.coefficients();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, Rational(abs(c[i] / c.back())));
  bound += 1;

  const Rational width_target("1/1152921504606846976");  // 2^-60
  struct Interval {
    Rational lo, hi;  // open interval (lo, hi)
  };
  auto count_in = [&](const Interval& iv) {
    return sign_changes(seq, iv.lo) - sign_changes(seq, iv.hi) - (is_zero(f.evaluate(iv.hi)) ? 1 : 0);
  };

  std::vector<Interval> stack{{-bound, bound}};
  std::vector<Rational> exact_found;
  std::vector<Interval> isolated;
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const int count = count_in(iv);
    if (count <= 0) continue;
    const Rational mid = (iv.lo + iv.hi) / 2;
    if (count == 1 && (iv.hi - iv.lo) * (1 + abs(mid)) < width_target * (1 + abs(mid)) * (1 + abs(mid))) {
      isolated.push_back(iv);
      continue;
    }
    if (is_zero(f.evaluate(mid))) exact_found.push_back(mid);
    stack.push_back({iv.lo, mid});
    stack.push_back({mid, iv.hi});
  }

  for (const auto& r : exact_found) roots.push_back({r.get_d(), r, r, r});
  for (const auto& iv : isolated) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    RealRoot root{mid.get_d(), std::nullopt, iv.lo, iv.hi};
    // A rational root p/q lies within 2^-60 of mid; its convergent with
    // q below 2^28 is unique in that window, so an exact check settles it.
    const Rational candidate = bounded_convergent(mid, Integer(1) << 28);
    if (candidate > iv.lo && candidate < iv.hi && is_zero(f.evaluate(candidate)))
      root = {candidate.get_d(), candidate, candidate, candidate};
    roots.push_back(root);
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.approx < b.approx; });
  return roots;
}

std::size_t count_roots(const Univariate& input, const Rational& lo, const Rational& hi) {
  if (input.is_zero()) throw RangeError("count_roots of the zero polynomial");
  if (input.degree() == 0 || lo >= hi) return 0;
  const Univariate f = squarefree_part(input);
  const auto seq = sturm_sequence(f);
  const int count = sign_changes(seq, lo) - sign_changes(seq, hi) - (is_zero(f.evaluate(hi)) ? 1 : 0);
  return static_cast<std::size_t>(std::max(count, 0));
}

bool vanishes_at(const Univariate& h, const Univariate& f, const RealRoot& root) {
  if (h.is_zero()) return true;
  if (root.exact) return is_zero(h.evaluate(*root.exact));
  // Roots of gcd(f, h) are roots of f, and the interval holds only one.
  const Univariate common = gcd(f, h);
  return common.degree() > 0 && count_roots(common, root.lo, root.hi) > 0;
}

}  // namespace goh
