#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "goh/errors.hpp"
#include "goh/polynomial.hpp"

namespace goh {

// Strictly increasing subset of {1..m}, m <= 64.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> elements);
  static IndexSet from_mask(std::uint64_t mask);
  static IndexSet full(std::size_t m);

  const std::vector<std::size_t>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains(std::size_t i) const { return (mask_ >> (i - 1)) & 1U; }
  std::uint64_t mask() const { return mask_; }
  // 1-based position of i in the set.
  std::size_t position(std::size_t i) const;
  IndexSet without(std::size_t i) const;

  std::string to_string() const;  // "{1,2,4}"
  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.mask_ == b.mask_; }
  friend bool operator<(const IndexSet& a, const IndexSet& b) { return a.elements_ < b.elements_; }

 private:
  std::vector<std::size_t> elements_;
  std::uint64_t mask_ = 0;
};

// All l-subsets of {1..m} in lexicographic order.
std::vector<IndexSet> subsets(std::size_t m, std::size_t l);

// Sign with e_j ^ (wedge of e_i, i in I\{j}) = eps * (wedge of e_i, i in I):
// (-1)^(pos - 1).
int epsilon_sign(const IndexSet& set, std::size_t j);

// Sign of the ordered triple (j, k, l) relative to I: the sign with
// e_j ^ e_k ^ e_l ^ (wedge over I\{j,k,l}) = sign * (wedge over I).
int epsilon_sign(const IndexSet& set, std::size_t j, std::size_t k, std::size_t l);

// Ring helpers so the algorithms below work over Q and over Q[x, p].
inline Rational ring_zero_like(const Rational&) { return 0; }
inline Rational ring_one_like(const Rational&) { return 1; }
inline bool ring_is_zero(const Rational& q) { return is_zero(q); }
inline Polynomial ring_zero_like(const Polynomial& f) { return Polynomial::zero(f.ambient()); }
inline Polynomial ring_one_like(const Polynomial& f) { return Polynomial::one(f.ambient()); }
inline bool ring_is_zero(const Polynomial& f) { return f.is_zero(); }

// Antisymmetric m x m matrix; only the strict upper triangle is stored.
// Indices are 1-based to agree with IndexSet.
template <class R>
class SkewMatrix {
 public:
  SkewMatrix(std::size_t m, R zero) : m_(m), zero_(std::move(zero)), upper_(m * (m > 0 ? m - 1 : 0) / 2, zero_) {
    if (m > 64) throw RangeError("skew matrices are limited to size 64");
  }

  std::size_t size() const { return m_; }
  const R& zero() const { return zero_; }

  // a_ij for i < j; a_ji = -a_ij and a_ii = 0 are derived.
  void set(std::size_t i, std::size_t j, R value) {
    check(i, j);
    if (i == j) throw RangeError("diagonal of a skew matrix is structurally zero");
    if (i < j) {
      upper_[slot(i, j)] = std::move(value);
    } else {
      upper_[slot(j, i)] = -value;
    }
  }
  R entry(std::size_t i, std::size_t j) const {
    check(i, j);
    if (i == j) return zero_;
    return i < j ? upper_[slot(i, j)] : -upper_[slot(j, i)];
  }
  // Upper-triangle entry by reference, i < j.
  const R& upper(std::size_t i, std::size_t j) const { return upper_[slot(i, j)]; }

  template <class F>
  auto map(F&& fn) const -> SkewMatrix<decltype(fn(std::declval<const R&>()))> {
    using S = decltype(fn(std::declval<const R&>()));
    SkewMatrix<S> out(m_, fn(zero_));
    for (std::size_t i = 1; i <= m_; ++i)
      for (std::size_t j = i + 1; j <= m_; ++j) out.set(i, j, fn(upper(i, j)));
    return out;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) { return a.m_ == b.m_ && a.upper_ == b.upper_; }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > m_ || j > m_) throw RangeError("skew matrix index out of range");
  }
  std::size_t slot(std::size_t i, std::size_t j) const {
    // Row-major packing of {(i, j) : 1 <= i < j <= m}.
    return (i - 1) * m_ - (i - 1) * i / 2 + (j - i - 1);
  }

  std::size_t m_;
  R zero_;
  std::vector<R> upper_;
};

// Prefactors of the pivot recursion and of the derivative formula, fixed
// by exact comparison against the wedge-power definition on block matrices
// e1^e2 + e3^e4 + ... . Indexed by the (even) subset size.
class PfaffianCalibration {
 public:
  static constexpr std::size_t kMaxSize = 16;
  static const PfaffianCalibration& instance();

  const Rational& recursion(std::size_t size) const;
  const Rational& derivative(std::size_t size) const;

 private:
  PfaffianCalibration();
  std::vector<Rational> recursion_;
  std::vector<Rational> derivative_;
};

namespace detail {

inline int sign_of_parity(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

inline std::size_t count_above(std::uint64_t mask, std::size_t i) {
  // Elements of mask strictly greater than i (1-based).
  return static_cast<std::size_t>(std::popcount(i >= 64 ? 0 : (mask >> i)));
}

inline std::size_t first_element(std::uint64_t mask) { return static_cast<std::size_t>(std::countr_zero(mask)) + 1; }

// 1-based position of i inside mask.
inline std::size_t position_in(std::uint64_t mask, std::size_t i) {
  const std::uint64_t below = i == 1 ? 0 : (mask & ((std::uint64_t{1} << (i - 1)) - 1));
  return static_cast<std::size_t>(std::popcount(below)) + 1;
}

inline std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i - 1); }

}  // namespace detail

// phi(A, I) as the coefficient of e_I in (A_I)^{^s} / s!, |I| = 2s. Returns 1
// for the empty set and 0 for odd |I|. Exponential; intended as an oracle.
template <class R>
R pfaffian_by_definition(const SkewMatrix<R>& a, const IndexSet& set) {
  const R one = ring_one_like(a.zero());
  if (set.empty()) return one;
  if (set.size() % 2 == 1) return a.zero();
  const auto& el = set.elements();
  std::map<std::uint64_t, R> power{{0, one}};
  const std::size_t s = set.size() / 2;
  for (std::size_t step = 0; step < s; ++step) {
    std::map<std::uint64_t, R> next;
    for (const auto& [mask, coeff] : power) {
      for (std::size_t ii = 0; ii < el.size(); ++ii) {
        const std::size_t i = el[ii];
        if (mask & detail::bit(i)) continue;
        for (std::size_t jj = ii + 1; jj < el.size(); ++jj) {
          const std::size_t j = el[jj];
          if (mask & detail::bit(j)) continue;
          const R& aij = a.upper(i, j);
          if (ring_is_zero(aij)) continue;
          // e_S ^ e_i ^ e_j, sorted: e_i passes the elements of S above i,
          // then e_j passes those above j.
          const int sign = detail::sign_of_parity(detail::count_above(mask, i) + detail::count_above(mask, j));
          R term = coeff * aij;
          if (sign < 0) term = -term;
          const std::uint64_t key = mask | detail::bit(i) | detail::bit(j);
          auto it = next.find(key);
          if (it == next.end()) {
            next.emplace(key, std::move(term));
          } else {
            it->second += term;
            if (ring_is_zero(it->second)) next.erase(it);
          }
        }
      }
    }
    power = std::move(next);
    if (power.empty()) return a.zero();
  }
  auto it = power.find(set.mask());
  if (it == power.end()) return a.zero();
  Rational factorial = 1;
  for (std::size_t k = 2; k <= s; ++k) factorial *= static_cast<unsigned long>(k);
  return it->second * Rational(1 / factorial);
}

// Memoized Pfaffian minors of one matrix via the first-element pivot
// recursion. Not thread-safe; use one table per thread.
template <class R>
class PfaffianTable {
 public:
  explicit PfaffianTable(const SkewMatrix<R>& a) : a_(&a) {}

  const R& operator()(const IndexSet& set) { return get(set.mask()); }

  const R& get(std::uint64_t mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    R value = compute(mask);
    return memo_.emplace(mask, std::move(value)).first->second;
  }

 private:
  R compute(std::uint64_t mask) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size == 0) return ring_one_like(a_->zero());
    if (size % 2 == 1) return a_->zero();
    const std::size_t pivot = detail::first_element(mask);
    const std::uint64_t rest = mask & ~detail::bit(pivot);
    R sum = a_->zero();
    std::size_t pos = 0;
    for (std::uint64_t scan = rest; scan != 0; scan &= scan - 1) {
      const std::size_t j = detail::first_element(scan);
      ++pos;
      const R& aij = a_->upper(pivot, j);
      if (ring_is_zero(aij)) continue;
      const R& minor = get(rest & ~detail::bit(j));
      if (ring_is_zero(minor)) continue;
      if (pos % 2 == 1) {
        sum += aij * minor;
      } else {
        sum -= aij * minor;
      }
    }
    const Rational& c = PfaffianCalibration::instance().recursion(size);
    if (c != 1) sum = sum * c;
    return sum;
  }

  const SkewMatrix<R>* a_;
  std::unordered_map<std::uint64_t, R> memo_;
};

// c(|I|) * sum_{j in I\{i0}} eps(I,i0) eps(I\{i0},j) a_{i0 j} phi(A, I\{i0,j}),
// with the inner minors taken from the recursion as well.
template <class R>
R pfaffian_by_recursion(const SkewMatrix<R>& a, const IndexSet& set, std::size_t pivot) {
  if (set.size() % 2 == 1) throw RangeError("pivot recursion needs an even index set");
  if (set.empty()) throw RangeError("pivot recursion needs a nonempty index set");
  if (!set.contains(pivot)) throw RangeError("pivot " + std::to_string(pivot) + " not in " + set.to_string());
  PfaffianTable<R> table(a);
  const IndexSet rest = set.without(pivot);
  const int outer = epsilon_sign(set, pivot);
  R sum = a.zero();
  for (std::size_t j : rest.elements()) {
    const R aij = a.entry(pivot, j);
    if (ring_is_zero(aij)) continue;
    R term = aij * table.get(rest.mask() & ~detail::bit(j));
    if (outer * epsilon_sign(rest, j) < 0) term = -term;
    sum += term;
  }
  return sum * PfaffianCalibration::instance().recursion(set.size());
}

// D(phi(A, I)) = c'(|I|) * sum over ordered pairs i != j in I of
// eps(I,i) eps(I\{i},j) phi(A, I\{i,j}) D(a_ij), for a derivation D of R.
template <class R, class Derivation>
R pfaffian_derivative(const SkewMatrix<R>& a, const IndexSet& set, Derivation&& derive) {
  if (set.size() % 2 == 1) throw RangeError("derivative formula needs an even index set");
  if (set.empty()) return a.zero();
  PfaffianTable<R> table(a);
  R sum = a.zero();
  for (std::size_t i : set.elements()) {
    const IndexSet rest = set.without(i);
    const int outer = epsilon_sign(set, i);
    for (std::size_t j : rest.elements()) {
      const R d = derive(a.entry(i, j));
      if (ring_is_zero(d)) continue;
      R term = d * table.get(rest.mask() & ~detail::bit(j));
      if (outer * epsilon_sign(rest, j) < 0) term = -term;
      sum += term;
    }
  }
  return sum * PfaffianCalibration::instance().derivative(set.size());
}

// Z_I = sum_{i in I} eps(I,i) phi(A, I\{i}) e_i.
template <class R>
struct KernelGenerator {
  IndexSet set;
  std::vector<R> coefficients;  // one per element of set, in order

  // Dense vector of length m.
  std::vector<R> dense(std::size_t m, const R& zero) const {
    std::vector<R> out(m, zero);
    for (std::size_t k = 0; k < set.size(); ++k) out[set.elements()[k] - 1] = coefficients[k];
    return out;
  }
};

template <class R>
KernelGenerator<R> kernel_generator(PfaffianTable<R>& table, const IndexSet& set) {
  KernelGenerator<R> g{set, {}};
  g.coefficients.reserve(set.size());
  for (std::size_t i : set.elements()) {
    R c = table.get(set.mask() & ~detail::bit(i));
    if (epsilon_sign(set, i) < 0) c = -c;
    g.coefficients.push_back(std::move(c));
  }
  return g;
}

// One generator per I in Lambda_{r+1}, lexicographic.
template <class R>
std::vector<KernelGenerator<R>> kernel_generators(const SkewMatrix<R>& a, std::size_t r) {
  if (r % 2 == 1) throw RangeError("kernel generators need an even rank");
  if (r >= a.size()) throw RangeError("rank " + std::to_string(r) + " must be below size " + std::to_string(a.size()));
  PfaffianTable<R> table(a);
  std::vector<KernelGenerator<R>> out;
  for (const IndexSet& set : subsets(a.size(), r + 1)) out.push_back(kernel_generator(table, set));
  return out;
}

// M_A v, with v dense of length m.
template <class R>
std::vector<R> apply(const SkewMatrix<R>& a, const std::vector<R>& v) {
  std::vector<R> out(a.size(), a.zero());
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= a.size(); ++j) {
      if (i == j || ring_is_zero(v[j - 1])) continue;
      const R& e = i < j ? a.upper(i, j) : a.upper(j, i);
      if (ring_is_zero(e)) continue;
      if (i < j) {
        out[i - 1] += e * v[j - 1];
      } else {
        out[i - 1] -= e * v[j - 1];
      }
    }
  return out;
}

// Largest even r with a nonzero r-minor Pfaffian (over the fraction field
// when R is a polynomial ring).
template <class R>
std::size_t skew_rank(const SkewMatrix<R>& a) {
  PfaffianTable<R> table(a);
  for (std::size_t r = a.size() - a.size() % 2; r > 0; r -= 2)
    for (const IndexSet& set : subsets(a.size(), r))
      if (!ring_is_zero(table(set))) return r;
  return 0;
}

// Determinant of the minor with the given row and column sets, by Laplace
// expansion along rows, memoized over column subsets. Independent of the
// Pfaffian code; used as an oracle.
template <class R>
R minor_determinant(const SkewMatrix<R>& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.size() != cols.size()) throw DimensionError("minor needs as many rows as columns");
  const std::size_t k = rows.size();
  std::unordered_map<std::uint64_t, R> memo;
  // f(C) = det of rows[k-|C| .. k-1] against columns C.
  auto f = [&](auto&& self, std::uint64_t cmask) -> R {
    const std::size_t used = static_cast<std::size_t>(std::popcount(cmask));
    if (used == 0) return ring_one_like(a.zero());
    if (auto it = memo.find(cmask); it != memo.end()) return it->second;
    const std::size_t row = rows.elements()[k - used];
    R sum = a.zero();
    std::size_t pos = 0;
    for (std::uint64_t scan = cmask; scan != 0; scan &= scan - 1) {
      const std::size_t c = detail::first_element(scan);
      const R e = a.entry(row, c);
      if (!ring_is_zero(e)) {
        R term = e * self(self, cmask & ~detail::bit(c));
        if (pos % 2 == 1) term = -term;
        sum += term;
      }
      ++pos;
    }
    memo.emplace(cmask, sum);
    return sum;
  };
  return f(f, cols.mask());
}

template <class R>
R determinant(const SkewMatrix<R>& a, const IndexSet& set) {
  return minor_determinant(a, set, set);
}

}  // namespace goh
