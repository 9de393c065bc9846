#include "goh/pfaffian.hpp"

#include <algorithm>

namespace goh {

IndexSet::IndexSet(std::vector<std::size_t> elements) : elements_(std::move(elements)) {
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    const std::size_t e = elements_[k];
    if (e < 1 || e > 64) throw RangeError("index set elements must lie in 1..64");
    if (k > 0 && elements_[k - 1] >= e) throw RangeError("index set must be strictly increasing");
    mask_ |= detail::bit(e);
  }
}

IndexSet IndexSet::from_mask(std::uint64_t mask) {
  std::vector<std::size_t> el;
  for (std::uint64_t scan = mask; scan != 0; scan &= scan - 1) el.push_back(detail::first_element(scan));
  return IndexSet(std::move(el));
}

IndexSet IndexSet::full(std::size_t m) {
  std::vector<std::size_t> el(m);
  for (std::size_t k = 0; k < m; ++k) el[k] = k + 1;
  return IndexSet(std::move(el));
}

std::size_t IndexSet::position(std::size_t i) const {
  if (i < 1 || i > 64 || !contains(i)) throw RangeError(std::to_string(i) + " is not an element of " + to_string());
  return detail::position_in(mask_, i);
}

IndexSet IndexSet::without(std::size_t i) const {
  if (i < 1 || i > 64 || !contains(i)) throw RangeError(std::to_string(i) + " is not an element of " + to_string());
  return from_mask(mask_ & ~detail::bit(i));
}

std::string IndexSet::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(elements_[k]);
  }
  return out + "}";
}

std::vector<IndexSet> subsets(std::size_t m, std::size_t l) {
  std::vector<IndexSet> out;
  if (l > m) return out;
  std::vector<std::size_t> current(l);
  for (std::size_t k = 0; k < l; ++k) current[k] = k + 1;
  while (true) {
    out.emplace_back(current);
    // Advance the rightmost element that still has room.
    std::size_t k = l;
    while (k > 0 && current[k - 1] == m - l + k) --k;
    if (k == 0) break;
    ++current[k - 1];
    for (std::size_t t = k; t < l; ++t) current[t] = current[t - 1] + 1;
  }
  return out;
}

int epsilon_sign(const IndexSet& set, std::size_t j) {
  return detail::sign_of_parity(set.position(j) - 1);
}

int epsilon_sign(const IndexSet& set, std::size_t j, std::size_t k, std::size_t l) {
  if (j == k || k == l || j == l) throw RangeError("triple sign needs distinct indices");
  std::uint64_t rest = set.mask();
  for (std::size_t i : {j, k, l}) {
    if (!set.contains(i)) throw RangeError(std::to_string(i) + " is not an element of " + set.to_string());
    rest &= ~detail::bit(i);
  }
  // Insert e_l, then e_k, then e_j at the front of the sorted wedge.
  std::size_t swaps = detail::position_in(rest, l) - 1;
  rest |= detail::bit(l);
  swaps += detail::position_in(rest, k) - 1;
  rest |= detail::bit(k);
  swaps += detail::position_in(rest, j) - 1;
  return detail::sign_of_parity(swaps);
}

// ------------------------------------------------------------- calibration

namespace {

template <class R>
SkewMatrix<R> block_matrix(std::size_t size, const R& zero) {
  SkewMatrix<R> a(size, zero);
  for (std::size_t i = 1; i + 1 <= size; i += 2) a.set(i, i + 1, ring_one_like(zero));
  return a;
}

// Recursion sum with unit prefactor; inner minors from the definition.
template <class R>
R raw_recursion(const SkewMatrix<R>& a, const IndexSet& set, std::size_t pivot) {
  const IndexSet rest = set.without(pivot);
  R sum = a.zero();
  for (std::size_t j : rest.elements()) {
    R term = a.entry(pivot, j) * pfaffian_by_definition(a, rest.without(j));
    if (epsilon_sign(set, pivot) * epsilon_sign(rest, j) < 0) term = -term;
    sum += term;
  }
  return sum;
}

}  // namespace

PfaffianCalibration::PfaffianCalibration() : recursion_(kMaxSize + 1), derivative_(kMaxSize + 1) {
  const Ambient line = Ambient::base(1);
  for (std::size_t size = 2; size <= kMaxSize; size += 2) {
    const IndexSet set = IndexSet::full(size);

    const auto block = block_matrix<Rational>(size, Rational(0));
    recursion_[size] = pfaffian_by_definition(block, set) / raw_recursion(block, set, 1);

    // a_12 = x1, other blocks 1, D = d/dx1: D(phi) against the pair sum.
    auto marked = block_matrix<Polynomial>(size, Polynomial::zero(line));
    marked.set(1, 2, Polynomial::x(line, 1));
    const Polynomial target = pfaffian_by_definition(marked, set).derivative(0);
    Polynomial raw = Polynomial::zero(line);
    for (std::size_t i : set.elements()) {
      const IndexSet rest = set.without(i);
      for (std::size_t j : rest.elements()) {
        Polynomial term = marked.entry(i, j).derivative(0) * pfaffian_by_definition(marked, rest.without(j));
        if (epsilon_sign(set, i) * epsilon_sign(rest, j) < 0) term = -term;
        raw += term;
      }
    }
    if (!raw.is_constant() || !target.is_constant() || raw.is_zero())
      throw StructuralError("derivative calibration produced a non-constant ratio");
    derivative_[size] = target.constant_term() / raw.constant_term();
  }
}

const PfaffianCalibration& PfaffianCalibration::instance() {
  static const PfaffianCalibration calibration;
  return calibration;
}

const Rational& PfaffianCalibration::recursion(std::size_t size) const {
  if (size % 2 == 1 || size == 0 || size > kMaxSize)
    throw RangeError("no recursion prefactor for subset size " + std::to_string(size));
  return recursion_[size];
}

const Rational& PfaffianCalibration::derivative(std::size_t size) const {
  if (size % 2 == 1 || size == 0 || size > kMaxSize)
    throw RangeError("no derivative prefactor for subset size " + std::to_string(size));
  return derivative_[size];
}

}  // namespace goh
