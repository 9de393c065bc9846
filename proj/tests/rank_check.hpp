#pragma once

#include "goh/linalg.hpp"
#include "goh/normal_form.hpp"
#include "support.hpp"

namespace goh::testing {

struct RankComparison {
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t inconclusive = 0;
};

// Compares kernel_dim_at of `frame` and of its order-d normal form at
// matched annihilator points. A point y near the origin carries an output
// covector q (free last n - m coordinates, the rest forced by the normal
// form); the input side uses the exact pullback B^-1 X(B y) with the same
// free coordinates, then maps back by x = B y, p = B^-T q~. A sample counts
// when the output rank there equals its generic rank, witnessed by a
// nonzero Pfaffian minor.
inline RankComparison compare_normal_form_ranks(const Frame& frame, std::uint32_t order, std::size_t samples,
                                                Rng& rng) {
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  const LinearNormalization result = normalize_frame(JetFrame::from_frame(frame, order));
  const Frame normalized = result.frame.to_frame();
  const GohMatrix in_goh = goh_matrix(frame);
  const GohMatrix out_goh = goh_matrix(normalized);
  const std::size_t out_rank = generic_goh_rank(normalized, out_goh);
  const RationalMatrix& basis = result.basis;
  const RationalMatrix inv = *inverse(basis);
  const RationalMatrix inv_t = inv.transposed();

  RankComparison tally;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Rational> y, q(n);
    for (std::size_t k = 0; k < n; ++k) y.push_back(rng.rational(1, 10) / 10);
    for (std::size_t k = m; k < n; ++k) q[k] = nonzero_rational(rng, 2, 4);
    for (std::size_t k = 0; k < m; ++k) {
      Rational v = 0;
      for (std::size_t i = m; i < n; ++i) v -= normalized.field(k)[i].evaluate(y) * q[i];
      q[k] = v;
    }

    const std::vector<Rational> x = basis * y;
    // Pulled-back fields at y: B^-1 X(x).
    RationalMatrix block(m, m);
    std::vector<Rational> rhs(m);
    for (std::size_t k = 0; k < m; ++k) {
      const std::vector<Rational> pulled = inv * frame.field(k).evaluate(x);
      for (std::size_t i = 0; i < m; ++i) block(k, i) = pulled[i];
      for (std::size_t i = m; i < n; ++i) rhs[k] -= pulled[i] * q[i];
    }
    const auto block_inv = inverse(block);
    if (!block_inv) {
      ++tally.inconclusive;
      continue;
    }
    std::vector<Rational> q_in = q;
    const std::vector<Rational> head = *block_inv * rhs;
    for (std::size_t i = 0; i < m; ++i) q_in[i] = head[i];

    const PhasePoint out_point{y, q};
    const auto joined = out_point.joined();
    const auto h = out_goh.full.map([&](const Polynomial& f) { return f.evaluate(joined); });
    PfaffianTable<Rational> table(h);
    bool conclusive = out_rank == 0;
    for (const IndexSet& set : subsets(m, out_rank))
      if (!conclusive && !is_zero(table(set))) conclusive = true;
    if (!conclusive) {
      ++tally.inconclusive;
      continue;
    }
    const PhasePoint in_point{x, inv_t * q_in};
    if (kernel_dim_at(frame, in_goh, in_point) == kernel_dim_at(normalized, out_goh, out_point)) {
      ++tally.agree;
    } else {
      ++tally.disagree;
    }
  }
  return tally;
}

}  // namespace goh::testing
