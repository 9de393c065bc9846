#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "goh/abnormal.hpp"

namespace goh {

struct StratifyConfig {
  double lower = -1.0;  // sampling box [lower, upper]^n
  double upper = 1.0;
  std::size_t samples = 256;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;  // relative singular-value threshold
  std::size_t lines = 16;   // random lines searched for lower-rank points
  std::size_t max_witnesses = 4;
};

struct Witness {
  enum class Source { sample, line };
  Source source = Source::sample;
  std::vector<double> x;
  std::vector<double> p;
  // Exact coordinates when the witness is rational. Line witnesses at
  // irrational roots have their rank decided exactly through Sturm counts.
  std::optional<PhasePoint> exact;
  std::size_t kernel_dim = 0;
};

struct StratumLevel {
  std::size_t kernel_dim = 0;
  std::size_t rank = 0;
  std::size_t observations = 0;
  // Reduced Pfaffian minors of size rank + 2; all vanish on this level.
  // Empty for the generic level and for frames without a normal form.
  std::vector<std::pair<IndexSet, Polynomial>> vanishing_loci;
  std::vector<Witness> witnesses;
};

struct Stratification {
  std::vector<StratumLevel> levels;  // increasing kernel dimension
  std::size_t generic_rank = 0;
  std::size_t samples = 0;
  std::size_t lines = 0;
  // Samples whose floating rank disagreed with the exact rank (the exact
  // rank is the one recorded).
  std::size_t float_disagreements = 0;

  std::vector<std::size_t> dims() const;
};

// Kernel dimensions of H over the annihilator, observed on seeded random
// samples and, for corank-one frames, on exact points of the lower-rank loci
// found along random lines. Deterministic given the config. Throws
// SamplingError when no valid sample exists.
Stratification stratify(const Frame& frame, const GohMatrix& goh, const StratifyConfig& config);

}  // namespace goh
