#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goh/abnormal.hpp"

namespace goh {

struct Trajectory {
  double step = 0.0;
  double horizon = 0.0;
  std::vector<double> times;                // 0 = t_0 < ... < t_N = horizon
  std::vector<std::vector<double>> states;  // x(t_k)
  std::vector<std::vector<double>> covectors;  // p(t_k), abnormal lifts only
  // Abnormal lifts only, aligned with states: |H~(x) u(x)|_inf and
  // max_i |p . X^i(x)|, with the per-step tolerance used for the first.
  std::vector<double> goh_residual;
  std::vector<double> goh_tolerance;
  std::vector<double> annihilation_residual;
  bool certified = false;
  std::string failure;  // first failed check, empty when certified
};

// Classical fixed-step RK4 on [0, horizon]; the last step is shortened when
// horizon is not a multiple of step. Throws BlowUpError on a non-finite state.
Trajectory integrate_field(const VectorField& field, const std::vector<double>& start, double horizon, double step);

// Integrates Z from a corank-one generator and lifts with p = (-A(x), 1).
// Residual failures are reported in the trajectory, not thrown.
Trajectory abnormal_trajectory(const Frame& frame, const GohMatrix& goh, const AbnormalGenerator& generator,
                               const std::vector<double>& start, double horizon, double step);

// "# seed=..., h=..., T=..." then rows t, x1..xn, residual_b, residual_c.
std::string trajectory_csv(const Trajectory& trajectory, std::uint64_t seed);

struct DivergenceScan {
  double lower = -1.0;
  double upper = 1.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double cutoff = 0.0;
  double ratio_sup = 0.0;  // max |div Z| / |Z| over samples with |Z| >= cutoff
  std::vector<double> argmax;
  std::size_t counted = 0;
  std::size_t excluded = 0;  // |Z| < cutoff
  // Samples with cutoff <= |Z| < 2 cutoff, first few kept.
  std::size_t offender_count = 0;
  std::vector<std::vector<double>> offenders;
};

DivergenceScan divergence_ratio_scan(const VectorField& field, double lower, double upper, std::size_t samples,
                                     std::uint64_t seed, double cutoff);

struct VolumeDistortion {
  std::vector<double> times;
  std::vector<double> min_weight;  // over the cloud, per time
  std::vector<double> max_weight;
  double k_hat = 0.0;
  double c_hat = 0.0;  // longest trajectory length
  double bound = 1.0;  // exp(-k_hat * c_hat)
};

// Weights exp(int_0^t div Z(x_i(s)) ds) by the trapezoid rule along RK4
// trajectories of each cloud point.
VolumeDistortion volume_distortion(const VectorField& field, const std::vector<std::vector<double>>& cloud,
                                   double horizon, double step, double k_hat);

// Uniform cloud in [lower, upper]^n.
std::vector<std::vector<double>> sample_cloud(std::size_t n, double lower, double upper, std::size_t count,
                                              std::uint64_t seed);

}  // namespace goh
