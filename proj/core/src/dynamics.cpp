#include "goh/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "goh/errors.hpp"

namespace goh {

namespace {

class CompiledField {
 public:
  explicit CompiledField(const VectorField& field) {
    if (field.kind() != FieldKind::base) throw DimensionError("integration needs a base field");
    for (const auto& c : field.components()) components_.emplace_back(c);
  }
  std::vector<double> operator()(const std::vector<double>& x) const {
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c(x));
    return out;
  }

 private:
  std::vector<CompiledPolynomial> components_;
};

std::vector<double> grid(double horizon, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw RangeError("step must be positive");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw RangeError("horizon must be nonnegative");
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  std::vector<double> times;
  times.reserve(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) times.push_back(static_cast<double>(k) * step);
  times.push_back(horizon);
  return times;
}

std::vector<double> axpy(const std::vector<double>& x, double a, const std::vector<double>& v) {
  std::vector<double> out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * v[i];
  return out;
}

bool finite(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

std::vector<std::vector<double>> rk4(const CompiledField& f, const std::vector<double>& start,
                                     const std::vector<double>& times) {
  std::vector<std::vector<double>> states{start};
  if (!finite(start)) throw BlowUpError("non-finite initial state", 0.0);
  for (std::size_t k = 1; k < times.size(); ++k) {
    const double h = times[k] - times[k - 1];
    const auto& x = states.back();
    const auto k1 = f(x);
    const auto k2 = f(axpy(x, h / 2, k1));
    const auto k3 = f(axpy(x, h / 2, k2));
    const auto k4 = f(axpy(x, h, k3));
    std::vector<double> next = x;
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    if (!finite(next)) throw BlowUpError("state became non-finite", times[k - 1]);
    states.push_back(std::move(next));
  }
  return states;
}

}  // namespace

Trajectory integrate_field(const VectorField& field, const std::vector<double>& start, double horizon, double step) {
  if (start.size() != field.dimension()) throw DimensionError("start point dimension mismatch");
  Trajectory t;
  t.step = step;
  t.horizon = horizon;
  t.times = grid(horizon, step);
  t.states = rk4(CompiledField(field), start, t.times);
  return t;
}

Trajectory abnormal_trajectory(const Frame& frame, const GohMatrix& goh, const AbnormalGenerator& generator,
                               const std::vector<double>& start, double horizon, double step) {
  if (!generator.z || !goh.reduced) throw StructuralError("abnormal trajectories need a corank-one projection");
  const std::size_t n = frame.dimension();
  const std::size_t m = frame.rank();
  Trajectory t = integrate_field(*generator.z, start, horizon, step);

  std::vector<CompiledPolynomial> a, u;
  for (const auto& f : *frame.normal_form()) a.emplace_back(f);
  for (const auto& f : generator.frame_coefficients) u.emplace_back(f);
  std::vector<std::vector<CompiledPolynomial>> h(m, std::vector<CompiledPolynomial>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) h[i][j] = CompiledPolynomial(goh.reduced->entry(i + 1, j + 1));
  std::vector<std::vector<CompiledPolynomial>> fields;
  for (const auto& x : frame.fields()) {
    std::vector<CompiledPolynomial> row;
    for (const auto& c : x.components()) row.emplace_back(c);
    fields.push_back(std::move(row));
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  t.certified = true;
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    const auto& x = t.states[k];
    std::vector<double> p;
    for (std::size_t i = 0; i + 1 < n; ++i) p.push_back(-a[i](x));
    p.push_back(1.0);

    std::vector<double> uv, umag;
    for (const auto& c : u) {
      uv.push_back(c(x));
      umag.push_back(c.magnitude(x));
    }
    double goh_res = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double row = 0.0, mag = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (i == j) continue;
        row += h[i][j](x) * uv[j];
        mag += h[i][j].magnitude(x) * umag[j];
      }
      goh_res = std::max(goh_res, std::abs(row));
      scale = std::max(scale, mag);
    }
    double ann = 0.0;
    for (const auto& row : fields) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += p[i] * row[i](x);
      ann = std::max(ann, std::abs(dot));
    }
    const double tol = 100.0 * eps * scale;
    t.covectors.push_back(std::move(p));
    t.goh_residual.push_back(goh_res);
    t.goh_tolerance.push_back(tol);
    t.annihilation_residual.push_back(ann);
    if (t.certified && goh_res > tol) {
      t.certified = false;
      t.failure = "Goh residual exceeds tolerance at t = " + std::to_string(t.times[k]);
    }
    if (t.certified && ann > 100.0 * eps) {
      t.certified = false;
      t.failure = "annihilation residual exceeds tolerance at t = " + std::to_string(t.times[k]);
    }
  }
  return t;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& t, std::uint64_t seed) {
  std::string out = "# seed=" + std::to_string(seed) + ", h=" + format_double(t.step) + ", T=" + format_double(t.horizon) + "\n";
  const std::size_t n = t.states.empty() ? 0 : t.states.front().size();
  out += "t";
  for (std::size_t i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  out += ",residual_b,residual_c\n";
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    out += format_double(t.times[k]);
    for (double v : t.states[k]) out += "," + format_double(v);
    out += "," + (k < t.goh_residual.size() ? format_double(t.goh_residual[k]) : std::string("0"));
    out += "," + (k < t.annihilation_residual.size() ? format_double(t.annihilation_residual[k]) : std::string("0"));
    out += "\n";
  }
  return out;
}

std::vector<std::vector<double>> sample_cloud(std::size_t n, double lower, double upper, std::size_t count,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> cloud(count, std::vector<double>(n));
  for (auto& x : cloud)
    for (auto& v : x) v = rng.uniform(lower, upper);
  return cloud;
}

DivergenceScan divergence_ratio_scan(const VectorField& field, double lower, double upper, std::size_t samples,
                                     std::uint64_t seed, double cutoff) {
  if (!(cutoff > 0.0)) throw RangeError("cutoff must be positive");
  if (!(lower < upper)) throw RangeError("scan box is empty");
  DivergenceScan scan;
  scan.lower = lower;
  scan.upper = upper;
  scan.samples = samples;
  scan.seed = seed;
  scan.cutoff = cutoff;
  const CompiledField f(field);
  const CompiledPolynomial div(divergence(field));
  constexpr std::size_t kKeptOffenders = 8;
  for (const auto& x : sample_cloud(field.dimension(), lower, upper, samples, seed)) {
    const auto z = f(x);
    double norm = 0.0;
    for (double v : z) norm += v * v;
    norm = std::sqrt(norm);
    if (norm < cutoff) {
      ++scan.excluded;
      continue;
    }
    ++scan.counted;
    if (norm < 2 * cutoff) {
      ++scan.offender_count;
      if (scan.offenders.size() < kKeptOffenders) scan.offenders.push_back(x);
    }
    const double ratio = std::abs(div(x)) / norm;
    if (ratio > scan.ratio_sup || scan.argmax.empty()) {
      scan.ratio_sup = std::max(scan.ratio_sup, ratio);
      scan.argmax = x;
    }
  }
  return scan;
}

VolumeDistortion volume_distortion(const VectorField& field, const std::vector<std::vector<double>>& cloud,
                                   double horizon, double step, double k_hat) {
  VolumeDistortion out;
  out.times = grid(horizon, step);
  out.k_hat = k_hat;
  out.min_weight.assign(out.times.size(), std::numeric_limits<double>::infinity());
  out.max_weight.assign(out.times.size(), -std::numeric_limits<double>::infinity());
  const CompiledField f(field);
  const CompiledPolynomial div(divergence(field));
  for (const auto& start : cloud) {
    if (start.size() != field.dimension()) throw DimensionError("cloud point dimension mismatch");
    const auto states = rk4(f, start, out.times);
    double integral = 0.0, length = 0.0;
    double previous = div(states.front());
    out.min_weight[0] = std::min(out.min_weight[0], 1.0);
    out.max_weight[0] = std::max(out.max_weight[0], 1.0);
    for (std::size_t k = 1; k < states.size(); ++k) {
      const double current = div(states[k]);
      integral += 0.5 * (out.times[k] - out.times[k - 1]) * (previous + current);
      previous = current;
      double d2 = 0.0;
      for (std::size_t i = 0; i < states[k].size(); ++i) d2 += (states[k][i] - states[k - 1][i]) * (states[k][i] - states[k - 1][i]);
      length += std::sqrt(d2);
      const double w = std::exp(integral);
      out.min_weight[k] = std::min(out.min_weight[k], w);
      out.max_weight[k] = std::max(out.max_weight[k], w);
    }
    out.c_hat = std::max(out.c_hat, length);
  }
  if (cloud.empty()) {
    out.min_weight.assign(out.times.size(), 1.0);
    out.max_weight.assign(out.times.size(), 1.0);
  }
  out.bound = std::exp(-k_hat * out.c_hat);
  return out;
}

}  // namespace goh
