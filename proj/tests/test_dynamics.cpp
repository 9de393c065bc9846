#include <doctest.h>

#include <cmath>

#include "goh/dynamics.hpp"
#include "support.hpp"

using namespace goh;
using goh::testing::fixture;
using goh::testing::parse;

namespace {

VectorField field(const std::vector<std::string>& comps) {
  std::vector<Polynomial> c;
  for (const auto& s : comps) c.push_back(parse(s, Ambient::base(comps.size())));
  return VectorField(std::move(c), FieldKind::base);
}

}  // namespace

TEST_CASE("rk4 on simple fields") {
  const Trajectory unit = integrate_field(VectorField::coordinate(3, 1), {0, 0, 0}, 1.0, 1e-2);
  CHECK(unit.states.back()[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(unit.states.back()[1] == 0.0);

  const Trajectory engel = integrate_field(field({"1", "0", "1", "x2"}), {0, 0, 0, 0}, 1.0, 1e-3);
  CHECK(std::abs(engel.states.back()[0] - 1.0) < 1e-12);
  CHECK(std::abs(engel.states.back()[2] - 1.0) < 1e-12);
  CHECK(engel.states.back()[1] == 0.0);
  CHECK(engel.states.back()[3] == 0.0);

  const Trajectory still = integrate_field(VectorField::zero(2, FieldKind::base), {0.25, -3}, 1.0, 0.1);
  for (const auto& s : still.states) CHECK(s == std::vector<double>{0.25, -3});

  const Trajectory ragged = integrate_field(VectorField::coordinate(1, 1), {0}, 0.25, 0.1);
  REQUIRE(ragged.times.size() == 4);
  CHECK(ragged.times.back() == 0.25);
  CHECK(ragged.states.back()[0] == doctest::Approx(0.25));

  CHECK_THROWS_AS(integrate_field(VectorField::coordinate(1, 1), {0}, 1.0, 0.0), RangeError);
  CHECK_THROWS_AS(integrate_field(VectorField::coordinate(2, 1), {0}, 1.0, 0.1), DimensionError);
}

TEST_CASE("rk4 converges at fourth order") {
  // x' = -x, x(1) = e^-1. Global error <= C h^4 with C pinned at 1/100.
  const VectorField decay = field({"-x1"});
  double previous = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const double err = std::abs(integrate_field(decay, {1.0}, 1.0, h).states.back()[0] - std::exp(-1.0));
    CHECK(err <= 1e-2 * std::pow(h, 4));
    if (previous > 0) CHECK(previous / err == doctest::Approx(16.0).epsilon(0.1));
    previous = err;
  }
}

TEST_CASE("blow-up is reported with the last valid time") {
  try {
    integrate_field(field({"x1^2"}), {1.0}, 2.0, 1e-2);
    FAIL("expected blow-up");
  } catch (const BlowUpError& e) {
    CHECK(e.last_valid_time() > 0.9);
    CHECK(e.last_valid_time() < 1.1);
  }
}

TEST_CASE("abnormal trajectories are certified") {
  const Frame engel = fixture("dim4-engel");
  const GohMatrix goh = goh_matrix(engel);
  const auto gens = abnormal_generators(engel, goh, 2);
  const Trajectory t = abnormal_trajectory(engel, goh, gens.front(), {0, 0, 0, 0}, 1.0, 1e-3);
  CHECK(t.certified);
  CHECK(t.failure.empty());
  for (double r : t.goh_residual) CHECK(r <= 1e-12);
  for (double r : t.annihilation_residual) CHECK(r <= 1e-12);
  REQUIRE(t.covectors.size() == t.states.size());
  CHECK(t.covectors.front() == std::vector<double>{0, 0, 0, 1});

  // A point of the singular set of the four-dimensional example, where Z = 0.
  const Frame dim4 = fixture("dim4");
  const GohMatrix goh4 = goh_matrix(dim4);
  const auto g4 = abnormal_generators(dim4, goh4, 2).front();
  const std::vector<double> sigma{1.0, 0.5, 1.0, 0.0};
  const Trajectory still = abnormal_trajectory(dim4, goh4, g4, sigma, 1.0, 1e-2);
  CHECK(still.certified);
  for (const auto& s : still.states) CHECK(s == sigma);

  const Frame dim5 = fixture("dim5");
  const GohMatrix goh5 = goh_matrix(dim5);
  for (const auto& g : abnormal_generators(dim5, goh5, 2)) {
    if (!(g.set == IndexSet({2, 3, 4}))) continue;
    const Trajectory t5 = abnormal_trajectory(dim5, goh5, g, {0.1, -0.2, 0.3, 0.0, 0.2}, 0.5, 1e-3);
    CHECK(t5.certified);
  }

  const Frame general({VectorField::coordinate(3, 1), field({"1", "1", "x1"})});
  const GohMatrix ggoh = goh_matrix(general);
  CHECK_THROWS_AS(abnormal_trajectory(general, ggoh, abnormal_generators(general, ggoh, 0).front(), {0, 0, 0}, 1, 0.1),
                  StructuralError);
}

TEST_CASE("trajectory csv") {
  const Frame engel = fixture("dim4-engel");
  const GohMatrix goh = goh_matrix(engel);
  const Trajectory t = abnormal_trajectory(engel, goh, abnormal_generators(engel, goh, 2).front(), {0, 0, 0, 0}, 0.5, 0.25);
  const std::string csv = trajectory_csv(t, 9);
  CHECK(csv.rfind("# seed=9, h=0.25, T=0.5\nt,x1,x2,x3,x4,residual_b,residual_c\n", 0) == 0);
  CHECK(csv.find("\n0.5,0.5,0,0.5,0,0,0\n") != std::string::npos);
}

TEST_CASE("divergence ratio scan") {
  const auto free = divergence_ratio_scan(field({"1", "0", "1", "x2"}), -1, 1, 500, 3, 1e-3);
  CHECK(free.ratio_sup == 0.0);
  CHECK(free.counted == 500);

  const auto radial = divergence_ratio_scan(field({"x1"}), -1, 1, 2000, 3, 0.1);
  CHECK(radial.ratio_sup <= 10.0);
  CHECK(radial.ratio_sup > 9.0);
  CHECK(radial.excluded > 0);
  CHECK(radial.offender_count > 0);
  CHECK(radial.offenders.size() <= 8);

  // div Z = sum_j c_j Z(x_j), so the ratio at any point is at most sum_j |c_j|.
  const Frame dim4 = fixture("dim4");
  const GohMatrix goh = goh_matrix(dim4);
  const auto g = abnormal_generators(dim4, goh, 2).front();
  const auto cert = divergence_certificate(g, dim4, goh);
  const auto scan = divergence_ratio_scan(*g.z, -1, 1, 4000, 5, 1e-3);
  REQUIRE(scan.argmax.size() == 4);
  double bound = 0.0;
  for (const auto& c : cert.base->coefficients) bound += std::abs(c.evaluate(std::span<const double>(scan.argmax)));
  CHECK(scan.ratio_sup <= bound * (1 + 1e-12));
  CHECK(std::isfinite(scan.ratio_sup));

  const auto repeat = divergence_ratio_scan(*g.z, -1, 1, 4000, 5, 1e-3);
  CHECK(repeat.ratio_sup == scan.ratio_sup);
  CHECK(repeat.argmax == scan.argmax);
}

TEST_CASE("volume distortion") {
  const auto cloud = sample_cloud(4, -0.5, 0.5, 20, 1);
  CHECK(cloud == sample_cloud(4, -0.5, 0.5, 20, 1));
  const auto free = volume_distortion(field({"1", "0", "1", "x2"}), cloud, 1.0, 1e-3, 0.0);
  for (double w : free.min_weight) CHECK(std::abs(w - 1.0) <= 1e-6);
  for (double w : free.max_weight) CHECK(std::abs(w - 1.0) <= 1e-6);

  const auto shrink = volume_distortion(field({"-x1"}), sample_cloud(1, -1, 1, 10, 2), 1.0, 1e-3, 1.0);
  CHECK(std::abs(shrink.min_weight.back() - std::exp(-1.0)) <= 1e-6);
  CHECK(std::abs(shrink.max_weight.back() - std::exp(-1.0)) <= 1e-6);
  CHECK(shrink.times.back() == 1.0);
}
