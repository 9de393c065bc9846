#include <benchmark/benchmark.h>

#include "demos.hpp"
#include "goh/abnormal.hpp"
#include "goh/dynamics.hpp"
#include "goh/normal_form.hpp"
#include "goh/parser.hpp"
#include "goh/pfaffian.hpp"
#include "goh/random.hpp"
#include "goh/stratify.hpp"

namespace {

using namespace goh;

SkewMatrix<Rational> random_skew(std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  SkewMatrix<Rational> a(m, Rational(0));
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) a.set(i, j, rng.rational(3, 4));
  return a;
}

void BM_PolynomialPower(benchmark::State& state) {
  const Polynomial f = parse_expression("x1 + 2*x2 - x3*p1 + 1/3", Ambient::phase(3));
  for (auto _ : state) benchmark::DoNotOptimize(f.pow(static_cast<std::uint32_t>(state.range(0))));
}
BENCHMARK(BM_PolynomialPower)->Arg(4)->Arg(8)->Arg(12);

void BM_PfaffianTable(benchmark::State& state) {
  const auto a = random_skew(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    PfaffianTable<Rational> table(a);
    benchmark::DoNotOptimize(table(IndexSet::full(a.size())));
  }
}
BENCHMARK(BM_PfaffianTable)->DenseRange(4, 16, 4);

void BM_PfaffianDefinition(benchmark::State& state) {
  const auto a = random_skew(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(pfaffian_by_definition(a, IndexSet::full(a.size())));
}
BENCHMARK(BM_PfaffianDefinition)->DenseRange(4, 10, 2);

void BM_GeneratorsAndCertificates(benchmark::State& state) {
  const Frame frame = cli::demo_frame("dim6-cubic").build();
  for (auto _ : state) {
    const GohMatrix goh = goh_matrix(frame);
    for (std::size_t r = 0; r < frame.rank(); r += 2)
      for (const auto& g : abnormal_generators(frame, goh, r))
        benchmark::DoNotOptimize(compute_divergence_certificate(g, frame, goh));
  }
}
BENCHMARK(BM_GeneratorsAndCertificates)->Unit(benchmark::kMillisecond);

void BM_Stratify(benchmark::State& state) {
  const Frame frame = cli::demo_frame("dim6-cubic").build();
  const GohMatrix goh = goh_matrix(frame);
  StratifyConfig config;
  config.seed = 7;
  config.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stratify(frame, goh, config));
}
BENCHMARK(BM_Stratify)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_NormalForm(benchmark::State& state) {
  const Frame frame = cli::demo_frame("dim5").build();
  for (auto _ : state)
    benchmark::DoNotOptimize(normalize_frame(JetFrame::from_frame(frame, static_cast<std::uint32_t>(state.range(0)))));
}
BENCHMARK(BM_NormalForm)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AbnormalTrajectory(benchmark::State& state) {
  const Frame frame = cli::demo_frame("dim4").build();
  const GohMatrix goh = goh_matrix(frame);
  const auto g = abnormal_generators(frame, goh, 2).front();
  for (auto _ : state) benchmark::DoNotOptimize(abnormal_trajectory(frame, goh, g, {0.1, 0.2, -0.1, 0.0}, 1.0, 1e-3));
}
BENCHMARK(BM_AbnormalTrajectory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
