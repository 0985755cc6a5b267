#include <benchmark/benchmark.h>

#include <string>

#include "fsel/measures.hpp"
#include "fsel/search.hpp"
#include "fsel/wrapper.hpp"

namespace {

const fsel::Dataset& wine() {
  static const fsel::Dataset d =
      fsel::loadCsv(std::string(FSEL_BENCH_DATA_DIR) + "/wine.csv", "V14", {{"V14", fsel::ColumnType::Categorical}});
  return d;
}

const fsel::Dataset& iris() {
  static const fsel::Dataset d = fsel::loadCsv(std::string(FSEL_BENCH_DATA_DIR) + "/iris.csv", "Species");
  return d;
}

void setMeasureFullMask(benchmark::State& state, const char* name) {
  const auto& d = wine();
  const auto scorer = fsel::makeMeasure(name)->bind(d);
  const auto mask = fsel::FeatureMask::full(d.featureCount());
  for (auto _ : state) benchmark::DoNotOptimize(scorer(mask));
}
BENCHMARK_CAPTURE(setMeasureFullMask, gini, "giniIndex");
BENCHMARK_CAPTURE(setMeasureFullMask, mutual_information, "mutualInformation");
BENCHMARK_CAPTURE(setMeasureFullMask, iep, "IEPConsistency");
BENCHMARK_CAPTURE(setMeasureFullMask, roughset, "roughsetConsistency");

void reliefAllFeatures(benchmark::State& state) {
  const auto& d = wine();
  const auto m = fsel::makeMeasure("relief");
  for (auto _ : state) benchmark::DoNotOptimize(m->scoreAll(d));
}
BENCHMARK(reliefAllFeatures);

std::shared_ptr<const fsel::WrapperEvaluator> knn(fsel::TaskKind task, int k_max) {
  fsel::ResamplingSpec rs;
  rs.seed = 1;
  fsel::FitSpec fit;
  fit.center = true;
  fit.scale = true;
  fit.grid = fsel::knnGrid(1, k_max);
  return fsel::makeWrapperEvaluator({fsel::LearnerAlgorithm::Knn, task}, rs, fit);
}

// One 10-fold CV over the knn grid k = 1..range(0).
void knnWrapperWine(benchmark::State& state) {
  const auto& d = wine();
  const auto scorer = knn(d.task(), static_cast<int>(state.range(0)))->bind(d);
  const auto mask = fsel::FeatureMask::full(d.featureCount());
  for (auto _ : state) benchmark::DoNotOptimize(scorer(mask));
}
BENCHMARK(knnWrapperWine)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void exhaustiveGiniWine(benchmark::State& state) {
  const auto& d = wine();
  const auto m = fsel::makeMeasure("giniIndex");
  fsel::SearchOptions opts;
  opts.threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fsel::exhaustiveBFS(d, *m, {}, opts).best_value);
}
BENCHMARK(exhaustiveGiniWine)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void sffsGiniWine(benchmark::State& state) {
  const auto& d = wine();
  const auto m = fsel::makeMeasure("giniIndex");
  for (auto _ : state) benchmark::DoNotOptimize(fsel::sffs(d, *m).best_value);
}
BENCHMARK(sffsGiniWine)->Unit(benchmark::kMillisecond);

void tabuKnnWine(benchmark::State& state) {
  const auto& d = wine();
  const auto m = knn(d.task(), 20);
  fsel::TabuConfig cfg;
  cfg.iter = 10;
  cfg.tabu_size = 4;
  cfg.intensification_phases = 1;
  cfg.iter_per_intensification = 5;
  cfg.diversification_phases = 1;
  cfg.iter_per_diversification = 5;
  for (auto _ : state) benchmark::DoNotOptimize(fsel::tabuSearch(d, *m, cfg).best_value);
}
BENCHMARK(tabuKnnWine)->Unit(benchmark::kMillisecond)->Iterations(1);

void geneticGiniIris(benchmark::State& state) {
  const auto& d = iris();
  const auto m = fsel::makeMeasure("giniIndex");
  fsel::GAConfig cfg;
  cfg.pop_size = 10;
  cfg.max_iter = 5;
  for (auto _ : state) benchmark::DoNotOptimize(fsel::geneticAlgorithm(d, *m, cfg).best_value);
}
BENCHMARK(geneticGiniIris)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
