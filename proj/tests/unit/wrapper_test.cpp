#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "fixtures.hpp"
#include "fsel/error.hpp"
#include "fsel/wrapper.hpp"
#include "oracles.hpp"

using namespace fsel;

namespace {

FeatureMatrix matrix(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows[0].size();
  m.categorical.assign(m.cols, false);
  for (const auto& r : rows) m.values.insert(m.values.end(), r.begin(), r.end());
  return m;
}

FitSpec accuracyGrid(int k_max, bool standardize = true) {
  FitSpec f;
  f.center = standardize;
  f.scale = standardize;
  f.metric = Metric::Accuracy;
  f.grid = knnGrid(1, k_max);
  return f;
}

ResamplingSpec cv(int folds, std::uint64_t seed = 1) {
  ResamplingSpec r;
  r.folds = folds;
  r.seed = seed;
  return r;
}

}  // namespace

TEST(Knn, IdenticalPointTakesItsLabel) {
  const auto train = matrix({{0, 0}, {5, 5}, {9, 1}});
  const std::vector<double> y = {0, 1, 2};
  const auto p = knnFitPredict(train, y, matrix({{5, 5}, {9, 1}}), 1, TaskKind::Classification);
  EXPECT_EQ(p, (std::vector<double>{1, 2}));
}

TEST(Knn, MajorityAmongEquidistant) {
  const auto train = matrix({{1, 0}, {-1, 0}, {0, 1}});
  const std::vector<double> y = {0, 0, 1};
  EXPECT_EQ(knnFitPredict(train, y, matrix({{0, 0}}), 3, TaskKind::Classification)[0], 0.0);
}

TEST(Knn, TieBreaks) {
  // Distance tie: the lower training row wins the single slot.
  const auto train = matrix({{1}, {-1}});
  EXPECT_EQ(knnFitPredict(train, std::vector<double>{1, 0}, matrix({{0}}), 1, TaskKind::Classification)[0], 1.0);
  // Vote tie: the lower class code wins.
  EXPECT_EQ(knnFitPredict(train, std::vector<double>{1, 0}, matrix({{0}}), 2, TaskKind::Classification)[0], 0.0);
}

TEST(Knn, RegressionMean) {
  const auto train = matrix({{0}, {1}, {10}});
  const std::vector<double> y = {2, 4, 100};
  EXPECT_DOUBLE_EQ(knnFitPredict(train, y, matrix({{0.4}}), 2, TaskKind::Regression)[0], 3.0);
}

TEST(Knn, CategoricalMismatchDistance) {
  auto train = matrix({{0, 0.0}, {1, 0.9}});
  train.categorical = {true, false};
  auto test = matrix({{1, 0.0}});
  test.categorical = {true, false};
  // Row 0: mismatch 1 + 0; row 1: match 0 + 0.81.
  EXPECT_EQ(knnFitPredict(train, std::vector<double>{0, 1}, test, 1, TaskKind::Classification)[0], 1.0);
}

TEST(Knn, Errors) {
  EXPECT_THROW(knnFitPredict(FeatureMatrix{}, std::vector<double>{}, matrix({{0}}), 1, TaskKind::Classification), Error);
  EXPECT_THROW(knnFitPredict(matrix({{0}}), std::vector<double>{0}, matrix({{0}}), 2, TaskKind::Classification), Error);
}

TEST(Folds, PartitionIsBalancedAndStratified) {
  const auto d = fixtures::iris();
  const auto folds = assignFolds(d, cv(10, 3));
  std::map<int, std::map<int, int>> per_fold;
  const auto& codes = d.classColumn().asCategorical().codes;
  for (std::size_t r = 0; r < folds.size(); ++r) {
    ASSERT_GE(folds[r], 0);
    ASSERT_LT(folds[r], 10);
    ++per_fold[folds[r]][codes[r]];
  }
  for (const auto& [f, counts] : per_fold) {
    for (const auto& [c, n] : counts) EXPECT_EQ(n, 5) << "fold " << f << " class " << c;
  }
  EXPECT_EQ(assignFolds(d, cv(10, 3)), folds);
  EXPECT_NE(assignFolds(d, cv(10, 4)), folds);
}

TEST(Folds, RemainderGoesToLowestFolds) {
  const auto d = fixtures::categoricalDataset({"A", "C"}, {{0, 1, 0, 1, 0, 1, 0}}, {0, 0, 0, 0, 0, 0, 0});
  auto spec = cv(3);
  spec.stratified = false;
  std::vector<int> sizes(3, 0);
  for (int f : assignFolds(d, spec)) ++sizes[static_cast<std::size_t>(f)];
  EXPECT_EQ(sizes, (std::vector<int>{3, 2, 2}));
}

TEST(Folds, Errors) {
  const auto d = fixtures::dXor();
  EXPECT_THROW(assignFolds(d, cv(5)), Error);
  EXPECT_THROW(assignFolds(d, cv(1)), Error);
}

TEST(CrossValidate, PerfectPredictionsScoreOne) {
  const auto d = fixtures::numericDataset({"X", "C"}, {{0, 0.1, 0.2, 10, 10.1, 10.2}}, {0, 0, 0, 1, 1, 1});
  const LearnerSpec knn{LearnerAlgorithm::Knn, TaskKind::Classification};
  EXPECT_DOUBLE_EQ(crossValidate(d, FeatureMask::full(1), knn, {{"k", 1}}, cv(3), accuracyGrid(1)), 1.0);
}

TEST(CrossValidate, RmseZeroWhenPredictionsMatch) {
  const auto d = fixtures::regressionDataset({"X", "Y"}, {{1, 2, 3, 4}}, {7, 7, 7, 7});
  const LearnerSpec zero{LearnerAlgorithm::ZeroBaseline, TaskKind::Regression};
  FitSpec fit;
  fit.metric = Metric::Rmse;
  EXPECT_DOUBLE_EQ(crossValidate(d, FeatureMask::full(1), zero, {}, cv(2), fit), 0.0);
}

TEST(CrossValidate, ZeroBaselineMajorityRate) {
  std::vector<int> klass(100);
  std::vector<double> x(100);
  for (int i = 0; i < 100; ++i) {
    klass[static_cast<std::size_t>(i)] = i < 60 ? 0 : 1;
    x[static_cast<std::size_t>(i)] = i;
  }
  const auto d = fixtures::numericDataset({"X", "C"}, {x}, klass);
  const LearnerSpec zero{LearnerAlgorithm::ZeroBaseline, TaskKind::Classification};
  EXPECT_NEAR(crossValidate(d, FeatureMask::full(1), zero, {}, cv(10), accuracyGrid(1)), 0.6, 1e-12);
}

TEST(CrossValidate, LeaveOneOutWithDuplicates) {
  const auto d = fixtures::numericDataset({"X", "Y", "C"}, {{1, 1, 5, 5, 9, 9}, {0, 0, 3, 3, 1, 1}}, {0, 0, 1, 1, 2, 2});
  const LearnerSpec knn{LearnerAlgorithm::Knn, TaskKind::Classification};
  EXPECT_DOUBLE_EQ(crossValidate(d, FeatureMask::full(2), knn, {{"k", 1}}, cv(6), accuracyGrid(1)), 1.0);
}

TEST(CrossValidate, Deterministic) {
  const auto d = fixtures::numericDataset({"X", "C"}, {{0.3, 1.7, 0.2, 2.5}}, {0, 1, 0, 1});
  const LearnerSpec knn{LearnerAlgorithm::Knn, TaskKind::Classification};
  auto spec = cv(2, 9);
  const double a = crossValidate(d, FeatureMask::full(1), knn, {{"k", 1}}, spec, accuracyGrid(1));
  const double b = crossValidate(d, FeatureMask::full(1), knn, {{"k", 1}}, spec, accuracyGrid(1));
  EXPECT_EQ(a, b);
}

TEST(Wrapper, GridDominanceAndRange) {
  const auto d = fixtures::iris();
  const auto w = makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(10, 5), accuracyGrid(20));
  EXPECT_EQ(w->kind(), MeasureKind::Set);
  EXPECT_TRUE(w->maximize());
  const auto mask = FeatureMask::fromString("1010");
  const auto grid = w->gridScores(d, mask);
  ASSERT_EQ(grid.size(), 20u);
  const double best = w->bind(d)(mask);
  EXPECT_EQ(best, *std::max_element(grid.begin(), grid.end()));
  for (double g : grid) {
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0);
    EXPECT_LE(g, best);
  }
  const LearnerSpec knn{LearnerAlgorithm::Knn, TaskKind::Classification};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(grid[i], crossValidate(d, mask, knn, {{"k", static_cast<double>(i + 1)}}, cv(10, 5), accuracyGrid(20)));
  }
}

TEST(Wrapper, RmseMinimizes) {
  std::vector<double> x(30), y(30);
  for (std::size_t i = 0; i < 30; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = 3.0 * x[i];
  }
  const auto d = fixtures::regressionDataset({"X", "Y"}, {x}, y);
  FitSpec fit;
  fit.metric = Metric::Rmse;
  fit.grid = knnGrid(1, 5);
  auto spec = cv(5);
  const auto w = makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Regression}, spec, fit);
  EXPECT_FALSE(w->maximize());
  const auto grid = w->gridScores(d, FeatureMask::full(1));
  EXPECT_EQ(w->bind(d)(FeatureMask::full(1)), *std::min_element(grid.begin(), grid.end()));
  for (double g : grid) EXPECT_GE(g, 0.0);
}

TEST(Wrapper, ConcurrentEvaluationIsDeterministic) {
  const auto d = fixtures::iris();
  const auto w = makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(10, 2), accuracyGrid(20));
  const auto scorer = w->bind(d);
  std::vector<FeatureMask> masks;
  for (unsigned b = 1; b < 16; ++b) {
    FeatureMask m(4);
    for (std::size_t f = 0; f < 4; ++f) {
      if ((b >> f) & 1u) m.set(f);
    }
    masks.push_back(m);
  }
  std::vector<double> serial;
  for (const auto& m : masks) serial.push_back(scorer(m));
  std::vector<double> parallel(masks.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < masks.size(); ++i) pool.emplace_back([&, i] { parallel[i] = scorer(masks[i]); });
  }
  EXPECT_EQ(serial, parallel);
}

TEST(Wrapper, ClampsOversizedK) {
  const auto d = fixtures::numericDataset({"X", "C"}, {{0, 1, 2, 3, 4, 5}}, {0, 0, 0, 1, 1, 1});
  const auto w = makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(2), accuracyGrid(10));
  const double v = w->bind(d)(FeatureMask::full(1));
  EXPECT_GE(v, 0.0);
  EXPECT_GT(w->clampedFits(), 0u);
}

TEST(Wrapper, SpecErrors) {
  FitSpec rmse;
  rmse.metric = Metric::Rmse;
  rmse.grid = knnGrid(1, 3);
  EXPECT_THROW(makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(10), rmse), Error);
  FitSpec empty = accuracyGrid(1);
  empty.grid.clear();
  EXPECT_THROW(makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(10), empty), Error);
  FitSpec fractional = accuracyGrid(1);
  fractional.grid = {{{"k", 1.5}}};
  EXPECT_THROW(makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(10), fractional), Error);
  const auto w = makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, cv(10), accuracyGrid(3));
  EXPECT_THROW(w->bind(fixtures::dXor()), Error);  // 10 folds on 4 rows
  const auto reg = fixtures::regressionDataset({"X", "Y"}, {{1, 2, 3}}, {1, 2, 3});
  EXPECT_THROW(w->bind(reg), Error);
  EXPECT_THROW(w->bind(fixtures::iris())(FeatureMask(4)), Error);
}

TEST(Wrapper, NoLeakageFromValidationRows) {
  const auto base = fixtures::iris();
  const auto spec = cv(5, 11);
  FitSpec fit = accuracyGrid(3);
  const auto mask = FeatureMask::full(4);
  const auto folds = assignFolds(base, spec);
  const auto before = foldPreprocessors(base, mask, spec, fit);

  // Corrupt every row of fold 2; only fold 2's statistics may stay unchanged
  // (its training split excludes those rows), every other fold's change.
  std::vector<Column> cols;
  for (std::size_t f = 0; f < base.featureCount(); ++f) {
    auto v = base.feature(f).asNumeric().values;
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (folds[r] == 2) v[r] = v[r] * 37.0 + 1000.0;
    }
    cols.push_back(Column::numeric(base.feature(f).name(), v));
  }
  const auto mutated = base.withFeatures(std::move(cols));
  ASSERT_EQ(assignFolds(mutated, spec), folds);
  const auto after = foldPreprocessors(mutated, mask, spec, fit);
  EXPECT_EQ(after[2].center, before[2].center);
  EXPECT_EQ(after[2].scale, before[2].scale);
  for (int f : {0, 1, 3, 4}) EXPECT_NE(after[static_cast<std::size_t>(f)].center, before[static_cast<std::size_t>(f)].center);
}

TEST(Wrapper, IrisMatchesIndependentKnn) {
  const auto d = fixtures::iris();
  const auto spec = cv(10, 123);
  const auto folds = assignFolds(d, spec);
  const auto& codes = d.classColumn().asCategorical().codes;

  double best = 0.0;
  for (int k = 1; k <= 20; ++k) {
    double sum = 0.0;
    for (int f = 0; f < 10; ++f) {
      std::vector<std::vector<double>> train, test;
      std::vector<int> train_y, test_y;
      for (std::size_t r = 0; r < d.rowCount(); ++r) {
        std::vector<double> row;
        for (std::size_t c = 0; c < 4; ++c) row.push_back(d.feature(c).asNumeric().values[r]);
        (folds[r] == f ? test : train).push_back(row);
        (folds[r] == f ? test_y : train_y).push_back(codes[r]);
      }
      for (std::size_t c = 0; c < 4; ++c) {
        double mean = 0.0, ss = 0.0;
        for (const auto& row : train) mean += row[c];
        mean /= static_cast<double>(train.size());
        for (const auto& row : train) ss += (row[c] - mean) * (row[c] - mean);
        const double sd = std::sqrt(ss / static_cast<double>(train.size()));
        for (auto& row : train) row[c] = (row[c] - mean) / sd;
        for (auto& row : test) row[c] = (row[c] - mean) / sd;
      }
      int hits = 0;
      for (std::size_t i = 0; i < test.size(); ++i) hits += oracle::knnVote(train, train_y, test[i], k) == test_y[i];
      sum += static_cast<double>(hits) / static_cast<double>(test.size());
    }
    best = std::max(best, sum / 10.0);
  }
  const auto w = makeWrapperEvaluator({LearnerAlgorithm::Knn, TaskKind::Classification}, spec, accuracyGrid(20));
  const double ours = w->bind(d)(FeatureMask::full(4));
  EXPECT_NEAR(ours, best, 1e-9);
  EXPECT_GE(ours, 0.93);
}
