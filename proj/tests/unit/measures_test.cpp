#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "fsel/error.hpp"
#include "fsel/measures.hpp"
#include "oracles.hpp"

using namespace fsel;

namespace {

constexpr double kTol = 1e-9;

const std::vector<std::size_t> kAB = {0, 1};

FeatureMask bits(const char* s) { return FeatureMask::fromString(s); }

ErrorCode codeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no fsel::Error thrown";
  return ErrorCode::Io;
}

Dataset withConstantFeature() {
  return fixtures::categoricalDataset({"A", "K", "C"}, {{0, 0, 1, 1}, {3, 3, 3, 3}}, {0, 0, 1, 1});
}

}  // namespace

TEST(ChiSquared, HandValues) {
  const auto s = chiSquared(fixtures::dPerf(), kAB);
  EXPECT_NEAR(s[0].score, 4.0, kTol);
  EXPECT_NEAR(s[1].score, 0.0, kTol);
  EXPECT_EQ(s[0].feature, "A");
  EXPECT_NEAR(chiSquared(withConstantFeature(), std::vector<std::size_t>{1})[0].score, 0.0, kTol);
}

TEST(CramerV, HandValues) {
  const auto s = cramerV(fixtures::dPerf(), kAB);
  EXPECT_NEAR(s[0].score, 1.0, kTol);
  EXPECT_NEAR(s[1].score, 0.0, kTol);
  EXPECT_NEAR(cramerV(withConstantFeature(), std::vector<std::size_t>{1})[0].score, 0.0, kTol);
}

TEST(FisherScore, HandValues) {
  const std::vector<std::size_t> x = {0};
  const auto sep = fixtures::numericDataset({"X", "C"}, {{1, 2, 5, 6}}, {0, 0, 1, 1});
  EXPECT_NEAR(fScore(sep, x)[0].score, 16.0, kTol);
  const auto same = fixtures::numericDataset({"X", "C"}, {{1, 2, 1, 2}}, {0, 0, 1, 1});
  EXPECT_NEAR(fScore(same, x)[0].score, 0.0, kTol);
  // Zero within-class spread: numerator 16 over the epsilon floor.
  const auto flat = fixtures::numericDataset({"X", "C"}, {{1, 1, 5, 5}}, {0, 0, 1, 1});
  EXPECT_NEAR(fScore(flat, x)[0].score / (16.0 / kFisherEpsilon), 1.0, kTol);
  EXPECT_THROW(fScore(fixtures::dPerf(), kAB), Error);
}

TEST(FisherScore, MatchesOracleOnRandomColumns) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(30);
    std::vector<int> c(30);
    for (std::size_t i = 0; i < 30; ++i) {
      c[i] = static_cast<int>(i % 3);
      x[i] = u(gen) + c[i];
    }
    const auto d = fixtures::numericDataset({"X", "C"}, {x}, c);
    EXPECT_NEAR(fScore(d, std::vector<std::size_t>{0})[0].score, oracle::fisher(x, c), 1e-9);
  }
}

TEST(Relief, HandValues) {
  const auto w = relief(fixtures::dPerf(), kAB);
  EXPECT_NEAR(w[0].score, 1.0, kTol);
  EXPECT_NEAR(w[1].score, -1.0, kTol);
  const auto k = relief(withConstantFeature(), kAB);
  EXPECT_NEAR(k[1].score, 0.0, kTol);
}

TEST(Relief, DuplicatedRowsMatchBruteForce) {
  // Doubling D_PERF makes each row's duplicate its nearest hit.
  const auto d = fixtures::categoricalDataset({"A", "B", "C"}, {{0, 0, 1, 1, 0, 0, 1, 1}, {0, 1, 0, 1, 0, 1, 0, 1}},
                                             {0, 0, 1, 1, 0, 0, 1, 1});
  const auto w = relief(d, kAB);
  const auto o = oracle::relief(d);
  EXPECT_NEAR(w[0].score, o[0], kTol);
  EXPECT_NEAR(w[1].score, o[1], kTol);
  EXPECT_NEAR(w[0].score, 1.0, kTol);
  EXPECT_NEAR(w[1].score, 0.0, kTol);
}

TEST(Relief, RangeAndNoHitOnRandomData) {
  std::mt19937_64 gen(99);
  int checked = 0;
  for (int rep = 0; rep < 40; ++rep) {
    fixtures::RandomSpec spec;
    spec.min_rows = 8;
    spec.numeric_share = 0.5;
    const auto d = fixtures::randomDataset(gen, spec);
    std::vector<std::size_t> all(d.featureCount());
    std::iota(all.begin(), all.end(), 0);
    try {
      oracle::relief(d);
    } catch (const std::logic_error&) {
      EXPECT_EQ(codeOf([&] { relief(d, all); }), ErrorCode::NoHit);
      continue;
    }
    for (const auto& s : relief(d, all)) {
      EXPECT_GE(s.score, -1.0);
      EXPECT_LE(s.score, 1.0);
    }
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(Relief, MatchesOracleWithUniqueDistances) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 12;
    std::vector<std::vector<double>> x(3, std::vector<double>(n));
    for (auto& col : x) {
      for (auto& v : col) v = u(gen);
    }
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<int>(i % 2);
    const auto d = fixtures::numericDataset({"X", "Y", "Z", "C"}, x, c);
    const auto w = relief(d, std::vector<std::size_t>{0, 1, 2});
    const auto o = oracle::relief(d);
    for (std::size_t f = 0; f < 3; ++f) EXPECT_NEAR(w[f].score, o[f], 1e-12);
  }
}

TEST(Relief, RowPermutationInvariance) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0, 1);
  const std::size_t n = 15;
  std::vector<std::vector<double>> x(2, std::vector<double>(n));
  for (auto& col : x) {
    for (auto& v : col) v = u(gen);
  }
  std::vector<int> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<int>(i % 3);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  std::vector<std::vector<double>> px(2, std::vector<double>(n));
  std::vector<int> pc(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[0][i] = x[0][perm[i]];
    px[1][i] = x[1][perm[i]];
    pc[i] = c[perm[i]];
  }
  const auto a = relief(fixtures::numericDataset({"X", "Y", "C"}, x, c), kAB);
  const auto b = relief(fixtures::numericDataset({"X", "Y", "C"}, px, pc), kAB);
  for (std::size_t f = 0; f < 2; ++f) EXPECT_NEAR(a[f].score, b[f].score, 1e-12);
}

TEST(Relief, Errors) {
  const auto single = fixtures::categoricalDataset({"A", "C"}, {{0, 1, 0}}, {0, 0, 1});
  EXPECT_EQ(codeOf([&] { relief(single, std::vector<std::size_t>{0}); }), ErrorCode::NoHit);
  const auto one_class = fixtures::categoricalDataset({"A", "C"}, {{0, 1, 0}}, {0, 0, 0});
  EXPECT_THROW(relief(one_class, std::vector<std::size_t>{0}), Error);
  ReliefConfig bad;
  bad.neighbors = 0;
  EXPECT_THROW(relief(fixtures::dPerf(), kAB, bad), Error);
}

TEST(Relief, SampledModeIsSeeded) {
  const auto d = fixtures::iris();
  ReliefConfig cfg;
  cfg.sample = 40;
  cfg.seed = 17;
  const std::vector<std::size_t> all = {0, 1, 2, 3};
  const auto a = relief(d, all, cfg);
  const auto b = relief(d, all, cfg);
  for (std::size_t f = 0; f < 4; ++f) EXPECT_EQ(a[f].score, b[f].score);
  cfg.neighbors = 3;
  for (const auto& s : relief(d, all, cfg)) {
    EXPECT_GE(s.score, -1.0);
    EXPECT_LE(s.score, 1.0);
  }
}

TEST(Consistency, HandValues) {
  const auto x = fixtures::dXor();
  const auto i = fixtures::dInc();
  EXPECT_NEAR(binaryConsistency(x, bits("11")), 1.0, kTol);
  EXPECT_NEAR(binaryConsistency(x, bits("10")), 0.0, kTol);
  const auto one_row = fixtures::categoricalDataset({"A", "C"}, {{4}}, {1});
  EXPECT_NEAR(binaryConsistency(one_row, bits("1")), 1.0, kTol);

  EXPECT_NEAR(ieConsistency(i, bits("1")), 0.75, kTol);
  EXPECT_NEAR(ieConsistency(x, bits("11")), 1.0, kTol);
  EXPECT_NEAR(ieConsistency(x, bits("10")), 0.5, kTol);

  EXPECT_NEAR(iepConsistency(i, bits("1")), 1.0 / 3.0, kTol);
  EXPECT_NEAR(iepConsistency(x, bits("11")), 1.0, kTol);
  const auto twins = fixtures::categoricalDataset({"A", "C"}, {{2, 2}}, {1, 1});
  EXPECT_NEAR(iepConsistency(twins, bits("1")), 1.0, kTol);

  EXPECT_NEAR(roughsetConsistency(i, bits("1")), 0.25, kTol);
  EXPECT_NEAR(roughsetConsistency(x, bits("11")), 1.0, kTol);
  EXPECT_NEAR(roughsetConsistency(x, bits("10")), 0.0, kTol);
}

TEST(Information, HandValues) {
  const auto x = fixtures::dXor();
  const auto p = fixtures::dPerf();
  EXPECT_NEAR(mutualInformation(x, bits("11")), 1.0, kTol);
  EXPECT_NEAR(mutualInformation(x, bits("10")), 0.0, kTol);
  const auto flat = fixtures::categoricalDataset({"A", "C"}, {{0, 1, 0}}, {1, 1, 1});
  EXPECT_NEAR(mutualInformation(flat, bits("1")), 0.0, kTol);

  EXPECT_NEAR(gainRatio(p, bits("10")), 1.0, kTol);
  EXPECT_NEAR(gainRatio(x, bits("11")), 0.5, kTol);
  EXPECT_NEAR(gainRatio(withConstantFeature(), bits("01")), 0.0, kTol);

  EXPECT_NEAR(symmetricalUncertainty(p, bits("10")), 1.0, kTol);
  EXPECT_NEAR(symmetricalUncertainty(x, bits("11")), 2.0 / 3.0, kTol);
  EXPECT_NEAR(symmetricalUncertainty(x, bits("10")), 0.0, kTol);
}

TEST(Gini, HandValues) {
  const auto p = fixtures::dPerf();
  EXPECT_NEAR(giniIndex(p, bits("10")), 1.0, kTol);
  EXPECT_NEAR(giniIndex(p, bits("01")), 0.5, kTol);
}

TEST(Gini, IrisOrdering) {
  const auto d = fixtures::iris();
  EXPECT_LT(giniIndex(d, bits("1000")), giniIndex(d, bits("0011")));
  EXPECT_LT(giniIndex(d, bits("1000")), giniIndex(d, bits("0010")));
  EXPECT_LT(giniIndex(d, bits("1000")), giniIndex(d, bits("0001")));
  // Sepal.Width is the weakest singleton, not Sepal.Length, under any bin count.
  for (int b : {3, 5, 10, 20}) {
    const auto q = discretize(d, {b});
    EXPECT_LT(giniIndex(q, bits("0100")), giniIndex(q, bits("1000"))) << b;
  }
}

TEST(Gini, RawLevelsReproducePublishedPopulation) {
  // Every observed value as its own level, i.e. no binning at all.
  const auto d = loadCsv(fixtures::dataPath("iris.csv"), "Species",
                         {{"Sepal.Length", ColumnType::Categorical},
                          {"Sepal.Width", ColumnType::Categorical},
                          {"Petal.Length", ColumnType::Categorical},
                          {"Petal.Width", ColumnType::Categorical}});
  EXPECT_NEAR(giniIndex(d, bits("1000")), 0.6805926, 5e-8);
  EXPECT_NEAR(giniIndex(d, bits("0110")), 0.9844444, 5e-8);
  EXPECT_NEAR(giniIndex(d, bits("0111")), 1.0, 1e-12);
  EXPECT_NEAR(giniIndex(d, bits("1110")), 1.0, 1e-12);
  EXPECT_NEAR(giniIndex(d, bits("1111")), 1.0, 1e-12);
}

TEST(DeterminationCoefficient, HandValues) {
  std::vector<double> x(20), y(20);
  for (std::size_t i = 0; i < 20; ++i) {
    x[i] = static_cast<double>(i) * 0.7 - 3.0;
    y[i] = 2.0 * x[i] + 1.0;
  }
  const auto exact = fixtures::regressionDataset({"X", "Y"}, {x}, y);
  EXPECT_NEAR(determinationCoefficient(exact, bits("1")), 1.0, kTol);
  const auto copy = fixtures::regressionDataset({"N", "Ycopy", "Y"}, {std::vector<double>(20, 0.0), y}, y);
  EXPECT_NEAR(determinationCoefficient(copy, bits("01")), 1.0, kTol);
}

TEST(DeterminationCoefficient, NoiseIsNearZeroAndMatchesNormalEquations) {
  std::mt19937_64 gen(1234);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> x(1000), y(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    x[i] = z(gen);
    y[i] = z(gen);
  }
  const auto d = fixtures::regressionDataset({"X", "Y"}, {x}, y);
  const double r2 = determinationCoefficient(d, bits("1"));
  EXPECT_LT(r2, 0.02);
  EXPECT_NEAR(r2, oracle::rSquared({x}, y), 1e-9);

  std::vector<double> x2(1000), y2(1000);
  for (std::size_t i = 0; i < 1000; ++i) {
    x2[i] = z(gen);
    y2[i] = 0.5 * x[i] - 0.3 * x2[i] + z(gen);
  }
  const auto d2 = fixtures::regressionDataset({"X", "X2", "Y"}, {x, x2}, y2);
  EXPECT_NEAR(determinationCoefficient(d2, bits("11")), oracle::rSquared({x, x2}, y2), 1e-9);
}

TEST(DeterminationCoefficient, RankDeficientDesign) {
  std::vector<double> x = {1, 2, 3, 4, 5}, y = {2, 4, 5, 4, 5};
  const auto d = fixtures::regressionDataset({"X", "Xdup", "Y"}, {x, x}, y);
  EXPECT_NEAR(determinationCoefficient(d, bits("11")), determinationCoefficient(d, bits("10")), 1e-9);
}

TEST(DeterminationCoefficient, Errors) {
  EXPECT_EQ(codeOf([] { determinationCoefficient(fixtures::dPerf(), bits("10")); }), ErrorCode::MeasureInapplicable);
  const auto flat = fixtures::regressionDataset({"X", "Y"}, {{1, 2, 3}}, {4, 4, 4});
  EXPECT_EQ(codeOf([&] { determinationCoefficient(flat, bits("1")); }), ErrorCode::DegenerateTarget);
}

TEST(SetMeasures, ErrorsForEmptyMaskAndRegression) {
  const auto reg = fixtures::regressionDataset({"X", "Y"}, {{1, 2, 3}}, {1, 2, 3});
  for (const auto& name : measureNames()) {
    const auto m = makeMeasure(name);
    if (m->kind() == MeasureKind::Set && name != "determinationCoefficient") {
      const auto scorer = m->bind(fixtures::dXor());
      EXPECT_EQ(codeOf([&] { scorer(FeatureMask(2)); }), ErrorCode::EmptyMask) << name;
      EXPECT_EQ(codeOf([&] { scorer(FeatureMask::full(3)); }), ErrorCode::WidthMismatch) << name;
      EXPECT_EQ(codeOf([&] { m->evaluate(reg, bits("1")); }), ErrorCode::MeasureInapplicable) << name;
    }
  }
  EXPECT_EQ(codeOf([&] { chiSquared(reg, std::vector<std::size_t>{0}); }), ErrorCode::MeasureInapplicable);
}

TEST(SetMeasures, MatchOraclesOnRandomData) {
  std::mt19937_64 gen(2024);
  using Fn = double (*)(const Dataset&, const FeatureMask&);
  struct Pair {
    const char* name;
    Fn oracle;
  };
  const Pair pairs[] = {
      {"binaryConsistency", oracle::binaryConsistency},
      {"IEConsistency", oracle::ieConsistency},
      {"IEPConsistency", oracle::iepConsistency},
      {"roughsetConsistency", oracle::roughsetConsistency},
      {"mutualInformation", oracle::mutualInformation},
      {"gainRatio", oracle::gainRatio},
      {"symmetricalUncertain", oracle::symmetricalUncertainty},
      {"giniIndex", oracle::giniIndex},
  };
  for (int rep = 0; rep < 60; ++rep) {
    fixtures::RandomSpec spec;
    spec.max_features = 5;
    spec.numeric_share = 0.3;
    const auto d = fixtures::randomDataset(gen, spec);
    const auto q = discretize(d);
    for (const auto& p : pairs) {
      const auto scorer = makeMeasure(p.name)->bind(d);
      oracle::bruteForce(d.featureCount(), [&](const FeatureMask& m) {
        const double v = scorer(m);
        EXPECT_NEAR(v, p.oracle(q, m), 1e-12) << p.name << " " << m.toString();
        EXPECT_GE(v, -1e-15);
        // Mutual information is in bits and can exceed 1 with three classes.
        if (std::string(p.name) != "mutualInformation") { EXPECT_LE(v, 1.0 + 1e-12) << p.name; }
        return v;
      }, true);
    }
  }
}

TEST(IndividualMeasures, ChiSquaredMatchesOracle) {
  std::mt19937_64 gen(77);
  for (int rep = 0; rep < 40; ++rep) {
    const auto d = fixtures::randomDataset(gen);
    for (std::size_t f = 0; f < d.featureCount(); ++f) {
      EXPECT_NEAR(chiSquared(d, std::vector<std::size_t>{f})[0].score, oracle::chiSquared(d, f), 1e-9);
      const double v = cramerV(d, std::vector<std::size_t>{f})[0].score;
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(Registry, DescriptorsAndKinds) {
  const auto names = measureNames();
  EXPECT_EQ(names.size(), 13u);
  std::set<std::string> unique(names.begin(), names.end());
  EXPECT_EQ(unique.size(), names.size());
  for (const auto& n : names) {
    const auto m = makeMeasure(n);
    EXPECT_EQ(m->name(), n);
    EXPECT_TRUE(m->maximize());
    EXPECT_TRUE(isMeasureName(n));
  }
  for (const char* individual : {"chiSquared", "cramer", "fscore", "relief"}) {
    const auto m = makeMeasure(individual);
    EXPECT_EQ(m->kind(), MeasureKind::Individual);
    EXPECT_EQ(codeOf([&] { m->bind(fixtures::dPerf()); }), ErrorCode::KindMismatch);
    EXPECT_EQ(codeOf([&] { requireSetMeasure(*m, "test"); }), ErrorCode::KindMismatch);
  }
  EXPECT_EQ(makeMeasure("cramerV")->name(), "cramer");
  EXPECT_EQ(makeMeasure("symmetricalUncertainty")->name(), "symmetricalUncertain");
  EXPECT_EQ(codeOf([] { makeMeasure("jd"); }), ErrorCode::Config);
}

TEST(Registry, SetMeasuresScoreSingletons) {
  const auto gini = makeMeasure("giniIndex");
  const auto s = gini->scoreAll(fixtures::dPerf());
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0].score, 1.0, kTol);
  EXPECT_NEAR(s[1].score, 0.5, kTol);
}

TEST(Registry, BinsParameterReachesDiscretization) {
  const auto d = fixtures::numericDataset({"X", "C"}, {{0, 1, 2, 3}}, {0, 0, 1, 1});
  MeasureParams coarse;
  coarse.discretization.bins = 2;
  EXPECT_NEAR(makeMeasure("giniIndex", coarse)->evaluate(d, bits("1")), 1.0, kTol);
  const auto mixed = fixtures::numericDataset({"X", "C"}, {{0, 1, 2, 3}}, {0, 1, 1, 0});
  EXPECT_NEAR(makeMeasure("giniIndex", coarse)->evaluate(mixed, bits("1")), 0.5, kTol);
  EXPECT_NEAR(makeMeasure("giniIndex")->evaluate(mixed, bits("1")), 1.0, kTol);
}

TEST(Measures, RepeatEvaluationIsBitIdentical) {
  const auto d = fixtures::iris();
  for (const auto& n : measureNames()) {
    const auto m = makeMeasure(n);
    if (m->kind() != MeasureKind::Set || n == "determinationCoefficient") continue;
    const auto scorer = m->bind(d);
    EXPECT_EQ(scorer(bits("1011")), scorer(bits("1011"))) << n;
  }
}
