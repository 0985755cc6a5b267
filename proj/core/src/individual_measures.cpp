#include <algorithm>
#include <cmath>
#include <numeric>

#include "categorical_table.hpp"
#include "fsel/error.hpp"
#include "fsel/measures.hpp"
#include "fsel/random.hpp"

namespace fsel {

namespace {

void requireClassification(const Dataset& d, std::string_view measure) {
  if (d.task() != TaskKind::Classification) {
    throw Error(ErrorCode::MeasureInapplicable,
                std::string(measure) + " requires a classification task");
  }
}

void requireFeatureIndices(const Dataset& d, std::span<const std::size_t> features) {
  for (auto f : features) {
    if (f >= d.featureCount()) {
      throw Error(ErrorCode::OutOfRange, "feature index " + std::to_string(f) + " out of range");
    }
  }
}

struct ChiSquare {
  double statistic = 0.0;
  std::size_t rows = 0;  // observed feature levels
  std::size_t cols = 0;  // observed classes
};

ChiSquare chiSquareOf(const detail::CategoricalTable& t, std::size_t f) {
  const auto& codes = t.feature_codes[f];
  const std::size_t r = t.feature_levels[f];
  const std::size_t c = t.class_levels;
  std::vector<double> observed(r * c, 0.0);
  std::vector<double> row_tot(r, 0.0);
  std::vector<double> col_tot(c, 0.0);
  for (std::size_t i = 0; i < t.rows; ++i) {
    const auto a = static_cast<std::size_t>(codes[i]);
    const auto b = static_cast<std::size_t>(t.class_codes[i]);
    observed[a * c + b] += 1.0;
    row_tot[a] += 1.0;
    col_tot[b] += 1.0;
  }
  const double n = static_cast<double>(t.rows);
  ChiSquare out;
  for (std::size_t a = 0; a < r; ++a) {
    if (row_tot[a] == 0.0) continue;
    ++out.rows;
    for (std::size_t b = 0; b < c; ++b) {
      const double expected = row_tot[a] * col_tot[b] / n;
      if (expected == 0.0) continue;
      const double diff = observed[a * c + b] - expected;
      out.statistic += diff * diff / expected;
    }
  }
  for (double v : col_tot) out.cols += v > 0.0;
  return out;
}

ScoreVector contingencyScores(const Dataset& d, std::span<const std::size_t> features,
                              const DiscretizationSpec& spec, std::string_view name,
                              bool cramer) {
  requireClassification(d, name);
  requireFeatureIndices(d, features);
  const auto table = detail::CategoricalTable::build(d, spec, name);
  ScoreVector out;
  out.reserve(features.size());
  for (auto f : features) {
    const ChiSquare chi = chiSquareOf(table, f);
    double score = chi.statistic;
    if (cramer) {
      const std::size_t dim = std::min(chi.rows, chi.cols);
      score = dim < 2 ? 0.0
                      : std::min(1.0, std::sqrt(chi.statistic /
                                                (static_cast<double>(table.rows) * (dim - 1))));
    }
    out.push_back({d.feature(f).name(), f, score});
  }
  return out;
}

}  // namespace

ScoreVector chiSquared(const Dataset& d, std::span<const std::size_t> features,
                       const DiscretizationSpec& spec) {
  return contingencyScores(d, features, spec, "chiSquared", false);
}

ScoreVector cramerV(const Dataset& d, std::span<const std::size_t> features,
                    const DiscretizationSpec& spec) {
  return contingencyScores(d, features, spec, "cramer", true);
}

ScoreVector fScore(const Dataset& d, std::span<const std::size_t> features) {
  requireClassification(d, "fscore");
  requireFeatureIndices(d, features);
  const auto& cls = d.classColumn().asCategorical();
  const std::size_t k = cls.levels.size();
  ScoreVector out;
  out.reserve(features.size());
  for (auto f : features) {
    const Column& col = d.feature(f);
    if (!col.isNumeric()) {
      throw Error(ErrorCode::InvalidArgument,
                  "fscore needs numeric features; '" + col.name() + "' is categorical");
    }
    const auto& xs = col.asNumeric().values;
    std::vector<double> sum(k, 0.0);
    std::vector<double> count(k, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto c = static_cast<std::size_t>(cls.codes[i]);
      sum[c] += xs[i];
      count[c] += 1.0;
      total += xs[i];
    }
    const double mean = total / static_cast<double>(xs.size());
    std::vector<double> class_mean(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
      if (count[c] > 0.0) class_mean[c] = sum[c] / count[c];
    }
    // n_c * sigma_c^2 is the within-class sum of squares.
    double within = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double dev = xs[i] - class_mean[static_cast<std::size_t>(cls.codes[i])];
      within += dev * dev;
    }
    double between = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      const double dev = class_mean[c] - mean;
      between += count[c] * dev * dev;
    }
    out.push_back({col.name(), f, between / std::max(within, kFisherEpsilon)});
  }
  return out;
}

ScoreVector relief(const Dataset& d, std::span<const std::size_t> features, const ReliefConfig& cfg) {
  requireClassification(d, "relief");
  requireFeatureIndices(d, features);
  if (cfg.neighbors < 1) throw Error(ErrorCode::InvalidArgument, "relief needs neighbors >= 1");

  const std::size_t n = d.rowCount();
  const std::size_t nf = d.featureCount();
  const auto& cls = d.classColumn().asCategorical().codes;

  // Per-feature normalized difference tables: diff(f, i, j).
  struct FeatureView {
    const std::vector<double>* numeric = nullptr;
    const std::vector<std::int32_t>* codes = nullptr;
    double range = 0.0;
  };
  std::vector<FeatureView> views(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const Column& col = d.feature(f);
    if (col.isNumeric()) {
      const auto& xs = col.asNumeric().values;
      auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
      views[f].numeric = &xs;
      views[f].range = *hi - *lo;
    } else {
      views[f].codes = &col.asCategorical().codes;
    }
  }
  auto diff = [&](std::size_t f, std::size_t i, std::size_t j) {
    const auto& v = views[f];
    if (v.numeric) {
      if (v.range <= 0.0) return 0.0;
      return std::abs((*v.numeric)[i] - (*v.numeric)[j]) / v.range;
    }
    return (*v.codes)[i] == (*v.codes)[j] ? 0.0 : 1.0;
  };
  auto distance = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t f = 0; f < nf; ++f) s += diff(f, i, j);
    return s;
  };

  std::vector<std::size_t> sample(n);
  std::iota(sample.begin(), sample.end(), std::size_t{0});
  if (cfg.sample && *cfg.sample < n) {
    Rng rng(cfg.seed);
    rng.shuffle(std::span<std::size_t>(sample));
    sample.resize(*cfg.sample);
  }
  if (sample.empty()) throw Error(ErrorCode::InvalidArgument, "relief sample is empty");

  const auto k = static_cast<std::size_t>(cfg.neighbors);
  std::vector<double> weights(features.size(), 0.0);
  std::vector<std::pair<double, std::size_t>> hits;
  std::vector<std::pair<double, std::size_t>> misses;
  for (auto i : sample) {
    hits.clear();
    misses.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      (cls[j] == cls[i] ? hits : misses).emplace_back(distance(i, j), j);
    }
    if (hits.empty()) {
      throw Error(ErrorCode::NoHit, "relief: row " + std::to_string(i) +
                                        " is the only instance of its class");
    }
    if (misses.empty()) {
      throw Error(ErrorCode::InvalidArgument, "relief needs at least two classes");
    }
    // (distance, row) ordering breaks ties by lowest row index.
    const std::size_t kh = std::min(k, hits.size());
    const std::size_t km = std::min(k, misses.size());
    std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(kh), hits.end());
    std::partial_sort(misses.begin(), misses.begin() + static_cast<std::ptrdiff_t>(km), misses.end());
    for (std::size_t w = 0; w < features.size(); ++w) {
      const auto f = features[w];
      double near_hit = 0.0;
      double near_miss = 0.0;
      for (std::size_t h = 0; h < kh; ++h) near_hit += diff(f, i, hits[h].second);
      for (std::size_t m = 0; m < km; ++m) near_miss += diff(f, i, misses[m].second);
      weights[w] += near_miss / static_cast<double>(km) - near_hit / static_cast<double>(kh);
    }
  }
  ScoreVector out;
  out.reserve(features.size());
  for (std::size_t w = 0; w < features.size(); ++w) {
    out.push_back({d.feature(features[w]).name(), features[w],
                   weights[w] / static_cast<double>(sample.size())});
  }
  return out;
}

}  // namespace fsel
