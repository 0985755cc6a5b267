#include "fsel/wrapper.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fsel/error.hpp"
#include "fsel/random.hpp"

namespace fsel {

std::string_view toString(LearnerAlgorithm a) noexcept {
  return a == LearnerAlgorithm::Knn ? "knn" : "zero";
}

std::string_view toString(Metric m) noexcept { return m == Metric::Accuracy ? "Accuracy" : "RMSE"; }

bool metricMaximizes(Metric m) noexcept { return m == Metric::Accuracy; }

// ---------------------------------------------------------------------------
// Data plumbing

FeatureMatrix FeatureMatrix::fromDataset(const Dataset& d, const FeatureMask& m) {
  requireWidth(m, d.featureCount());
  const auto idx = m.indices();
  FeatureMatrix x;
  x.rows = d.rowCount();
  x.cols = idx.size();
  x.values.resize(x.rows * x.cols);
  x.categorical.resize(x.cols);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const Column& col = d.feature(idx[j]);
    x.categorical[j] = col.isCategorical();
    for (std::size_t r = 0; r < x.rows; ++r) {
      x.at(r, j) = col.isCategorical()
                       ? static_cast<double>(col.asCategorical().codes[r])
                       : col.asNumeric().values[r];
    }
  }
  return x;
}

FeatureMatrix FeatureMatrix::selectRows(std::span<const std::size_t> rows_to_keep) const {
  FeatureMatrix out;
  out.rows = rows_to_keep.size();
  out.cols = cols;
  out.categorical = categorical;
  out.values.resize(out.rows * cols);
  for (std::size_t i = 0; i < rows_to_keep.size(); ++i) {
    std::copy_n(values.begin() + static_cast<std::ptrdiff_t>(rows_to_keep[i] * cols), cols,
                out.values.begin() + static_cast<std::ptrdiff_t>(i * cols));
  }
  return out;
}

std::vector<double> targetsOf(const Dataset& d) {
  const Column& cls = d.classColumn();
  if (cls.isNumeric()) return cls.asNumeric().values;
  const auto& codes = cls.asCategorical().codes;
  return {codes.begin(), codes.end()};
}

Preprocessor Preprocessor::fit(const FeatureMatrix& train, bool center, bool scale) {
  Preprocessor p;
  p.center.assign(train.cols, 0.0);
  p.scale.assign(train.cols, 1.0);
  if (train.rows == 0) return p;
  const double n = static_cast<double>(train.rows);
  for (std::size_t c = 0; c < train.cols; ++c) {
    if (train.categorical[c]) continue;
    double mean = 0.0;
    for (std::size_t r = 0; r < train.rows; ++r) mean += train.at(r, c);
    mean /= n;
    if (center) p.center[c] = mean;
    if (scale) {
      double ss = 0.0;
      double lo = train.at(0, c);
      double hi = lo;
      for (std::size_t r = 0; r < train.rows; ++r) {
        const double v = train.at(r, c);
        ss += (v - mean) * (v - mean);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      p.scale[c] = hi > lo ? std::sqrt(ss / n) : 0.0;
    }
  }
  return p;
}

void Preprocessor::apply(FeatureMatrix& x) const {
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      if (x.categorical[c]) continue;
      double& v = x.at(r, c);
      v -= center[c];
      if (scale[c] == 0.0) {
        v = 0.0;
      } else {
        v /= scale[c];
      }
    }
  }
}

// ---------------------------------------------------------------------------
// knn

namespace {

double squaredDistance(const FeatureMatrix& a, std::size_t i, const FeatureMatrix& b, std::size_t j) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.cols; ++c) {
    if (a.categorical[c]) {
      s += a.at(i, c) == b.at(j, c) ? 0.0 : 1.0;
    } else {
      const double d = a.at(i, c) - b.at(j, c);
      s += d * d;
    }
  }
  return s;
}

// Sorted indices of the `k` nearest training rows for one test row.
void nearest(const FeatureMatrix& train, const FeatureMatrix& test, std::size_t row, std::size_t k,
             std::vector<std::pair<double, std::size_t>>& scratch) {
  scratch.clear();
  for (std::size_t j = 0; j < train.rows; ++j) {
    scratch.emplace_back(squaredDistance(test, row, train, j), j);
  }
  std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k), scratch.end());
}

// Predictions of one test row for several k values, from its sorted
// neighbor list.
void predictForKs(std::span<const std::pair<double, std::size_t>> neighbors,
                  std::span<const double> targets, std::span<const std::size_t> ks, TaskKind task,
                  std::size_t class_count, std::span<double> out) {
  if (task == TaskKind::Regression) {
    for (std::size_t g = 0; g < ks.size(); ++g) {
      double sum = 0.0;
      for (std::size_t t = 0; t < ks[g]; ++t) sum += targets[neighbors[t].second];
      out[g] = sum / static_cast<double>(ks[g]);
    }
    return;
  }
  std::vector<std::size_t> votes(class_count, 0);
  for (std::size_t g = 0; g < ks.size(); ++g) {
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t t = 0; t < ks[g]; ++t) {
      ++votes[static_cast<std::size_t>(targets[neighbors[t].second])];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < class_count; ++c) {
      if (votes[c] > votes[best]) best = c;
    }
    out[g] = static_cast<double>(best);
  }
}

std::size_t inferClassCount(std::span<const double> targets) {
  double hi = 0.0;
  for (double t : targets) hi = std::max(hi, t);
  return static_cast<std::size_t>(hi) + 1;
}

}  // namespace

std::vector<double> knnFitPredict(const FeatureMatrix& train, std::span<const double> train_targets,
                                  const FeatureMatrix& test, std::size_t k, TaskKind task,
                                  std::size_t class_count) {
  if (train.rows == 0) throw Error(ErrorCode::InvalidArgument, "knn: empty training set");
  if (k == 0 || k > train.rows) {
    throw Error(ErrorCode::OutOfRange, "knn: k=" + std::to_string(k) + " with " +
                                           std::to_string(train.rows) + " training rows");
  }
  if (train.cols != test.cols) {
    throw Error(ErrorCode::WidthMismatch, "knn: train and test column counts differ");
  }
  if (task == TaskKind::Classification && class_count == 0) class_count = inferClassCount(train_targets);
  std::vector<double> out(test.rows);
  std::vector<std::pair<double, std::size_t>> scratch;
  const std::size_t ks[] = {k};
  for (std::size_t r = 0; r < test.rows; ++r) {
    nearest(train, test, r, k, scratch);
    predictForKs(scratch, train_targets, ks, task, class_count, std::span<double>(&out[r], 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resampling

std::vector<int> assignFolds(const Dataset& d, const ResamplingSpec& resampling) {
  const std::size_t n = d.rowCount();
  if (resampling.folds < 2) throw Error(ErrorCode::Config, "cross-validation needs at least 2 folds");
  if (static_cast<std::size_t>(resampling.folds) > n) {
    throw Error(ErrorCode::Config, "cross-validation with " + std::to_string(resampling.folds) +
                                       " folds needs at least that many rows, dataset has " +
                                       std::to_string(n));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(resampling.seed);
  rng.shuffle(std::span<std::size_t>(order));

  if (resampling.stratified && d.task() == TaskKind::Classification) {
    const auto& codes = d.classColumn().asCategorical().codes;
    // Stable grouping by class keeps the shuffled order within each class.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return codes[a] < codes[b]; });
  }
  std::vector<int> fold(n);
  for (std::size_t i = 0; i < n; ++i) {
    fold[order[i]] = static_cast<int>(i % static_cast<std::size_t>(resampling.folds));
  }
  return fold;
}

std::vector<HyperAssignment> knnGrid(int k_min, int k_max) {
  std::vector<HyperAssignment> grid;
  for (int k = k_min; k <= k_max; ++k) grid.push_back({{"k", static_cast<double>(k)}});
  return grid;
}

namespace {

void validateSpecs(const LearnerSpec& learner, const ResamplingSpec& resampling, const FitSpec& fitting) {
  if (resampling.folds < 2) throw Error(ErrorCode::Config, "cross-validation needs at least 2 folds");
  const bool classification = learner.task == TaskKind::Classification;
  if (classification != (fitting.metric == Metric::Accuracy)) {
    throw Error(ErrorCode::Config, std::string("metric ") + std::string(toString(fitting.metric)) +
                                       " does not fit a " + std::string(toString(learner.task)) +
                                       " task");
  }
  if (learner.algorithm == LearnerAlgorithm::Knn) {
    if (fitting.grid.empty()) throw Error(ErrorCode::Config, "knn needs a non-empty tuning grid");
    for (const auto& point : fitting.grid) {
      auto it = point.find("k");
      if (it == point.end() || it->second < 1 || it->second != std::floor(it->second)) {
        throw Error(ErrorCode::Config, "every knn grid point needs an integer k >= 1");
      }
    }
  }
}

// Everything about a dataset the CV loop needs, independent of the mask.
struct CvContext {
  const Dataset* data = nullptr;
  std::vector<double> targets;
  std::vector<int> folds;
  int fold_count = 0;
  std::size_t class_count = 0;
  TaskKind task = TaskKind::Classification;

  CvContext(const Dataset& d, const LearnerSpec& learner, const ResamplingSpec& resampling)
      : data(&d), targets(targetsOf(d)), folds(assignFolds(d, resampling)),
        fold_count(resampling.folds), task(d.task()) {
    if (learner.task != d.task()) {
      throw Error(ErrorCode::Config, std::string("learner configured for ") +
                                         std::string(toString(learner.task)) + " but dataset is " +
                                         std::string(toString(d.task())));
    }
    if (task == TaskKind::Classification) class_count = d.classColumn().levelCount();
  }

  void split(int f, std::vector<std::size_t>& train, std::vector<std::size_t>& test) const {
    train.clear();
    test.clear();
    for (std::size_t r = 0; r < folds.size(); ++r) (folds[r] == f ? test : train).push_back(r);
    if (train.empty()) {
      throw Error(ErrorCode::InvalidArgument, "fold " + std::to_string(f) + " has an empty training split");
    }
  }
};

double foldMetric(Metric metric, std::span<const double> predicted, std::span<const double> truth) {
  if (metric == Metric::Accuracy) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
    return static_cast<double>(hits) / static_cast<double>(truth.size());
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = predicted[i] - truth[i];
    ss += e * e;
  }
  return std::sqrt(ss / static_cast<double>(truth.size()));
}

// Mean CV metric per grid point.
std::vector<double> runGrid(const CvContext& ctx, const FeatureMask& mask, const LearnerSpec& learner,
                            const FitSpec& fitting, std::atomic<std::uint64_t>* clamped) {
  requireWidth(mask, ctx.data->featureCount());
  requireNonEmpty(mask);
  const FeatureMatrix all = FeatureMatrix::fromDataset(*ctx.data, mask);
  const std::size_t grid_size = std::max<std::size_t>(fitting.grid.size(), 1);
  std::vector<double> sums(grid_size, 0.0);

  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  std::vector<double> train_targets;
  std::vector<double> test_targets;
  std::vector<std::pair<double, std::size_t>> scratch;
  std::vector<std::size_t> ks(grid_size, 0);
  std::vector<double> predictions;  // grid_size x test rows
  std::vector<double> row_out(grid_size);

  for (int f = 0; f < ctx.fold_count; ++f) {
    ctx.split(f, train_rows, test_rows);
    train_targets.clear();
    test_targets.clear();
    for (auto r : train_rows) train_targets.push_back(ctx.targets[r]);
    for (auto r : test_rows) test_targets.push_back(ctx.targets[r]);
    predictions.assign(grid_size * test_rows.size(), 0.0);

    if (learner.algorithm == LearnerAlgorithm::ZeroBaseline) {
      double guess = 0.0;
      if (ctx.task == TaskKind::Classification) {
        std::vector<std::size_t> counts(ctx.class_count, 0);
        for (double t : train_targets) ++counts[static_cast<std::size_t>(t)];
        guess = static_cast<double>(std::max_element(counts.begin(), counts.end()) - counts.begin());
      } else {
        guess = std::accumulate(train_targets.begin(), train_targets.end(), 0.0) /
                static_cast<double>(train_targets.size());
      }
      std::fill(predictions.begin(), predictions.end(), guess);
    } else {
      FeatureMatrix train = all.selectRows(train_rows);
      FeatureMatrix test = all.selectRows(test_rows);
      if (fitting.center || fitting.scale) {
        const auto pre = Preprocessor::fit(train, fitting.center, fitting.scale);
        pre.apply(train);
        pre.apply(test);
      }
      std::size_t k_max = 0;
      for (std::size_t g = 0; g < grid_size; ++g) {
        auto k = static_cast<std::size_t>(fitting.grid[g].at("k"));
        if (k > train.rows) {
          k = train.rows;
          if (clamped) clamped->fetch_add(1, std::memory_order_relaxed);
        }
        ks[g] = k;
        k_max = std::max(k_max, k);
      }
      for (std::size_t r = 0; r < test.rows; ++r) {
        nearest(train, test, r, k_max, scratch);
        predictForKs(scratch, train_targets, ks, ctx.task, ctx.class_count, row_out);
        for (std::size_t g = 0; g < grid_size; ++g) predictions[g * test.rows + r] = row_out[g];
      }
    }
    for (std::size_t g = 0; g < grid_size; ++g) {
      sums[g] += foldMetric(fitting.metric,
                            std::span<const double>(predictions).subspan(g * test_rows.size(), test_rows.size()),
                            test_targets);
    }
  }
  for (auto& s : sums) s /= static_cast<double>(ctx.fold_count);
  return sums;
}

std::size_t bestGridIndex(const std::vector<double>& scores, bool maximize) {
  std::size_t best = 0;
  for (std::size_t g = 1; g < scores.size(); ++g) {
    if (isBetter(scores[g], scores[best], maximize)) best = g;
  }
  return best;
}

}  // namespace

double crossValidate(const Dataset& d, const FeatureMask& mask, const LearnerSpec& learner,
                     const HyperAssignment& hyper, const ResamplingSpec& resampling,
                     const FitSpec& fitting) {
  FitSpec single = fitting;
  single.grid = {hyper};
  if (learner.algorithm == LearnerAlgorithm::ZeroBaseline) single.grid = {HyperAssignment{}};
  validateSpecs(learner, resampling, single);
  const CvContext ctx(d, learner, resampling);
  return runGrid(ctx, mask, learner, single, nullptr).front();
}

std::vector<Preprocessor> foldPreprocessors(const Dataset& d, const FeatureMask& mask,
                                            const ResamplingSpec& resampling, const FitSpec& fitting) {
  requireWidth(mask, d.featureCount());
  requireNonEmpty(mask);
  const auto folds = assignFolds(d, resampling);
  const FeatureMatrix all = FeatureMatrix::fromDataset(d, mask);
  std::vector<Preprocessor> out;
  for (int f = 0; f < resampling.folds; ++f) {
    std::vector<std::size_t> train_rows;
    for (std::size_t r = 0; r < folds.size(); ++r) {
      if (folds[r] != f) train_rows.push_back(r);
    }
    out.push_back(Preprocessor::fit(all.selectRows(train_rows), fitting.center, fitting.scale));
  }
  return out;
}

// ---------------------------------------------------------------------------
// WrapperEvaluator

WrapperEvaluator::WrapperEvaluator(LearnerSpec learner, ResamplingSpec resampling, FitSpec fitting)
    : Measure({"wrapper", metricMaximizes(fitting.metric), MeasureKind::Set}),
      learner_(learner),
      resampling_(resampling),
      fitting_(std::move(fitting)),
      clamped_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  if (learner_.algorithm == LearnerAlgorithm::ZeroBaseline) fitting_.grid = {HyperAssignment{}};
  validateSpecs(learner_, resampling_, fitting_);
}

MaskScorer WrapperEvaluator::bind(const Dataset& d) const {
  auto ctx = std::make_shared<const CvContext>(d, learner_, resampling_);
  return [ctx, learner = learner_, fitting = fitting_, clamped = clamped_](const FeatureMask& m) {
    const auto scores = runGrid(*ctx, m, learner, fitting, clamped.get());
    return scores[bestGridIndex(scores, metricMaximizes(fitting.metric))];
  };
}

std::vector<double> WrapperEvaluator::gridScores(const Dataset& d, const FeatureMask& mask) const {
  const CvContext ctx(d, learner_, resampling_);
  return runGrid(ctx, mask, learner_, fitting_, clamped_.get());
}

std::shared_ptr<const WrapperEvaluator> makeWrapperEvaluator(const LearnerSpec& learner,
                                                             const ResamplingSpec& resampling,
                                                             const FitSpec& fitting) {
  return std::make_shared<const WrapperEvaluator>(learner, resampling, fitting);
}

}  // namespace fsel
