#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fsel/dataset.hpp"
#include "fsel/feature_mask.hpp"
#include "fsel/measures.hpp"

namespace fsel {

enum class LearnerAlgorithm { Knn, ZeroBaseline };
enum class Metric { Accuracy, Rmse };

std::string_view toString(LearnerAlgorithm a) noexcept;
std::string_view toString(Metric m) noexcept;
bool metricMaximizes(Metric m) noexcept;

struct LearnerSpec {
  LearnerAlgorithm algorithm = LearnerAlgorithm::Knn;
  TaskKind task = TaskKind::Classification;
};

struct ResamplingSpec {
  int folds = 10;
  bool stratified = true;
  std::uint64_t seed = 0;
};

// One point of the tuning grid, e.g. {"k": 5}.
using HyperAssignment = std::map<std::string, double>;

struct FitSpec {
  bool center = false;
  bool scale = false;
  Metric metric = Metric::Accuracy;
  std::vector<HyperAssignment> grid;
};

// Row-major numeric matrix; categorical columns hold level codes and are
// compared by mismatch rather than difference.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<bool> categorical;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }

  // Masked features of `d`, all rows.
  static FeatureMatrix fromDataset(const Dataset& d, const FeatureMask& m);
  FeatureMatrix selectRows(std::span<const std::size_t> rows) const;
};

// Class codes for classification, raw values for regression.
std::vector<double> targetsOf(const Dataset& d);

// Center/scale statistics fitted on one training split.
struct Preprocessor {
  std::vector<double> center;
  std::vector<double> scale;  // 0 marks a zero-variance column

  static Preprocessor fit(const FeatureMatrix& train, bool center, bool scale);
  void apply(FeatureMatrix& x) const;
};

// Prediction for each test row. Ties in distance resolve to the lower
// training row; ties in the vote to the lower class code.
std::vector<double> knnFitPredict(const FeatureMatrix& train, std::span<const double> train_targets,
                                  const FeatureMatrix& test, std::size_t k, TaskKind task,
                                  std::size_t class_count = 0);

// Fold index for every row. Rows are shuffled (Fisher-Yates, seeded), then
// dealt round-robin, class by class when stratified, with one running
// counter so remainder rows go to the lowest folds.
std::vector<int> assignFolds(const Dataset& d, const ResamplingSpec& resampling);

double crossValidate(const Dataset& d, const FeatureMask& mask, const LearnerSpec& learner,
                     const HyperAssignment& hyper, const ResamplingSpec& resampling,
                     const FitSpec& fitting);

// Preprocessing statistics of every fold's training split (fold order).
std::vector<Preprocessor> foldPreprocessors(const Dataset& d, const FeatureMask& mask,
                                            const ResamplingSpec& resampling, const FitSpec& fitting);

// Default knn grid k = 1..20.
std::vector<HyperAssignment> knnGrid(int k_min, int k_max);

// Set measure that scores a mask by the best grid point's mean CV metric.
class WrapperEvaluator final : public Measure {
 public:
  WrapperEvaluator(LearnerSpec learner, ResamplingSpec resampling, FitSpec fitting);

  MaskScorer bind(const Dataset& d) const override;

  const LearnerSpec& learner() const noexcept { return learner_; }
  const ResamplingSpec& resampling() const noexcept { return resampling_; }
  const FitSpec& fitting() const noexcept { return fitting_; }

  // Mean CV metric of every grid point, in grid order.
  std::vector<double> gridScores(const Dataset& d, const FeatureMask& mask) const;

  // Number of fold fits where k exceeded the training size and was clamped.
  std::uint64_t clampedFits() const noexcept { return clamped_->load(); }

 private:
  LearnerSpec learner_;
  ResamplingSpec resampling_;
  FitSpec fitting_;
  std::shared_ptr<std::atomic<std::uint64_t>> clamped_;
};

std::shared_ptr<const WrapperEvaluator> makeWrapperEvaluator(const LearnerSpec& learner,
                                                             const ResamplingSpec& resampling,
                                                             const FitSpec& fitting);

}  // namespace fsel
