#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsel/dataset.hpp"
#include "fsel/feature_mask.hpp"

namespace fsel {

enum class MeasureKind { Individual, Set };

std::string_view toString(MeasureKind kind) noexcept;

struct MeasureDescriptor {
  std::string name;
  bool maximize = true;
  MeasureKind kind = MeasureKind::Set;
};

struct FeatureScore {
  std::string feature;
  std::size_t index = 0;
  double score = 0.0;
};

// One entry per requested feature, in request order.
using ScoreVector = std::vector<FeatureScore>;

// A set measure bound to one dataset. Must be safe to call concurrently.
using MaskScorer = std::function<double(const FeatureMask&)>;

// True when `a` is strictly better than `b` under the orientation.
inline bool isBetter(double a, double b, bool maximize) noexcept {
  return maximize ? a > b : a < b;
}

// Sentinel that every real score beats.
double worstValue(bool maximize) noexcept;

// Common interface of every evaluation measure. Set measures implement
// bind(); individual measures implement scoreFeatures(). A set measure can
// always act as an individual one by scoring singleton masks.
class Measure {
 public:
  virtual ~Measure() = default;

  const MeasureDescriptor& descriptor() const noexcept { return descriptor_; }
  const std::string& name() const noexcept { return descriptor_.name; }
  bool maximize() const noexcept { return descriptor_.maximize; }
  MeasureKind kind() const noexcept { return descriptor_.kind; }

  // Prepares per-dataset state once. Throws KindMismatch for individual
  // measures.
  virtual MaskScorer bind(const Dataset& d) const;

  double evaluate(const Dataset& d, const FeatureMask& m) const { return bind(d)(m); }

  virtual ScoreVector scoreFeatures(const Dataset& d, std::span<const std::size_t> features) const;
  ScoreVector scoreAll(const Dataset& d) const;

 protected:
  explicit Measure(MeasureDescriptor descriptor) : descriptor_(std::move(descriptor)) {}

 private:
  MeasureDescriptor descriptor_;
};

using MeasurePtr = std::shared_ptr<const Measure>;

// Throws KindMismatch unless m is a set measure; `context` names the caller.
void requireSetMeasure(const Measure& m, std::string_view context);

// ---------------------------------------------------------------------------
// Individual measures

ScoreVector chiSquared(const Dataset& d, std::span<const std::size_t> features,
                       const DiscretizationSpec& spec = {});
ScoreVector cramerV(const Dataset& d, std::span<const std::size_t> features,
                    const DiscretizationSpec& spec = {});

// Denominator floor of the Fisher score.
inline constexpr double kFisherEpsilon = 1e-12;
ScoreVector fScore(const Dataset& d, std::span<const std::size_t> features);

struct ReliefConfig {
  int neighbors = 1;
  // Number of sampled instances; nullopt uses every row in order.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
};
ScoreVector relief(const Dataset& d, std::span<const std::size_t> features,
                   const ReliefConfig& cfg = {});

// ---------------------------------------------------------------------------
// Set measures. Numeric features are discretized with `spec` first, except
// for determinationCoefficient which works on raw values.

double binaryConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double ieConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double iepConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double roughsetConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double mutualInformation(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double gainRatio(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double symmetricalUncertainty(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double giniIndex(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec = {});
double determinationCoefficient(const Dataset& d, const FeatureMask& m);

// ---------------------------------------------------------------------------
// Registry

struct MeasureParams {
  DiscretizationSpec discretization;
  ReliefConfig relief;
};

// Looks up a filter measure by name (e.g. "giniIndex", "IEConsistency").
// Throws Config for unknown names.
MeasurePtr makeMeasure(const std::string& name, const MeasureParams& params = {});
// Canonical names of every registered filter measure.
std::vector<std::string> measureNames();
bool isMeasureName(const std::string& name);

// Wraps an arbitrary mask function as a set measure.
MeasurePtr makeSetMeasure(MeasureDescriptor descriptor,
                          std::function<double(const Dataset&, const FeatureMask&)> fn);
// Wraps an arbitrary per-feature function as an individual measure.
MeasurePtr makeIndividualMeasure(
    MeasureDescriptor descriptor,
    std::function<ScoreVector(const Dataset&, std::span<const std::size_t>)> fn);

}  // namespace fsel
