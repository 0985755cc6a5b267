#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "fsel/error.hpp"
#include "fsel/measures.hpp"

namespace fsel {

namespace detail {
MaskScorer bindSetMeasure(const std::string& name, const Dataset& d, const DiscretizationSpec& spec);
}  // namespace detail

std::string_view toString(MeasureKind kind) noexcept {
  return kind == MeasureKind::Individual ? "individual" : "set";
}

double worstValue(bool maximize) noexcept {
  return maximize ? -std::numeric_limits<double>::infinity()
                  : std::numeric_limits<double>::infinity();
}

MaskScorer Measure::bind(const Dataset&) const {
  throw Error(ErrorCode::KindMismatch,
              "'" + name() + "' is an individual measure and cannot evaluate feature sets");
}

ScoreVector Measure::scoreFeatures(const Dataset& d, std::span<const std::size_t> features) const {
  const MaskScorer scorer = bind(d);
  ScoreVector out;
  out.reserve(features.size());
  for (auto f : features) {
    if (f >= d.featureCount()) {
      throw Error(ErrorCode::OutOfRange, "feature index " + std::to_string(f) + " out of range");
    }
    out.push_back({d.feature(f).name(), f, scorer(FeatureMask::fromIndices(d.featureCount(), {f}))});
  }
  return out;
}

ScoreVector Measure::scoreAll(const Dataset& d) const {
  std::vector<std::size_t> all(d.featureCount());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return scoreFeatures(d, all);
}

void requireSetMeasure(const Measure& m, std::string_view context) {
  if (m.kind() != MeasureKind::Set) {
    throw Error(ErrorCode::KindMismatch, std::string(context) + " needs a set measure, but '" +
                                             m.name() + "' is an individual measure");
  }
}

namespace {

class BuiltinSetMeasure final : public Measure {
 public:
  BuiltinSetMeasure(std::string name, DiscretizationSpec spec)
      : Measure({std::move(name), true, MeasureKind::Set}), spec_(spec) {}

  MaskScorer bind(const Dataset& d) const override {
    auto inner = detail::bindSetMeasure(name(), d, spec_);
    const std::size_t width = d.featureCount();
    return [inner = std::move(inner), width](const FeatureMask& m) {
      requireWidth(m, width);
      requireNonEmpty(m);
      return inner(m);
    };
  }

 private:
  DiscretizationSpec spec_;
};

using IndividualFn = std::function<ScoreVector(const Dataset&, std::span<const std::size_t>)>;

class FunctionIndividualMeasure final : public Measure {
 public:
  FunctionIndividualMeasure(MeasureDescriptor descriptor, IndividualFn fn)
      : Measure(std::move(descriptor)), fn_(std::move(fn)) {}

  ScoreVector scoreFeatures(const Dataset& d, std::span<const std::size_t> features) const override {
    return fn_(d, features);
  }

 private:
  IndividualFn fn_;
};

class FunctionSetMeasure final : public Measure {
 public:
  FunctionSetMeasure(MeasureDescriptor descriptor,
                     std::function<double(const Dataset&, const FeatureMask&)> fn)
      : Measure(std::move(descriptor)), fn_(std::move(fn)) {}

  MaskScorer bind(const Dataset& d) const override {
    return [fn = fn_, &d](const FeatureMask& m) {
      requireWidth(m, d.featureCount());
      requireNonEmpty(m);
      return fn(d, m);
    };
  }

 private:
  std::function<double(const Dataset&, const FeatureMask&)> fn_;
};

const std::map<std::string, std::string>& aliases() {
  static const std::map<std::string, std::string> table = {
      {"cramerV", "cramer"},
      {"fScore", "fscore"},
      {"symmetricalUncertainty", "symmetricalUncertain"},
      {"ieConsistency", "IEConsistency"},
      {"iepConsistency", "IEPConsistency"},
  };
  return table;
}

const std::vector<std::string>& canonicalNames() {
  static const std::vector<std::string> names = {
      "chiSquared",        "cramer",         "fscore",         "relief",
      "binaryConsistency", "IEConsistency",  "IEPConsistency", "roughsetConsistency",
      "mutualInformation", "gainRatio",      "symmetricalUncertain",
      "giniIndex",         "determinationCoefficient",
  };
  return names;
}

std::string canonical(const std::string& name) {
  if (auto it = aliases().find(name); it != aliases().end()) return it->second;
  return name;
}

}  // namespace

MeasurePtr makeMeasure(const std::string& requested, const MeasureParams& params) {
  const std::string name = canonical(requested);
  const auto spec = params.discretization;
  if (name == "chiSquared") {
    return makeIndividualMeasure({name, true, MeasureKind::Individual},
                                 [spec](const Dataset& d, std::span<const std::size_t> f) {
                                   return chiSquared(d, f, spec);
                                 });
  }
  if (name == "cramer") {
    return makeIndividualMeasure({name, true, MeasureKind::Individual},
                                 [spec](const Dataset& d, std::span<const std::size_t> f) {
                                   return cramerV(d, f, spec);
                                 });
  }
  if (name == "fscore") {
    return makeIndividualMeasure({name, true, MeasureKind::Individual},
                                 [](const Dataset& d, std::span<const std::size_t> f) {
                                   return fScore(d, f);
                                 });
  }
  if (name == "relief") {
    auto cfg = params.relief;
    return makeIndividualMeasure({name, true, MeasureKind::Individual},
                                 [cfg](const Dataset& d, std::span<const std::size_t> f) {
                                   return relief(d, f, cfg);
                                 });
  }
  if (std::find(canonicalNames().begin(), canonicalNames().end(), name) != canonicalNames().end()) {
    if (spec.bins < 2) throw Error(ErrorCode::Config, "discretization needs at least 2 bins");
    return std::make_shared<BuiltinSetMeasure>(name, spec);
  }
  throw Error(ErrorCode::Config, "unknown measure '" + requested + "'");
}

std::vector<std::string> measureNames() { return canonicalNames(); }

bool isMeasureName(const std::string& name) {
  const auto c = canonical(name);
  return std::find(canonicalNames().begin(), canonicalNames().end(), c) != canonicalNames().end();
}

MeasurePtr makeSetMeasure(MeasureDescriptor descriptor,
                          std::function<double(const Dataset&, const FeatureMask&)> fn) {
  descriptor.kind = MeasureKind::Set;
  return std::make_shared<FunctionSetMeasure>(std::move(descriptor), std::move(fn));
}

MeasurePtr makeIndividualMeasure(MeasureDescriptor descriptor, IndividualFn fn) {
  descriptor.kind = MeasureKind::Individual;
  return std::make_shared<FunctionIndividualMeasure>(std::move(descriptor), std::move(fn));
}

}  // namespace fsel
