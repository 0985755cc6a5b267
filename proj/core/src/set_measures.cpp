#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "categorical_table.hpp"
#include "fsel/error.hpp"
#include "fsel/measures.hpp"

namespace fsel {

namespace {

using detail::CategoricalTable;
using detail::PatternCounts;

double binaryFromCounts(const PatternCounts& pc) {
  for (std::size_t p = 0; p < pc.patterns; ++p) {
    std::size_t classes_seen = 0;
    for (std::size_t c = 0; c < pc.classes; ++c) classes_seen += pc.at(p, c) > 0;
    if (classes_seen > 1) return 0.0;
  }
  return 1.0;
}

double ieFromCounts(const PatternCounts& pc, std::size_t n) {
  std::size_t inconsistent = 0;
  for (std::size_t p = 0; p < pc.patterns; ++p) {
    std::size_t majority = 0;
    for (std::size_t c = 0; c < pc.classes; ++c) majority = std::max(majority, pc.at(p, c));
    inconsistent += pc.totals[p] - majority;
  }
  return 1.0 - static_cast<double>(inconsistent) / static_cast<double>(n);
}

double iepFromCounts(const PatternCounts& pc) {
  auto pairs = [](std::size_t k) { return k * (k - 1) / 2; };
  std::size_t total = 0;
  std::size_t concordant = 0;
  for (std::size_t p = 0; p < pc.patterns; ++p) {
    total += pairs(pc.totals[p]);
    for (std::size_t c = 0; c < pc.classes; ++c) concordant += pairs(pc.at(p, c));
  }
  if (total == 0) return 1.0;
  return 1.0 - static_cast<double>(total - concordant) / static_cast<double>(total);
}

double roughsetFromCounts(const PatternCounts& pc, std::size_t n) {
  std::size_t positive = 0;
  for (std::size_t p = 0; p < pc.patterns; ++p) {
    for (std::size_t c = 0; c < pc.classes; ++c) {
      if (pc.at(p, c) == pc.totals[p]) {
        positive += pc.totals[p];
        break;
      }
    }
  }
  return static_cast<double>(positive) / static_cast<double>(n);
}

double gainRatioFromCounts(const PatternCounts& pc, std::size_t n) {
  const double hs = detail::entropy(pc.totals, n);
  if (hs <= 0.0) return 0.0;
  return std::clamp(detail::mutualInformationBits(pc, n) / hs, 0.0, 1.0);
}

double suFromCounts(const PatternCounts& pc, std::size_t n) {
  const double denom = detail::entropy(pc.totals, n) + detail::entropy(pc.class_totals, n);
  if (denom <= 0.0) return 0.0;
  return std::clamp(2.0 * detail::mutualInformationBits(pc, n) / denom, 0.0, 1.0);
}

double giniFromCounts(const PatternCounts& pc, std::size_t n) {
  // sum_v p(v) sum_c p(c|v)^2 = sum_v (sum_c n_vc^2) / (n_v N)
  double purity = 0.0;
  for (std::size_t p = 0; p < pc.patterns; ++p) {
    double sq = 0.0;
    for (std::size_t c = 0; c < pc.classes; ++c) {
      const double k = static_cast<double>(pc.at(p, c));
      sq += k * k;
    }
    purity += sq / static_cast<double>(pc.totals[p]);
  }
  return purity / static_cast<double>(n);
}

using CountsFn = double (*)(const PatternCounts&, std::size_t);

MaskScorer bindPatternMeasure(const Dataset& d, const DiscretizationSpec& spec,
                              std::string_view name, CountsFn fn) {
  auto table = std::make_shared<const CategoricalTable>(CategoricalTable::build(d, spec, name));
  return [table, fn](const FeatureMask& m) {
    return fn(detail::countPatterns(*table, m), table->rows);
  };
}

double evalPattern(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec,
                   std::string_view name, CountsFn fn) {
  requireWidth(m, d.featureCount());
  requireNonEmpty(m);
  return bindPatternMeasure(d, spec, name, fn)(m);
}

double binaryAdapter(const PatternCounts& pc, std::size_t) { return binaryFromCounts(pc); }
double iepAdapter(const PatternCounts& pc, std::size_t) { return iepFromCounts(pc); }
double miAdapter(const PatternCounts& pc, std::size_t n) { return detail::mutualInformationBits(pc, n); }

// R^2 of least squares with intercept, on pre-extracted numeric columns.
struct RegressionTable {
  std::vector<std::vector<double>> features;
  std::vector<std::string> names;
  std::vector<bool> numeric;
  Eigen::VectorXd target;
  double sst = 0.0;

  static RegressionTable build(const Dataset& d) {
    if (d.task() != TaskKind::Regression) {
      throw Error(ErrorCode::MeasureInapplicable, "determinationCoefficient requires a regression task");
    }
    RegressionTable t;
    for (std::size_t f = 0; f < d.featureCount(); ++f) {
      const Column& col = d.feature(f);
      t.names.push_back(col.name());
      t.numeric.push_back(col.isNumeric());
      t.features.push_back(col.isNumeric() ? col.asNumeric().values : std::vector<double>{});
    }
    const auto& y = d.classColumn().asNumeric().values;
    t.target = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size()));
    const double mean = t.target.mean();
    t.sst = (t.target.array() - mean).square().sum();
    if (!(t.sst > 0.0)) {
      throw Error(ErrorCode::DegenerateTarget,
                  "determinationCoefficient is undefined for a constant target");
    }
    return t;
  }

  double r2(const FeatureMask& m) const {
    requireWidth(m, features.size());
    requireNonEmpty(m);
    const auto idx = m.indices();
    const auto n = target.size();
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(idx.size() + 1));
    x.col(0).setOnes();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (!numeric[idx[j]]) {
        throw Error(ErrorCode::InvalidArgument,
                    "determinationCoefficient needs numeric features; '" + names[idx[j]] +
                        "' is categorical");
      }
      x.col(static_cast<Eigen::Index>(j + 1)) =
          Eigen::Map<const Eigen::VectorXd>(features[idx[j]].data(), n);
    }
    // Minimum-norm solution also covers rank-deficient designs.
    const Eigen::VectorXd beta = x.completeOrthogonalDecomposition().solve(target);
    const double sse = (target - x * beta).squaredNorm();
    return std::clamp(1.0 - sse / sst, 0.0, 1.0);
  }
};

}  // namespace

double binaryConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "binaryConsistency", binaryAdapter);
}
double ieConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "IEConsistency", ieFromCounts);
}
double iepConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "IEPConsistency", iepAdapter);
}
double roughsetConsistency(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "roughsetConsistency", roughsetFromCounts);
}
double mutualInformation(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "mutualInformation", miAdapter);
}
double gainRatio(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "gainRatio", gainRatioFromCounts);
}
double symmetricalUncertainty(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "symmetricalUncertain", suFromCounts);
}
double giniIndex(const Dataset& d, const FeatureMask& m, const DiscretizationSpec& spec) {
  return evalPattern(d, m, spec, "giniIndex", giniFromCounts);
}
double determinationCoefficient(const Dataset& d, const FeatureMask& m) {
  requireWidth(m, d.featureCount());
  requireNonEmpty(m);
  return RegressionTable::build(d).r2(m);
}

namespace detail {

// Used by the registry to build bound scorers without re-discretizing.
MaskScorer bindSetMeasure(const std::string& name, const Dataset& d, const DiscretizationSpec& spec) {
  if (name == "binaryConsistency") return bindPatternMeasure(d, spec, name, binaryAdapter);
  if (name == "IEConsistency") return bindPatternMeasure(d, spec, name, ieFromCounts);
  if (name == "IEPConsistency") return bindPatternMeasure(d, spec, name, iepAdapter);
  if (name == "roughsetConsistency") return bindPatternMeasure(d, spec, name, roughsetFromCounts);
  if (name == "mutualInformation") return bindPatternMeasure(d, spec, name, miAdapter);
  if (name == "gainRatio") return bindPatternMeasure(d, spec, name, gainRatioFromCounts);
  if (name == "symmetricalUncertain") return bindPatternMeasure(d, spec, name, suFromCounts);
  if (name == "giniIndex") return bindPatternMeasure(d, spec, name, giniFromCounts);
  if (name == "determinationCoefficient") {
    auto table = std::make_shared<const RegressionTable>(RegressionTable::build(d));
    return [table](const FeatureMask& m) { return table->r2(m); };
  }
  throw Error(ErrorCode::Config, "unknown set measure '" + name + "'");
}

}  // namespace detail

}  // namespace fsel
