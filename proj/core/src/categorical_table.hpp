#pragma once

#include <cstdint>
#include <vector>

#include "fsel/dataset.hpp"
#include "fsel/feature_mask.hpp"

namespace fsel::detail {

// Discretized, code-only view of a classification dataset.
struct CategoricalTable {
  std::size_t rows = 0;
  std::vector<std::vector<std::int32_t>> feature_codes;
  std::vector<std::size_t> feature_levels;
  std::vector<std::int32_t> class_codes;
  std::size_t class_levels = 0;

  // Throws MeasureInapplicable for regression datasets.
  static CategoricalTable build(const Dataset& d, const DiscretizationSpec& spec,
                                std::string_view measure);
};

// Partition of the rows by their joint pattern over the masked features.
// Pattern ids follow first appearance in row order, so two masks inducing the
// same partition produce identical counts in identical order.
struct PatternCounts {
  std::size_t patterns = 0;
  std::size_t classes = 0;
  std::vector<std::size_t> totals;   // rows per pattern
  std::vector<std::size_t> joint;    // patterns x classes, row-major
  std::vector<std::size_t> class_totals;

  std::size_t at(std::size_t p, std::size_t c) const { return joint[p * classes + c]; }
};

PatternCounts countPatterns(const CategoricalTable& t, const FeatureMask& m);

// Entropies in bits from integer counts.
double entropy(const std::vector<std::size_t>& counts, std::size_t total);
double mutualInformationBits(const PatternCounts& pc, std::size_t n);

}  // namespace fsel::detail
