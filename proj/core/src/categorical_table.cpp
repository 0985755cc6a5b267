#include "categorical_table.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "fsel/error.hpp"

namespace fsel::detail {

CategoricalTable CategoricalTable::build(const Dataset& d, const DiscretizationSpec& spec,
                                         std::string_view measure) {
  if (d.task() != TaskKind::Classification) {
    throw Error(ErrorCode::MeasureInapplicable,
                std::string(measure) + " requires a classification task");
  }
  const Dataset disc = discretize(d, spec);
  CategoricalTable t;
  t.rows = disc.rowCount();
  t.feature_codes.reserve(disc.featureCount());
  for (std::size_t f = 0; f < disc.featureCount(); ++f) {
    const auto& cat = disc.feature(f).asCategorical();
    t.feature_codes.push_back(cat.codes);
    t.feature_levels.push_back(cat.levels.size());
  }
  const auto& cls = disc.classColumn().asCategorical();
  t.class_codes = cls.codes;
  t.class_levels = cls.levels.size();
  return t;
}

PatternCounts countPatterns(const CategoricalTable& t, const FeatureMask& m) {
  requireWidth(m, t.feature_codes.size());
  requireNonEmpty(m);

  std::vector<std::uint32_t> ids(t.rows, 0);
  std::size_t patterns = 1;
  std::vector<std::int64_t> dense;
  std::unordered_map<std::uint64_t, std::uint32_t> sparse;
  for (auto f : m.indices()) {
    const auto& codes = t.feature_codes[f];
    const std::size_t levels = t.feature_levels[f];
    const std::size_t space = patterns * levels;
    std::uint32_t next = 0;
    if (space <= (std::size_t{1} << 22)) {
      dense.assign(space, -1);
      for (std::size_t r = 0; r < t.rows; ++r) {
        auto& slot = dense[ids[r] * levels + static_cast<std::size_t>(codes[r])];
        if (slot < 0) slot = next++;
        ids[r] = static_cast<std::uint32_t>(slot);
      }
    } else {
      sparse.clear();
      for (std::size_t r = 0; r < t.rows; ++r) {
        const std::uint64_t key = std::uint64_t{ids[r]} * levels + static_cast<std::uint64_t>(codes[r]);
        auto [it, inserted] = sparse.try_emplace(key, next);
        if (inserted) ++next;
        ids[r] = it->second;
      }
    }
    patterns = next;
  }

  PatternCounts pc;
  pc.patterns = patterns;
  pc.classes = t.class_levels;
  pc.totals.assign(patterns, 0);
  pc.joint.assign(patterns * pc.classes, 0);
  pc.class_totals.assign(pc.classes, 0);
  for (std::size_t r = 0; r < t.rows; ++r) {
    const auto c = static_cast<std::size_t>(t.class_codes[r]);
    ++pc.totals[ids[r]];
    ++pc.joint[ids[r] * pc.classes + c];
    ++pc.class_totals[c];
  }
  return pc;
}

double entropy(const std::vector<std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  const double n = static_cast<double>(total);
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

double mutualInformationBits(const PatternCounts& pc, std::size_t n) {
  // I = H(C) - H(C|S), with H(C|S) = sum_p (n_p / N) H(C | p).
  const double hc = entropy(pc.class_totals, n);
  double conditional = 0.0;
  std::vector<std::size_t> row(pc.classes);
  for (std::size_t p = 0; p < pc.patterns; ++p) {
    for (std::size_t c = 0; c < pc.classes; ++c) row[c] = pc.at(p, c);
    conditional += static_cast<double>(pc.totals[p]) * entropy(row, pc.totals[p]);
  }
  conditional /= static_cast<double>(n);
  const double mi = hc - conditional;
  return mi < 0.0 ? 0.0 : mi;
}

}  // namespace fsel::detail
