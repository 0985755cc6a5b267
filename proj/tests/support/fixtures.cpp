#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace fsel::fixtures {

namespace {

Column codesColumn(const std::string& name, const std::vector<int>& codes) {
  std::vector<std::string> cells;
  cells.reserve(codes.size());
  for (int c : codes) cells.push_back(std::to_string(c));
  return Column::categoricalFromStrings(name, cells);
}

}  // namespace

Dataset categoricalDataset(const std::vector<std::string>& names, const std::vector<std::vector<int>>& features,
                           const std::vector<int>& klass) {
  std::vector<Column> cols;
  for (std::size_t i = 0; i < features.size(); ++i) cols.push_back(codesColumn(names[i], features[i]));
  cols.push_back(codesColumn(names.back(), klass));
  return Dataset(std::move(cols), names.back());
}

Dataset numericDataset(const std::vector<std::string>& names, const std::vector<std::vector<double>>& features,
                       const std::vector<int>& klass) {
  std::vector<Column> cols;
  for (std::size_t i = 0; i < features.size(); ++i) cols.push_back(Column::numeric(names[i], features[i]));
  cols.push_back(codesColumn(names.back(), klass));
  return Dataset(std::move(cols), names.back());
}

Dataset regressionDataset(const std::vector<std::string>& names, const std::vector<std::vector<double>>& features,
                          const std::vector<double>& target) {
  std::vector<Column> cols;
  for (std::size_t i = 0; i < features.size(); ++i) cols.push_back(Column::numeric(names[i], features[i]));
  cols.push_back(Column::numeric(names.back(), target));
  return Dataset(std::move(cols), names.back());
}

Dataset dPerf() { return categoricalDataset({"A", "B", "C"}, {{0, 0, 1, 1}, {0, 1, 0, 1}}, {0, 0, 1, 1}); }
Dataset dXor() { return categoricalDataset({"A", "B", "C"}, {{0, 0, 1, 1}, {0, 1, 0, 1}}, {0, 1, 1, 0}); }
Dataset dInc() { return categoricalDataset({"A", "C"}, {{0, 0, 0, 1}}, {0, 0, 1, 1}); }

Dataset randomDataset(std::mt19937_64& gen, const RandomSpec& spec) {
  auto pick = [&gen](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(gen() % (hi - lo + 1));
  };
  const std::size_t n = pick(spec.min_features, spec.max_features);
  const int classes = static_cast<int>(pick(2, static_cast<std::size_t>(spec.max_classes)));
  const std::size_t rows = std::max<std::size_t>(pick(spec.min_rows, spec.max_rows), static_cast<std::size_t>(classes));

  std::vector<Column> cols;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t f = 0; f < n; ++f) {
    const std::string name = "F" + std::to_string(f);
    if (unit(gen) < spec.numeric_share) {
      std::vector<double> v(rows);
      for (auto& x : v) x = std::round(unit(gen) * 1000.0) / 100.0;
      cols.push_back(Column::numeric(name, v));
    } else {
      const int levels = static_cast<int>(pick(1, static_cast<std::size_t>(spec.max_levels)));
      std::vector<int> codes(rows);
      for (auto& c : codes) c = static_cast<int>(gen() % static_cast<std::uint64_t>(levels));
      std::vector<std::string> cells;
      for (int c : codes) cells.push_back("l" + std::to_string(c));
      cols.push_back(Column::categoricalFromStrings(name, cells));
    }
  }
  std::vector<int> klass(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    klass[r] = r < static_cast<std::size_t>(classes) ? static_cast<int>(r)
                                                     : static_cast<int>(gen() % static_cast<std::uint64_t>(classes));
  }
  std::vector<std::string> cells;
  for (int c : klass) cells.push_back("c" + std::to_string(c));
  cols.push_back(Column::categoricalFromStrings("Class", cells));
  return Dataset(std::move(cols), "Class");
}

std::string dataPath(const std::string& file) { return std::string(FSEL_TEST_DATA_DIR) + "/" + file; }

Dataset iris() { return loadCsv(dataPath("iris.csv"), "Species"); }

Dataset wine() { return loadCsv(dataPath("wine.csv"), "V14", {{"V14", ColumnType::Categorical}}); }

}  // namespace fsel::fixtures
