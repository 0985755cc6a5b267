#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fsel/feature_mask.hpp"

namespace fsel {

enum class TaskKind { Classification, Regression };

std::string_view toString(TaskKind task) noexcept;

struct CategoricalValues {
  std::vector<std::string> levels;
  std::vector<std::int32_t> codes;
};

struct NumericValues {
  std::vector<double> values;
};

class Column {
 public:
  Column(std::string name, CategoricalValues values);
  Column(std::string name, NumericValues values);

  static Column categorical(std::string name, std::vector<std::string> levels,
                            std::vector<std::int32_t> codes);
  // Levels in order of first appearance.
  static Column categoricalFromStrings(std::string name, const std::vector<std::string>& cells);
  static Column numeric(std::string name, std::vector<double> values);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept;
  bool isCategorical() const noexcept { return std::holds_alternative<CategoricalValues>(payload_); }
  bool isNumeric() const noexcept { return !isCategorical(); }

  // Throw InvalidArgument on the wrong payload.
  const CategoricalValues& asCategorical() const;
  const NumericValues& asNumeric() const;

  std::size_t levelCount() const { return asCategorical().levels.size(); }
  std::string cellText(std::size_t row) const;

 private:
  std::string name_;
  std::variant<CategoricalValues, NumericValues> payload_;
};

enum class ColumnType { Categorical, Numeric };
using TypeHints = std::map<std::string, ColumnType>;

// Immutable column store with a designated class column. Features are the
// non-class columns in column order; feature index f refers to the f-th of
// those.
class Dataset {
 public:
  Dataset(std::vector<Column> columns, const std::string& class_name);

  std::size_t rowCount() const noexcept { return n_rows_; }
  std::size_t featureCount() const noexcept { return feature_columns_.size(); }
  std::size_t columnCount() const noexcept { return columns_.size(); }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& feature(std::size_t f) const { return columns_.at(feature_columns_.at(f)); }
  const Column& classColumn() const noexcept { return columns_[class_index_]; }
  const std::string& className() const noexcept { return classColumn().name(); }
  std::size_t classColumnIndex() const noexcept { return class_index_; }

  std::vector<std::string> featureNames() const;
  // Feature index by name; nullopt for unknown names and for the class.
  std::optional<std::size_t> featureIndex(const std::string& name) const;

  TaskKind task() const noexcept;

  // Returns a copy with the feature columns replaced (same order, same names
  // expected) and the class column untouched.
  Dataset withFeatures(std::vector<Column> features) const;

 private:
  std::vector<Column> columns_;
  std::size_t class_index_ = 0;
  std::size_t n_rows_ = 0;
  std::vector<std::size_t> feature_columns_;
};

struct DiscretizationSpec {
  int bins = 10;
};

Dataset loadCsv(const std::filesystem::path& path, const std::string& class_name,
                const TypeHints& hints = {});
// Parses CSV text; `source` names the input in error messages.
Dataset parseCsv(const std::string& text, const std::string& class_name,
                 const TypeHints& hints = {}, const std::string& source = "<memory>");
std::string toCsv(const Dataset& d);
void writeCsv(const Dataset& d, const std::filesystem::path& path);

TaskKind inferTask(const Dataset& d) noexcept;

// Equal-width binning of every numeric feature. Intervals are right-closed,
// the first one closed on both ends.
Dataset discretize(const Dataset& d, const DiscretizationSpec& spec = {});
// Bin index of `value` for an equal-width grid over [lo, hi].
std::int32_t equalWidthBin(double value, double lo, double hi, int bins) noexcept;

// Centers and scales (population sd) each masked feature. Zero-variance
// features become all-zero.
Dataset standardize(const Dataset& d, const FeatureMask& features);

std::vector<std::string> maskToNames(const Dataset& d, const FeatureMask& m);
FeatureMask namesToMask(const Dataset& d, const std::vector<std::string>& names);

}  // namespace fsel
