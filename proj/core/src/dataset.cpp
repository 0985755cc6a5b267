#include "fsel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fsel/error.hpp"

namespace fsel {

std::string_view toString(TaskKind task) noexcept {
  return task == TaskKind::Classification ? "classification" : "regression";
}

namespace {

std::string formatNumber(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<double> parseNumber(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

// RFC 4180 records: quoted fields, doubled quotes, CRLF or LF line ends.
std::vector<std::vector<std::string>> splitRecords(const std::string& text,
                                                   const std::string& source) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A blank line yields a single empty field; skip it.
    if (!(record.size() == 1 && record[0].empty())) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // dropped; the following \n ends the record
    } else if (c == '\n') {
      end_record();
      ++line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::Parse, source + ": unterminated quoted field near line " +
                                      std::to_string(line));
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

bool needsQuoting(const std::string& s) {
  if (s.empty()) return false;
  if (s.front() == ' ' || s.back() == ' ') return true;
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quoteField(const std::string& s) {
  if (!needsQuoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Column

Column::Column(std::string name, CategoricalValues values)
    : name_(std::move(name)), payload_(std::move(values)) {
  const auto& cat = std::get<CategoricalValues>(payload_);
  if (cat.levels.empty()) {
    throw Error(ErrorCode::InvalidArgument, "categorical column '" + name_ + "' has no levels");
  }
  for (auto code : cat.codes) {
    if (code < 0 || static_cast<std::size_t>(code) >= cat.levels.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "categorical column '" + name_ + "' has a code outside its levels");
    }
  }
}

Column::Column(std::string name, NumericValues values)
    : name_(std::move(name)), payload_(std::move(values)) {
  for (double v : std::get<NumericValues>(payload_).values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "numeric column '" + name_ + "' contains a non-finite value");
    }
  }
}

Column Column::categorical(std::string name, std::vector<std::string> levels,
                           std::vector<std::int32_t> codes) {
  return Column(std::move(name), CategoricalValues{std::move(levels), std::move(codes)});
}

Column Column::categoricalFromStrings(std::string name, const std::vector<std::string>& cells) {
  CategoricalValues cat;
  std::unordered_map<std::string, std::int32_t> index;
  cat.codes.reserve(cells.size());
  for (const auto& cell : cells) {
    auto [it, inserted] = index.try_emplace(cell, static_cast<std::int32_t>(cat.levels.size()));
    if (inserted) cat.levels.push_back(cell);
    cat.codes.push_back(it->second);
  }
  return Column(std::move(name), std::move(cat));
}

Column Column::numeric(std::string name, std::vector<double> values) {
  return Column(std::move(name), NumericValues{std::move(values)});
}

std::size_t Column::size() const noexcept {
  return std::visit(
      [](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, CategoricalValues>) {
          return p.codes.size();
        } else {
          return p.values.size();
        }
      },
      payload_);
}

const CategoricalValues& Column::asCategorical() const {
  if (auto* p = std::get_if<CategoricalValues>(&payload_)) return *p;
  throw Error(ErrorCode::InvalidArgument, "column '" + name_ + "' is not categorical");
}

const NumericValues& Column::asNumeric() const {
  if (auto* p = std::get_if<NumericValues>(&payload_)) return *p;
  throw Error(ErrorCode::InvalidArgument, "column '" + name_ + "' is not numeric");
}

std::string Column::cellText(std::size_t row) const {
  if (isCategorical()) {
    const auto& cat = asCategorical();
    return cat.levels[static_cast<std::size_t>(cat.codes.at(row))];
  }
  return formatNumber(asNumeric().values.at(row));
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::vector<Column> columns, const std::string& class_name)
    : columns_(std::move(columns)) {
  if (columns_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "a dataset needs a class column and at least one feature");
  }
  std::unordered_set<std::string> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name()).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + c.name() + "'");
    }
  }
  auto it = std::find_if(columns_.begin(), columns_.end(),
                         [&](const Column& c) { return c.name() == class_name; });
  if (it == columns_.end()) {
    throw Error(ErrorCode::MissingColumn, "class column '" + class_name + "' not found");
  }
  class_index_ = static_cast<std::size_t>(it - columns_.begin());
  n_rows_ = columns_.front().size();
  if (n_rows_ == 0) throw Error(ErrorCode::InvalidArgument, "dataset has no rows");
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].size() != n_rows_) {
      throw Error(ErrorCode::InvalidArgument,
                  "column '" + columns_[i].name() + "' has " + std::to_string(columns_[i].size()) +
                      " values, expected " + std::to_string(n_rows_));
    }
    if (i != class_index_) feature_columns_.push_back(i);
  }
}

std::vector<std::string> Dataset::featureNames() const {
  std::vector<std::string> names;
  names.reserve(feature_columns_.size());
  for (auto c : feature_columns_) names.push_back(columns_[c].name());
  return names;
}

std::optional<std::size_t> Dataset::featureIndex(const std::string& name) const {
  for (std::size_t f = 0; f < feature_columns_.size(); ++f) {
    if (columns_[feature_columns_[f]].name() == name) return f;
  }
  return std::nullopt;
}

TaskKind Dataset::task() const noexcept {
  return classColumn().isCategorical() ? TaskKind::Classification : TaskKind::Regression;
}

Dataset Dataset::withFeatures(std::vector<Column> features) const {
  if (features.size() != feature_columns_.size()) {
    throw Error(ErrorCode::WidthMismatch, "replacement feature count does not match dataset");
  }
  std::vector<Column> cols = columns_;
  for (std::size_t f = 0; f < features.size(); ++f) {
    cols[feature_columns_[f]] = std::move(features[f]);
  }
  return Dataset(std::move(cols), className());
}

// ---------------------------------------------------------------------------
// CSV

Dataset parseCsv(const std::string& text, const std::string& class_name, const TypeHints& hints,
                 const std::string& source) {
  auto records = splitRecords(text, source);
  if (records.empty()) throw Error(ErrorCode::Parse, source + ": missing header row");
  const auto& header = records.front();
  const std::size_t width = header.size();
  if (std::find(header.begin(), header.end(), class_name) == header.end()) {
    throw Error(ErrorCode::MissingColumn,
                source + ": class column '" + class_name + "' not in header");
  }
  for (const auto& [name, type] : hints) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw Error(ErrorCode::MissingColumn, source + ": type hint names unknown column '" + name + "'");
    }
  }
  if (records.size() < 2) throw Error(ErrorCode::Parse, source + ": no data rows");

  std::vector<std::vector<std::string>> cells(width);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorCode::Parse, source + ": row " + std::to_string(r) + " has " +
                                        std::to_string(records[r].size()) + " fields, header has " +
                                        std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (records[r][c].empty()) {
        throw Error(ErrorCode::Parse, source + ": empty cell at row " + std::to_string(r) +
                                          ", column '" + header[c] + "'");
      }
      cells[c].push_back(std::move(records[r][c]));
    }
  }

  std::vector<Column> columns;
  columns.reserve(width);
  for (std::size_t c = 0; c < width; ++c) {
    std::optional<ColumnType> hint;
    if (auto it = hints.find(header[c]); it != hints.end()) hint = it->second;

    std::vector<double> numbers;
    bool all_numeric = true;
    if (hint != ColumnType::Categorical) {
      numbers.reserve(cells[c].size());
      for (std::size_t r = 0; r < cells[c].size(); ++r) {
        auto v = parseNumber(cells[c][r]);
        if (!v) {
          if (hint == ColumnType::Numeric) {
            throw Error(ErrorCode::Parse, source + ": non-numeric cell '" + cells[c][r] +
                                              "' at row " + std::to_string(r + 1) +
                                              " in numeric column '" + header[c] + "'");
          }
          all_numeric = false;
          break;
        }
        numbers.push_back(*v);
      }
    } else {
      all_numeric = false;
    }
    if (all_numeric) {
      columns.push_back(Column::numeric(header[c], std::move(numbers)));
    } else {
      columns.push_back(Column::categoricalFromStrings(header[c], cells[c]));
    }
  }
  return Dataset(std::move(columns), class_name);
}

Dataset loadCsv(const std::filesystem::path& path, const std::string& class_name,
                const TypeHints& hints) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseCsv(buf.str(), class_name, hints, path.string());
}

std::string toCsv(const Dataset& d) {
  std::string out;
  const auto& cols = d.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (c) out.push_back(',');
    out += quoteField(cols[c].name());
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < d.rowCount(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out.push_back(',');
      out += quoteField(cols[c].cellText(r));
    }
    out.push_back('\n');
  }
  return out;
}

void writeCsv(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << toCsv(d);
}

// ---------------------------------------------------------------------------
// Transformations

TaskKind inferTask(const Dataset& d) noexcept { return d.task(); }

std::int32_t equalWidthBin(double value, double lo, double hi, int bins) noexcept {
  if (!(hi > lo)) return 0;
  const double width = (hi - lo) / bins;
  const double pos = std::ceil((value - lo) / width) - 1.0;
  if (pos <= 0.0) return 0;
  if (pos >= bins - 1) return bins - 1;
  return static_cast<std::int32_t>(pos);
}

Dataset discretize(const Dataset& d, const DiscretizationSpec& spec) {
  if (spec.bins < 2) {
    throw Error(ErrorCode::InvalidArgument, "discretization needs at least 2 bins");
  }
  std::vector<Column> features;
  features.reserve(d.featureCount());
  bool changed = false;
  for (std::size_t f = 0; f < d.featureCount(); ++f) {
    const Column& col = d.feature(f);
    if (col.isCategorical()) {
      features.push_back(col);
      continue;
    }
    changed = true;
    const auto& xs = col.asNumeric().values;
    const auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
      features.push_back(Column::categorical(col.name(), {"[" + formatNumber(lo) + "," + formatNumber(hi) + "]"},
                                             std::vector<std::int32_t>(xs.size(), 0)));
      continue;
    }
    std::vector<std::string> levels;
    const double width = (hi - lo) / spec.bins;
    for (int b = 0; b < spec.bins; ++b) {
      const double a = lo + width * b;
      const double z = b + 1 == spec.bins ? hi : lo + width * (b + 1);
      levels.push_back((b == 0 ? "[" : "(") + formatNumber(a) + "," + formatNumber(z) + "]");
    }
    std::vector<std::int32_t> codes;
    codes.reserve(xs.size());
    for (double x : xs) codes.push_back(equalWidthBin(x, lo, hi, spec.bins));
    features.push_back(Column::categorical(col.name(), std::move(levels), std::move(codes)));
  }
  if (!changed) return d;
  return d.withFeatures(std::move(features));
}

Dataset standardize(const Dataset& d, const FeatureMask& features) {
  requireWidth(features, d.featureCount());
  std::vector<Column> out;
  out.reserve(d.featureCount());
  for (std::size_t f = 0; f < d.featureCount(); ++f) {
    const Column& col = d.feature(f);
    if (!features.test(f)) {
      out.push_back(col);
      continue;
    }
    if (!col.isNumeric()) {
      throw Error(ErrorCode::InvalidArgument,
                  "cannot standardize categorical feature '" + col.name() + "'");
    }
    const auto& xs = col.asNumeric().values;
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    std::vector<double> ys(xs.size(), 0.0);
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*hi > *lo && sd > 0.0) {
      for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = (xs[i] - mean) / sd;
    }
    out.push_back(Column::numeric(col.name(), std::move(ys)));
  }
  return d.withFeatures(std::move(out));
}

std::vector<std::string> maskToNames(const Dataset& d, const FeatureMask& m) {
  requireWidth(m, d.featureCount());
  std::vector<std::string> names;
  for (auto f : m.indices()) names.push_back(d.feature(f).name());
  return names;
}

FeatureMask namesToMask(const Dataset& d, const std::vector<std::string>& names) {
  FeatureMask m(d.featureCount());
  for (const auto& name : names) {
    auto f = d.featureIndex(name);
    if (!f) throw Error(ErrorCode::MissingColumn, "unknown feature '" + name + "'");
    m.set(*f);
  }
  return m;
}

}  // namespace fsel
