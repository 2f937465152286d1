#include "wdne/dataset.hpp"

#include "wdne/errors.hpp"
#include "wdne/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace wdne {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line, const std::string& delimiter) {
  std::vector<std::string> out;
  if (delimiter == "whitespace") {
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
  }
  const char delim = delimiter.empty() ? ',' : delimiter[0];
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_double(const std::string& tok, double& out) {
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e && !tok.empty();
}

// Matches a label token against a class value, textually or numerically.
bool label_matches(const std::string& token, const std::string& value) {
  if (token == value) return true;
  double a = 0.0, b = 0.0;
  return parse_double(token, a) && parse_double(value, b) && a == b;
}

} // namespace

DataTable DataTable::subset(const std::vector<int>& keep_ids) const {
  std::unordered_map<int, std::size_t> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);

  DataTable out;
  out.class_names = class_names;
  out.features = Matrix(keep_ids.size(), dim());
  out.labels.reserve(keep_ids.size());
  out.ids = keep_ids;
  for (std::size_t r = 0; r < keep_ids.size(); ++r) {
    auto it = index.find(keep_ids[r]);
    if (it == index.end())
      throw ConfigError("unknown row id " + std::to_string(keep_ids[r]));
    out.features.set_row(r, features.row(it->second));
    out.labels.push_back(labels[it->second]);
  }
  return out;
}

DataTable DataTable::with_features(Matrix transformed) const {
  if (transformed.rows() != n())
    throw ConfigError("replacement features must keep the row count");
  DataTable out = *this;
  out.features = std::move(transformed);
  return out;
}

DatasetSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("invalid schema JSON in " + path.string() + ": " + e.what());
  }

  DatasetSchema schema;
  schema.name = j.value("name", path.stem().string());
  schema.delimiter = j.value("delimiter", std::string(","));
  schema.label_column = j.value("label_column", -1);
  schema.drop_unlisted_labels = j.value("drop_unlisted_labels", false);
  schema.notes = j.value("notes", std::string());
  if (!j.contains("classes") || !j["classes"].is_array() || j["classes"].empty())
    throw DataError("schema " + path.string() + " must list classes");
  for (const auto& c : j["classes"]) {
    ClassSpec spec;
    if (c.is_object()) {
      spec.value = c.at("value").is_string() ? c.at("value").get<std::string>()
                                             : c.at("value").dump();
      spec.name = c.value("name", spec.value);
    } else {
      spec.value = c.is_string() ? c.get<std::string>() : c.dump();
      spec.name = spec.value;
    }
    schema.classes.push_back(std::move(spec));
  }
  return schema;
}

DataTable load_csv(const std::filesystem::path& path, const DatasetSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file " + path.string());

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<std::string> tokens = split_line(line, schema.delimiter);
    if (width == 0) {
      width = tokens.size();
      if (width < 2)
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": need at least one feature and a label column");
    } else if (tokens.size() != width) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(width) + " columns, got " +
                      std::to_string(tokens.size()));
    }

    const std::size_t label_col =
        schema.label_column < 0 ? width - 1 : static_cast<std::size_t>(schema.label_column);
    if (label_col >= width)
      throw DataError("schema label_column " + std::to_string(schema.label_column) +
                      " out of range for " + std::to_string(width) + " columns");

    int label = -1;
    for (std::size_t c = 0; c < schema.classes.size(); ++c)
      if (label_matches(tokens[label_col], schema.classes[c].value)) {
        label = static_cast<int>(c);
        break;
      }
    if (label < 0) {
      if (schema.drop_unlisted_labels) continue;
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": label '" + tokens[label_col] + "' not in schema");
    }

    std::vector<double> feats;
    feats.reserve(width - 1);
    for (std::size_t c = 0; c < width; ++c) {
      if (c == label_col) continue;
      double v = 0.0;
      if (!parse_double(tokens[c], v))
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": cannot parse '" + tokens[c] + "' in column " +
                        std::to_string(c + 1));
      if (!std::isfinite(v))
        throw DataError(path.string() + ":" + std::to_string(line_no) +
                        ": non-finite value in column " + std::to_string(c + 1));
      feats.push_back(v);
    }
    rows.push_back(std::move(feats));
    labels.push_back(label);
  }

  if (rows.empty()) throw DataError(path.string() + ": no data rows");

  DataTable table;
  table.features = Matrix(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) table.features.set_row(i, rows[i]);
  table.labels = std::move(labels);
  for (const auto& c : schema.classes) table.class_names.push_back(c.name);
  table.ids.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) table.ids[i] = static_cast<int>(i);
  return table;
}

void write_csv(const DataTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  char buf[64];
  for (std::size_t i = 0; i < table.n(); ++i) {
    for (std::size_t j = 0; j < table.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.12g", table.features(i, j));
      out << buf << ',';
    }
    out << table.class_names[static_cast<std::size_t>(table.labels[i])] << '\n';
  }
  if (!out) throw DataError("failed writing " + path.string());
}

std::vector<FoldSplit> ten_fold_splits(const DataTable& table, std::uint64_t seed) {
  constexpr std::size_t kFolds = 10;
  if (table.n() < kFolds)
    throw ConfigError("ten-fold split requires at least 10 rows, got " +
                      std::to_string(table.n()));

  // Class-grouped ids, each group shuffled once, then one continuous
  // round-robin deal: fold sizes differ by at most one and per-class
  // counts stay within one of proportional.
  rng::Engine g(seed);
  std::vector<std::vector<int>> by_class(table.class_count());
  for (std::size_t i = 0; i < table.n(); ++i)
    by_class[static_cast<std::size_t>(table.labels[i])].push_back(table.ids[i]);

  std::vector<std::vector<int>> folds(kFolds);
  std::size_t counter = 0;
  for (auto& group : by_class) {
    rng::shuffle(group, g);
    for (int id : group) folds[counter++ % kFolds].push_back(id);
  }

  std::vector<FoldSplit> splits;
  splits.reserve(kFolds);
  for (std::size_t i = 0; i < kFolds; ++i) {
    FoldSplit s;
    s.fold_index = static_cast<int>(i);
    s.validation_ids = folds[i];
    s.test_ids = folds[(i + 1) % kFolds];
    for (std::size_t f = 0; f < kFolds; ++f) {
      if (f == i || f == (i + 1) % kFolds) continue;
      s.train_ids.insert(s.train_ids.end(), folds[f].begin(), folds[f].end());
    }
    splits.push_back(std::move(s));
  }
  return splits;
}

std::pair<std::vector<int>, std::vector<int>> stratified_initial(
    const DataTable& table, std::size_t pos_count, std::size_t neg_count,
    std::uint64_t seed) {
  if (table.class_count() != 2)
    throw ConfigError("stratified initial draw requires a binary table");
  if (pos_count < 1 || neg_count < 1)
    throw ConfigError("initial labeled counts must each be >= 1");

  std::vector<int> pos, neg;
  for (std::size_t i = 0; i < table.n(); ++i)
    (table.labels[i] == 0 ? pos : neg).push_back(table.ids[i]);
  if (pos.size() < pos_count || neg.size() < neg_count)
    throw ConfigError("not enough class members for initial draw: have " +
                      std::to_string(pos.size()) + "/" + std::to_string(neg.size()) +
                      ", need " + std::to_string(pos_count) + "/" +
                      std::to_string(neg_count));

  rng::Engine g(seed);
  std::vector<int> labeled = rng::sample_without_replacement(pos, pos_count, g);
  std::vector<int> neg_taken = rng::sample_without_replacement(neg, neg_count, g);
  labeled.insert(labeled.end(), neg_taken.begin(), neg_taken.end());
  std::sort(labeled.begin(), labeled.end());

  std::vector<int> remainder;
  remainder.reserve(table.n() - labeled.size());
  for (int id : table.ids)
    if (!std::binary_search(labeled.begin(), labeled.end(), id))
      remainder.push_back(id);
  return {std::move(labeled), std::move(remainder)};
}

} // namespace wdne
