#pragma once

#include "wdne/matrix.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace wdne {

/// Feature matrix with integer class labels. Row ids are stable across
/// subsetting so splits can be tracked back to the loaded file.
struct DataTable {
  Matrix features;
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<int> ids;

  std::size_t n() const { return features.rows(); }
  std::size_t dim() const { return features.cols(); }
  std::size_t class_count() const { return class_names.size(); }

  /// New table containing the rows with the given ids, in the given order.
  DataTable subset(const std::vector<int>& keep_ids) const;

  /// Replaces features (e.g. with a transformed matrix of different width).
  DataTable with_features(Matrix transformed) const;
};

struct ClassSpec {
  std::string value; // token as it appears in the label column
  std::string name;
};

struct DatasetSchema {
  std::string name;
  std::string delimiter = ",";   // single character, or "whitespace"
  int label_column = -1;         // -1 means last column
  std::vector<ClassSpec> classes;
  bool drop_unlisted_labels = false;
  std::string notes;
};

DatasetSchema load_schema(const std::filesystem::path& path);

/// Parses a delimited numeric file per the schema. Class indices follow
/// schema order, not data order.
DataTable load_csv(const std::filesystem::path& path, const DatasetSchema& schema);

/// Canonical re-emission: comma-delimited, features at 12 significant
/// digits, class name last.
void write_csv(const DataTable& table, const std::filesystem::path& path);

/// One of the ten rotations: fold i validates, fold (i+1) mod 10 tests,
/// the rest trains.
struct FoldSplit {
  int fold_index = 0;
  std::vector<int> train_ids;
  std::vector<int> validation_ids;
  std::vector<int> test_ids;
};

/// Shuffles once by seed, deals rows class-by-class round-robin into ten
/// stratified folds, and returns the ten rotations.
std::vector<FoldSplit> ten_fold_splits(const DataTable& table, std::uint64_t seed);

/// Draws exactly pos_count ids of class 0 and neg_count of class 1,
/// uniformly without replacement. Returns (labeled ids, remainder ids).
std::pair<std::vector<int>, std::vector<int>> stratified_initial(
    const DataTable& table, std::size_t pos_count, std::size_t neg_count,
    std::uint64_t seed);

} // namespace wdne
