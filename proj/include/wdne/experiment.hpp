#pragma once

#include "wdne/active.hpp"
#include "wdne/dataset.hpp"
#include "wdne/mlp.hpp"
#include "wdne/normalize.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wdne {

/// Per-dataset defaults: file names and the acquisition protocol.
struct DatasetPreset {
  std::string tag;
  std::string data_file;
  std::string schema_file;
  ActiveConfig active;
};

/// Presets for "heart", "spam" and "waveform".
DatasetPreset preset_for(const std::string& tag);

struct ExperimentConfig {
  std::string dataset_tag = "heart"; // heart | spam | waveform | custom
  std::filesystem::path data_file;
  std::filesystem::path schema_file;
  std::vector<NormalizationMode> modes = {
      NormalizationMode::Raw, NormalizationMode::PcaOnly,
      NormalizationMode::WdnePositive, NormalizationMode::WdneNegative};
  ActiveConfig active;
  MlpConfig mlp;
  std::vector<std::uint64_t> seeds = {1};
  std::optional<std::size_t> retained;
  std::size_t jobs = 1;

  void validate() const;
};

struct RunRecord {
  std::string representation;
  std::size_t fold = 0;
  std::uint64_t seed = 0;
  LearningCurve curve;
  bool truncated = false;
};

/// Split identity shared by all representations of one (seed, fold) run.
struct FoldMeta {
  std::uint64_t seed = 0;
  std::size_t fold = 0;
  std::vector<int> validation_ids;
  std::vector<int> test_ids;
  std::vector<int> initial_labeled_ids;
  std::vector<int> pool_ids;
  Vector eigenvalues; // fitted spectrum (empty if only raw mode ran)
};

struct AggregatedCurve {
  std::string representation;
  std::vector<CurvePoint> points; // mean/std over folds x seeds
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RunRecord> runs;           // ordered by (representation, fold, seed)
  std::vector<AggregatedCurve> curves;   // one per representation
  std::vector<FoldMeta> folds;           // ordered by (seed, fold)
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Runs modes x folds x seeds with identical splits, initial labeled ids
/// and pool membership across representations; only the transform differs.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes curves.csv, summary.csv and meta.json into dir (created on demand).
void emit_csv(const ExperimentReport& report, const std::filesystem::path& dir);

} // namespace wdne
