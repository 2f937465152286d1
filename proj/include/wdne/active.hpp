#pragma once

#include "wdne/committee.hpp"
#include "wdne/dataset.hpp"
#include "wdne/mlp.hpp"
#include "wdne/normalize.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wdne {

struct ActiveConfig {
  std::size_t init_pos = 6;
  std::size_t init_neg = 6;
  std::size_t pool_size = 100;
  std::size_t beta = 16;  // candidate shortlist per round
  std::size_t alpha = 4;  // acquired per round
  std::size_t rounds = 22;
  std::uint64_t seed = 0;

  void validate() const;
};

struct CurvePoint {
  std::size_t labeled_count = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
};

struct LearningCurve {
  std::string dataset;
  std::string representation;
  std::vector<CurvePoint> points;
};

struct RoundLog {
  std::vector<int> candidate_ids;
  std::vector<int> acquired_ids;
};

struct ActiveRunResult {
  LearningCurve curve;
  std::vector<int> initial_labeled_ids;
  std::vector<int> pool_ids;
  Vector eigenvalues; // empty under raw mode
  std::vector<RoundLog> round_log;
  bool truncated = false;
  std::string warning;
};

struct FoldTables {
  DataTable train; // the fold's training partition (labeled pool source)
  DataTable validation;
  DataTable test;
};

/// Indices of the beta largest scores; ties broken by ascending index.
std::vector<std::size_t> select_candidates(const std::vector<double>& scores,
                                           std::size_t beta);

/// Pool-based active learning on one fold: round 0 trains on the
/// stratified initial set; each round shortlists the beta most
/// disagreed-upon pool examples, acquires alpha of them at random,
/// and retrains the committee from fresh seeds.
ActiveRunResult run_active(const FoldTables& fold, NormalizationMode mode,
                           const ActiveConfig& active_cfg, const MlpConfig& mlp_cfg,
                           std::optional<std::size_t> retained = std::nullopt,
                           const std::string& dataset_tag = "");

} // namespace wdne
