#pragma once

#include "wdne/dataset.hpp"
#include "wdne/mlp.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace wdne {

inline constexpr std::size_t kCommitteeSize = 5;

/// Five independently seeded networks combined by majority vote.
struct Committee {
  std::vector<MlpModel> members; // exactly kCommitteeSize
  std::size_t class_count = 0;
};

/// Trains the five members with seeds mix(round_seed, member_index).
Committee train_committee(const DataTable& train_set, const DataTable& validation,
                          const MlpConfig& base_config, std::uint64_t round_seed);

/// One predicted class per member.
std::vector<int> member_votes(const Committee& committee, std::span<const double> x);

/// Plurality class; ties go to the lowest class index.
int vote(const Committee& committee, std::span<const double> x);

/// Vote entropy normalized to [0, 1]; 0 means unanimity.
double disagreement(const Committee& committee, std::span<const double> x);

/// Fraction of test rows where the vote matches the label.
double accuracy(const Committee& committee, const DataTable& test);

} // namespace wdne
