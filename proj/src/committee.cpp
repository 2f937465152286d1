#include "wdne/committee.hpp"

#include "wdne/errors.hpp"
#include "wdne/rng.hpp"

#include <algorithm>
#include <cmath>

namespace wdne {

Committee train_committee(const DataTable& train_set, const DataTable& validation,
                          const MlpConfig& base_config, std::uint64_t round_seed) {
  Committee committee;
  committee.class_count = base_config.outputs;
  committee.members.reserve(kCommitteeSize);
  for (std::size_t i = 0; i < kCommitteeSize; ++i) {
    MlpConfig cfg = base_config;
    cfg.seed = rng::mix(round_seed, i);
    TrainResult trained = train(init(cfg), train_set, validation, cfg);
    committee.members.push_back(std::move(trained.model));
  }
  return committee;
}

std::vector<int> member_votes(const Committee& committee, std::span<const double> x) {
  std::vector<int> votes;
  votes.reserve(committee.members.size());
  for (const MlpModel& m : committee.members) votes.push_back(predict(m, x));
  return votes;
}

int vote(const Committee& committee, std::span<const double> x) {
  std::vector<std::size_t> counts(committee.class_count, 0);
  for (int v : member_votes(committee, x)) ++counts[static_cast<std::size_t>(v)];
  return static_cast<int>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
}

double disagreement(const Committee& committee, std::span<const double> x) {
  std::vector<std::size_t> counts(committee.class_count, 0);
  const std::vector<int> votes = member_votes(committee, x);
  for (int v : votes) ++counts[static_cast<std::size_t>(v)];

  const double total = static_cast<double>(votes.size());
  double entropy = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    entropy -= p * std::log(p);
  }
  const double scale =
      std::log(static_cast<double>(std::min(votes.size(),
                                            committee.class_count)));
  return scale > 0.0 ? entropy / scale : 0.0;
}

double accuracy(const Committee& committee, const DataTable& test) {
  if (test.n() == 0) throw ConfigError("accuracy over an empty test set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.n(); ++i)
    if (vote(committee, test.features.row(i)) == test.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(test.n());
}

} // namespace wdne
