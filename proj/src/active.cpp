#include "wdne/active.hpp"

#include "wdne/errors.hpp"
#include "wdne/rng.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace wdne {

void ActiveConfig::validate() const {
  if (init_pos < 1 || init_neg < 1)
    throw ConfigError("initial labeled counts must each be >= 1");
  if (alpha < 1 || beta < 1) throw ConfigError("alpha and beta must be >= 1");
  if (!(alpha <= beta && beta <= pool_size))
    throw ConfigError("need alpha <= beta <= pool_size, got alpha=" +
                      std::to_string(alpha) + " beta=" + std::to_string(beta) +
                      " pool_size=" + std::to_string(pool_size));
  if (rounds < 1) throw ConfigError("rounds must be >= 1");
}

std::vector<std::size_t> select_candidates(const std::vector<double>& scores,
                                           std::size_t beta) {
  if (beta > scores.size())
    throw ConfigError("beta exceeds the number of scored examples");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  order.resize(beta);
  std::sort(order.begin(), order.end());
  return order;
}

ActiveRunResult run_active(const FoldTables& fold, NormalizationMode mode,
                           const ActiveConfig& active_cfg, const MlpConfig& mlp_cfg,
                           std::optional<std::size_t> retained,
                           const std::string& dataset_tag) {
  active_cfg.validate();
  if (fold.train.n() < active_cfg.init_pos + active_cfg.init_neg + active_cfg.pool_size)
    throw ConfigError("training partition too small for the initial draw plus pool");

  rng::Engine g(active_cfg.seed);

  auto [labeled_ids, remainder_ids] = stratified_initial(
      fold.train, active_cfg.init_pos, active_cfg.init_neg, g());
  std::vector<int> pool_ids =
      rng::sample_without_replacement(remainder_ids, active_cfg.pool_size, g);

  NormalizationModel norm = fit(fold.train.features, mode, retained);
  const DataTable train_t =
      fold.train.with_features(transform_table(norm, fold.train.features));
  const DataTable val_t =
      fold.validation.with_features(transform_table(norm, fold.validation.features));
  const DataTable test_t =
      fold.test.with_features(transform_table(norm, fold.test.features));

  MlpConfig net_cfg = mlp_cfg;
  net_cfg.inputs = norm.retained;
  net_cfg.outputs = fold.train.class_count();

  ActiveRunResult result;
  result.curve.dataset = dataset_tag;
  result.curve.representation = to_string(mode);
  result.initial_labeled_ids = labeled_ids;
  result.pool_ids = pool_ids;
  result.eigenvalues = norm.eigenvalues;

  const std::uint64_t run_root = rng::scramble(active_cfg.seed);
  std::vector<int> labeled = labeled_ids;
  std::vector<int> pool = pool_ids;

  Committee committee =
      train_committee(train_t.subset(labeled), val_t, net_cfg, rng::mix(run_root, 0));
  result.curve.points.push_back({labeled.size(), accuracy(committee, test_t), 0.0});

  for (std::size_t round = 1; round <= active_cfg.rounds; ++round) {
    if (pool.empty()) {
      result.truncated = true;
      result.warning = "pool exhausted after " + std::to_string(round - 1) +
                       " of " + std::to_string(active_cfg.rounds) + " rounds";
      break;
    }

    const DataTable pool_t = train_t.subset(pool);
    std::vector<double> scores(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
      scores[i] = disagreement(committee, pool_t.features.row(i));

    const std::size_t shortlist = std::min(active_cfg.beta, pool.size());
    std::vector<std::size_t> candidates = select_candidates(scores, shortlist);
    const std::size_t take = std::min(active_cfg.alpha, candidates.size());
    std::vector<std::size_t> picked =
        rng::sample_without_replacement(candidates, take, g);
    std::sort(picked.begin(), picked.end());

    RoundLog log;
    for (std::size_t pos : candidates) log.candidate_ids.push_back(pool[pos]);
    for (std::size_t pos : picked) log.acquired_ids.push_back(pool[pos]);
    result.round_log.push_back(std::move(log));

    for (auto it = picked.rbegin(); it != picked.rend(); ++it) {
      labeled.push_back(pool[*it]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    std::sort(labeled.begin(), labeled.end());

    committee = train_committee(train_t.subset(labeled), val_t, net_cfg,
                                rng::mix(run_root, round));
    result.curve.points.push_back({labeled.size(), accuracy(committee, test_t), 0.0});
  }

  return result;
}

} // namespace wdne
