#include "wdne/experiment.hpp"

#include "wdne/errors.hpp"
#include "wdne/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <thread>
#include <tuple>

namespace wdne {

namespace {

constexpr std::uint64_t kFoldSalt = 0xF01D5;
constexpr std::uint64_t kRunSalt = 0xAC71FE;

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <typename E>
[[noreturn]] void rethrow_with_context(const E& e, const std::string& context) {
  throw E(context + ": " + e.what());
}

} // namespace

DatasetPreset preset_for(const std::string& tag) {
  if (tag == "heart")
    return {"heart", "heart.data", "heart.schema.json",
            ActiveConfig{6, 6, 100, 16, 4, 22, 0}};
  if (tag == "spam")
    return {"spam", "spambase.data", "spambase.schema.json",
            ActiveConfig{6, 9, 240, 32, 10, 24, 0}};
  if (tag == "waveform")
    return {"waveform", "waveform.data", "waveform.schema.json",
            ActiveConfig{6, 6, 200, 32, 8, 24, 0}};
  throw ConfigError("unknown dataset tag '" + tag +
                    "' (expected heart, spam or waveform)");
}

void ExperimentConfig::validate() const {
  if (modes.empty()) throw ConfigError("at least one representation required");
  if (seeds.empty()) throw ConfigError("at least one repetition seed required");
  active.validate();
  if (data_file.empty() || schema_file.empty())
    throw ConfigError("data and schema file paths must be set");
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const DatasetSchema schema = load_schema(config.schema_file);
  const DataTable table = load_csv(config.data_file, schema);

  // One fold partition per repetition seed; splits and pools are shared
  // across representations so runs stay paired.
  struct FoldContext {
    std::uint64_t seed;
    std::size_t fold;
    FoldTables tables;
    std::uint64_t run_seed;
  };
  std::vector<FoldContext> contexts;
  for (std::uint64_t seed : config.seeds) {
    const auto splits = ten_fold_splits(table, rng::mix(seed, kFoldSalt));
    for (const FoldSplit& split : splits) {
      FoldContext ctx;
      ctx.seed = seed;
      ctx.fold = static_cast<std::size_t>(split.fold_index);
      ctx.tables = {table.subset(split.train_ids), table.subset(split.validation_ids),
                    table.subset(split.test_ids)};
      ctx.run_seed = rng::mix(rng::mix(seed, kRunSalt), ctx.fold);
      contexts.push_back(std::move(ctx));
    }
  }

  // Task grid ordered by the merge sort key (representation, fold, seed).
  struct Task {
    std::size_t mode_idx;
    std::size_t ctx_idx;
  };
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < config.modes.size(); ++m) {
    for (std::size_t f = 0; f < 10; ++f)
      for (std::size_t s = 0; s < config.seeds.size(); ++s)
        tasks.push_back({m, s * 10 + f});
  }

  std::vector<ActiveRunResult> results(tasks.size());
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    const FoldContext& ctx = contexts[task.ctx_idx];
    ActiveConfig run_cfg = config.active;
    run_cfg.seed = ctx.run_seed;
    const NormalizationMode mode = config.modes[task.mode_idx];
    try {
      results[i] = run_active(ctx.tables, mode, run_cfg, config.mlp,
                              config.retained, config.dataset_tag);
    } catch (const ConfigError& e) {
      rethrow_with_context(e, "run(" + config.dataset_tag + " " + to_string(mode) +
                                  " fold=" + std::to_string(ctx.fold) +
                                  " seed=" + std::to_string(ctx.seed) + ")");
    } catch (const DataError& e) {
      rethrow_with_context(e, "run(" + config.dataset_tag + " " + to_string(mode) +
                                  " fold=" + std::to_string(ctx.fold) +
                                  " seed=" + std::to_string(ctx.seed) + ")");
    } catch (const NumericError& e) {
      rethrow_with_context(e, "run(" + config.dataset_tag + " " + to_string(mode) +
                                  " fold=" + std::to_string(ctx.fold) +
                                  " seed=" + std::to_string(ctx.seed) + ")");
    }
  });

  ExperimentReport report;
  report.config = config;

  // Paired-run fairness: all representations of one (seed, fold) must have
  // drawn identical initial labeled ids and pool ids.
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const ActiveRunResult* first = nullptr;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].ctx_idx != c) continue;
      if (!first) {
        first = &results[i];
        continue;
      }
      if (results[i].initial_labeled_ids != first->initial_labeled_ids ||
          results[i].pool_ids != first->pool_ids)
        throw NumericError("paired-run invariant violated: representations of "
                           "one fold drew different initial/pool ids");
    }
  }

  for (std::size_t c = 0; c < contexts.size(); ++c) {
    const FoldContext& ctx = contexts[c];
    FoldMeta meta;
    meta.seed = ctx.seed;
    meta.fold = ctx.fold;
    meta.validation_ids = ctx.tables.validation.ids;
    meta.test_ids = ctx.tables.test.ids;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].ctx_idx != c) continue;
      meta.initial_labeled_ids = results[i].initial_labeled_ids;
      meta.pool_ids = results[i].pool_ids;
      if (!results[i].eigenvalues.empty()) meta.eigenvalues = results[i].eigenvalues;
    }
    report.folds.push_back(std::move(meta));
  }
  std::sort(report.folds.begin(), report.folds.end(),
            [](const FoldMeta& a, const FoldMeta& b) {
              return std::tie(a.seed, a.fold) < std::tie(b.seed, b.fold);
            });

  std::size_t common_points = SIZE_MAX;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const FoldContext& ctx = contexts[tasks[i].ctx_idx];
    RunRecord rec;
    rec.representation = to_string(config.modes[tasks[i].mode_idx]);
    rec.fold = ctx.fold;
    rec.seed = ctx.seed;
    rec.curve = results[i].curve;
    rec.truncated = results[i].truncated;
    if (results[i].truncated)
      report.warnings.push_back(rec.representation + " fold=" +
                                std::to_string(rec.fold) + " seed=" +
                                std::to_string(rec.seed) + ": " + results[i].warning);
    common_points = std::min(common_points, rec.curve.points.size());
    report.runs.push_back(std::move(rec));
  }

  for (std::size_t m = 0; m < config.modes.size(); ++m) {
    AggregatedCurve agg;
    agg.representation = to_string(config.modes[m]);
    for (std::size_t p = 0; p < common_points; ++p) {
      std::vector<double> values;
      std::size_t labeled = 0;
      for (const RunRecord& rec : report.runs) {
        if (rec.representation != agg.representation) continue;
        values.push_back(rec.curve.points[p].accuracy_mean);
        labeled = rec.curve.points[p].labeled_count;
      }
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size());
      agg.points.push_back({labeled, mean, std::sqrt(var)});
    }
    report.curves.push_back(std::move(agg));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void emit_csv(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec && !std::filesystem::is_directory(dir))
    throw DataError("cannot create output directory " + dir.string());

  {
    std::ofstream out(dir / "curves.csv", std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir / "curves.csv").string());
    out << "dataset,representation,fold,seed,round,labeled_count,accuracy\n";
    for (const RunRecord& rec : report.runs) {
      for (std::size_t p = 0; p < rec.curve.points.size(); ++p) {
        const CurvePoint& pt = rec.curve.points[p];
        out << report.config.dataset_tag << ',' << rec.representation << ','
            << rec.fold << ',' << rec.seed << ',' << p << ',' << pt.labeled_count
            << ',' << format_double(pt.accuracy_mean) << '\n';
      }
    }
  }

  {
    std::ofstream out(dir / "summary.csv", std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir / "summary.csv").string());
    out << "dataset,representation,labeled_count,accuracy_mean,accuracy_std\n";
    for (const AggregatedCurve& curve : report.curves) {
      if (curve.points.empty()) continue;
      const CurvePoint& last = curve.points.back();
      out << report.config.dataset_tag << ',' << curve.representation << ','
          << last.labeled_count << ',' << format_double(last.accuracy_mean) << ','
          << format_double(last.accuracy_std) << '\n';
    }
  }

  {
    nlohmann::json j;
    j["dataset"] = report.config.dataset_tag;
    j["data_file"] = report.config.data_file.string();
    j["schema_file"] = report.config.schema_file.string();

    nlohmann::json cfg;
    std::vector<std::string> mode_names;
    for (NormalizationMode m : report.config.modes) mode_names.push_back(to_string(m));
    cfg["modes"] = mode_names;
    cfg["seeds"] = report.config.seeds;
    cfg["jobs"] = report.config.jobs;
    if (report.config.retained) cfg["retained"] = *report.config.retained;
    cfg["active"] = {{"init_pos", report.config.active.init_pos},
                     {"init_neg", report.config.active.init_neg},
                     {"pool_size", report.config.active.pool_size},
                     {"beta", report.config.active.beta},
                     {"alpha", report.config.active.alpha},
                     {"rounds", report.config.active.rounds}};
    cfg["mlp"] = {{"size_offset", report.config.mlp.size_offset},
                  {"learning_rate", report.config.mlp.learning_rate},
                  {"max_epochs", report.config.mlp.max_epochs},
                  {"patience", report.config.mlp.patience}};
    j["config"] = cfg;

    nlohmann::json folds = nlohmann::json::array();
    for (const FoldMeta& meta : report.folds) {
      nlohmann::json f;
      f["seed"] = meta.seed;
      f["fold"] = meta.fold;
      f["validation_ids"] = meta.validation_ids;
      f["test_ids"] = meta.test_ids;
      f["initial_labeled_ids"] = meta.initial_labeled_ids;
      f["pool_ids"] = meta.pool_ids;
      f["eigenvalues"] = meta.eigenvalues;
      folds.push_back(std::move(f));
    }
    j["folds"] = folds;
    j["warnings"] = report.warnings;
    j["wall_seconds"] = report.wall_seconds;

    std::ofstream out(dir / "meta.json", std::ios::trunc);
    if (!out) throw DataError("cannot write " + (dir / "meta.json").string());
    out << j.dump(2) << '\n';
  }
}

} // namespace wdne
