#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rt4sc/attacks.hpp"
#include "rt4sc/bench.hpp"
#include "rt4sc/factorization.hpp"
#include "rt4sc/graph.hpp"

namespace rt4sc {

inline constexpr const char* kVersion = "rt4sc 0.1.0";

/// Full experiment description: input graph (file paths or the planted
/// benchmark), per-stage knobs, and the family x attack grid to evaluate.
struct ExperimentConfig {
  std::string edges_path;  // empty -> generate the planted benchmark
  std::string docs_path;
  PlantedSpec planted;

  int text_t = 80;
  FactorizationConfig fact;
  int snn_layers = 2;
  int persistence_radius = 2;

  int decoder_steps = 400;
  double decoder_lr = 0.5;
  bool decoder_known_x = true;  // false: adversary falls back to identity features
  int classifier_epochs = 300;
  double classifier_lr = 0.5;

  std::vector<std::string> families{"MF", "MF+TOPO", "SNN"};
  std::vector<std::string> attacks{"distance", "decoder"};
  std::uint64_t seed = 0;
  int threads = 1;
};

/// One family x attack cell.
struct ReportRow {
  std::string family;
  std::string attack;
  double auc = 0.0;
  std::optional<double> precision_at_k;  // edge attacks only
  std::optional<int> k;
  std::optional<double> accuracy;        // membership only
  std::vector<double> loss_trace;        // decoder only
};

struct ComparisonReport {
  std::vector<ReportRow> rows;  // exhaustive over the selected grid
  std::uint64_t seed = 0;
  std::string version = kVersion;
  int n = 0;
};

/// All unordered candidate pairs when n <= 300; otherwise every true edge
/// plus an equal number of seeded random non-edges.
std::vector<std::array<int, 2>> candidate_pairs(const TextAttributedGraph& g,
                                                std::uint64_t seed);

/// Builds T and M, derives the representation families (MF, MF+TOPO, SNN),
/// and runs every selected attack against every selected family.
ComparisonReport run_pipeline(const ExperimentConfig& cfg);

std::string report_to_json(const ComparisonReport& report);
std::string report_to_csv(const ComparisonReport& report);

/// Aggregate of repeated runs: per-cell mean and standard deviation.
struct BenchSummary {
  std::vector<ComparisonReport> runs;
  std::uint64_t base_seed = 0;
  int num_seeds = 0;
};

BenchSummary run_bench(const ExperimentConfig& cfg, int num_seeds);
std::string bench_to_json(const BenchSummary& summary);
std::string bench_to_csv(const BenchSummary& summary);

/// Flat key=value config file with [section] headers named after the modules
/// (graph-core, text-features, factorization, simplicial, persistence,
/// attacks, eval-cli). Unknown keys are an error.
ExperimentConfig parse_config_file(const std::string& path);
void apply_config_entry(ExperimentConfig& cfg, const std::string& section,
                        const std::string& key, const std::string& value);

}  // namespace rt4sc
