#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cfree/broken_cycles.hpp"
#include "cfree/edge_deletion.hpp"
#include "cfree/indep.hpp"
#include "cfree/model.hpp"
#include "cfree/params.hpp"
#include "cfree/pseudo.hpp"

namespace cfree {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
  int ell = 5;
  std::uint64_t n = 1000;
  Mode mode = Mode::operational;
  std::vector<Seed> seeds{1};
  ParamOverrides overrides;
  std::uint64_t trials = 1000;       // projection and expansion samples
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t search_budget = 200;  // perturbations in the independent-set search
  std::uint64_t walk_sets = 5;        // random J for walk comparisons
  std::uint64_t path_budget = 1'000'000'000;  // skip path searches estimated above this
  std::uint32_t alpha_cap = kAlphaExactCap;
  bool baseline = true;
  std::filesystem::path out;
};

// Keys: ell, n, mode, seed, seeds, p, r, k, delta, k_scale, trials, cap,
// search_budget, walk_sets, path_budget, alpha_cap, baseline, out. seeds
// takes "a,b,c" or "a..b". Throws ParseError / ParameterError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value, std::size_t line = 0);
ExperimentConfig config_from_key_value(std::string_view text);
Params params_for(const ExperimentConfig& config);

// Instance plus both deletion steps.
struct PipelineState {
  Instance instance;
  VertexDeletion vertex;
  Orderings orderings;
  EdgeDeletion edge;
};

PipelineState run_deletions(Instance instance, std::uint64_t cap);

Json to_json(const Params& params);
Json to_json(const RegimeDiagnostics& diagnostics);
Json to_json(const VerifierReport& report);
Json deletion_json(const DeletionReport& vertex, const EdgeDeletion& edge, std::uint32_t n);
Json spectral_json(const PipelineState& state, const ExperimentConfig& config, Seed seed);
Json independence_json(const PipelineState& state, const ExperimentConfig& config, Seed seed);
Json baseline_json(const ExperimentConfig& config, Seed seed);

struct RunReport {
  Seed seed = 0;
  bool ok = true;
  std::string error_stage;
  std::string error_message;
  Json json;

  // CSV columns; empty when the stage did not run.
  std::optional<std::uint64_t> vertices_surviving;
  std::optional<std::uint64_t> edges_deleted;
  std::optional<bool> event_a_passed;
  std::optional<double> mu;
  std::optional<double> M_norm;
  std::optional<std::uint64_t> walk_exact;
  std::optional<double> walk_bound;
  std::optional<std::uint64_t> best_indep;
  std::optional<std::uint64_t> baseline_best_indep;
};

// Deterministic in (config, seed) apart from the "timings" object. Stage
// errors are recorded under "error" and stop the run.
RunReport run_pipeline(const ExperimentConfig& config, Seed seed);

// Strips "timings" for comparisons.
Json without_timings(const Json& report);

std::string csv_header();
std::string csv_row(const RunReport& report);
// Rows of a CSV written by csv_header / csv_row, keyed by column name.
std::vector<std::map<std::string, std::string>> parse_csv(std::string_view text);

// RF_THREADS, else the hardware concurrency, at least 1.
std::size_t worker_count();

// One report per seed, in seed order. With config.out set, writes
// report_<seed>.json per seed and summary.csv.
std::vector<RunReport> run_experiment(const ExperimentConfig& config);

}  // namespace cfree
