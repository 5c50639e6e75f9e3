// Command-line front end: build, verify, walks, alpha, baseline, experiment.
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cfree/errors.hpp"
#include "cfree/harness.hpp"
#include "cfree/instance_io.hpp"

using namespace cfree;

namespace {

const char* const kSettingKeys[] = {"ell",   "n",   "mode",          "seed",      "seeds",       "p",
                                    "r",     "k",   "delta",         "k_scale",   "trials",      "cap",
                                    "search_budget", "walk_sets", "path_budget", "alpha_cap", "baseline", "out"};

struct Settings {
  std::string config_file;
  std::map<std::string, std::string> flags;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "key = value config file")->check(CLI::ExistingFile);
    for (const char* key : kSettingKeys) app.add_option(std::string("--") + key, flags[key], key);
  }

  ExperimentConfig resolve(const CLI::App& app) const {
    ExperimentConfig c;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      std::stringstream ss;
      ss << in.rdbuf();
      c = config_from_key_value(ss.str());
    }
    for (const auto& [key, value] : flags) {
      if (app.count("--" + key) > 0) apply_setting(c, key, value);
    }
    return c;
  }
};

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized C_ell-free graph construction and its diagnostics"};
  app.require_subcommand(1);

  Settings build_s, verify_s, walks_s, alpha_s, baseline_s, experiment_s;
  std::string verify_in, walks_in, alpha_in;

  CLI::App* build = app.add_subcommand("build", "sample an instance, run both deletions, save to --out");
  build_s.attach(*build);
  CLI::App* verify = app.add_subcommand("verify", "check the pseudo-randomness event on a saved instance");
  verify_s.attach(*verify);
  verify->add_option("--in", verify_in, "instance directory")->required();
  CLI::App* walks = app.add_subcommand("walks", "spectral decomposition and walk counts on a saved instance");
  walks_s.attach(*walks);
  walks->add_option("--in", walks_in, "instance directory")->required();
  CLI::App* alpha = app.add_subcommand("alpha", "independence probes on a saved instance");
  alpha_s.attach(*alpha);
  alpha->add_option("--in", alpha_in, "instance directory")->required();
  CLI::App* baseline = app.add_subcommand("baseline", "G(n, p) with one edge deleted per C_ell");
  baseline_s.attach(*baseline);
  CLI::App* experiment = app.add_subcommand("experiment", "full pipeline over a seed list");
  experiment_s.attach(*experiment);

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      const ExperimentConfig c = build_s.resolve(*build);
      if (c.out.empty()) throw ParameterError("build needs --out");
      const Params params = params_for(c);
      const Seed seed = c.seeds.front();
      PipelineState st = run_deletions(sample_instance(params, seed), c.cap);
      save_instance(c.out, st.instance);
      const GraphHeader header = header_for(params, seed);
      save_graph_file(c.out / "hat.graph", header, st.vertex.graph);
      save_graph_file(c.out / "final.graph", header, st.edge.graph);
      Json j;
      j["params"] = to_json(params);
      j["deletion"] = deletion_json(st.vertex.report, st.edge, st.instance.graph.n());
      j["cyclesInFinalGraph"] = count_cycles(st.edge.graph, params.ell, c.cap);
      std::ofstream(c.out / "deletion.json") << j.dump(2) << "\n";
      print(j);
    } else if (verify->parsed()) {
      const ExperimentConfig c = verify_s.resolve(*verify);
      const Instance inst = load_instance(verify_in);
      VerifyBudgets b;
      b.projection_trials = c.trials;
      b.expansion_trials = c.trials;
      b.seed = derive_seed(inst.seed, "eventA");
      const VerifierReport r = verify_A(inst, b);
      print(to_json(r));
    } else if (walks->parsed()) {
      const ExperimentConfig c = walks_s.resolve(*walks);
      Instance inst = load_instance(walks_in);
      const Seed seed = inst.seed;
      const PipelineState st = run_deletions(std::move(inst), c.cap);
      print(spectral_json(st, c, seed));
    } else if (alpha->parsed()) {
      const ExperimentConfig c = alpha_s.resolve(*alpha);
      Instance inst = load_instance(alpha_in);
      const Seed seed = inst.seed;
      const PipelineState st = run_deletions(std::move(inst), c.cap);
      print(independence_json(st, c, seed));
    } else if (baseline->parsed()) {
      const ExperimentConfig c = baseline_s.resolve(*baseline);
      print(baseline_json(c, c.seeds.front()));
    } else if (experiment->parsed()) {
      const ExperimentConfig c = experiment_s.resolve(*experiment);
      const auto reports = run_experiment(c);
      std::cout << csv_header();
      bool ok = true;
      for (const RunReport& r : reports) {
        std::cout << csv_row(r);
        if (!r.ok) {
          ok = false;
          std::cerr << "seed " << r.seed << ": " << r.error_stage << ": " << r.error_message << "\n";
        }
      }
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
