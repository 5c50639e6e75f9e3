#include "cfree/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "cfree/errors.hpp"
#include "cfree/kv.hpp"
#include "cfree/spectral.hpp"

namespace cfree {

namespace {

bool parse_bool(std::string_view v, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ParseError(line, "expected a boolean, got '" + std::string(v) + "'");
}

std::vector<Seed> parse_seeds(std::string_view v, std::size_t line) {
  std::vector<Seed> out;
  if (auto dots = v.find(".."); dots != std::string_view::npos) {
    const Seed a = parse_u64(v.substr(0, dots), line);
    const Seed b = parse_u64(v.substr(dots + 2), line);
    if (b < a) throw ParseError(line, "empty seed range");
    for (Seed s = a; s <= b; ++s) out.push_back(s);
    return out;
  }
  std::size_t start = 0;
  while (start <= v.size()) {
    const std::size_t comma = std::min(v.find(',', start), v.size());
    out.push_back(parse_u64(v.substr(start, comma - start), line));
    start = comma + 1;
  }
  return out;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::vector<Vertex> alive_vertices(const ColoredGraph& g) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.alive(v)) out.push_back(v);
  }
  return out;
}

Json edge_json(Edge e) { return Json::array({e.u, e.v}); }

template <class T>
Json opt_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value, std::size_t line) {
  if (key == "ell") c.ell = static_cast<int>(parse_i64(value, line));
  else if (key == "n") c.n = parse_u64(value, line);
  else if (key == "mode") {
    try {
      c.mode = mode_from_string(value);
    } catch (const ParameterError& e) {
      throw ParseError(line, e.what());
    }
  } else if (key == "seed") c.seeds = {parse_u64(value, line)};
  else if (key == "seeds") c.seeds = parse_seeds(value, line);
  else if (key == "p") c.overrides.p = parse_double(value, line);
  else if (key == "r") c.overrides.r = parse_u64(value, line);
  else if (key == "k") c.overrides.k = parse_u64(value, line);
  else if (key == "delta") c.overrides.delta = parse_double(value, line);
  else if (key == "k_scale") c.overrides.k_scale = parse_double(value, line);
  else if (key == "trials") c.trials = parse_u64(value, line);
  else if (key == "cap") c.cap = parse_u64(value, line);
  else if (key == "search_budget") c.search_budget = parse_u64(value, line);
  else if (key == "walk_sets") c.walk_sets = parse_u64(value, line);
  else if (key == "path_budget") c.path_budget = parse_u64(value, line);
  else if (key == "alpha_cap") c.alpha_cap = static_cast<std::uint32_t>(parse_u64(value, line));
  else if (key == "baseline") c.baseline = parse_bool(value, line);
  else if (key == "out") c.out = std::string(value);
  else throw ParseError(line, "unknown key '" + std::string(key) + "'");
}

ExperimentConfig config_from_key_value(std::string_view text) {
  ExperimentConfig c;
  for (const KeyValue& kv : parse_key_value(text)) apply_setting(c, kv.key, kv.value, kv.line);
  return c;
}

Params params_for(const ExperimentConfig& c) { return derive_params(c.ell, c.n, c.mode, c.overrides); }

PipelineState run_deletions(Instance instance, std::uint64_t cap) {
  PipelineState st;
  st.vertex = vertex_delete(instance.graph, instance.partitions, instance.params.ell, cap);
  st.orderings = build_orderings(instance.partitions);
  st.edge = edge_delete(st.vertex.graph, st.orderings, instance.params.ell, cap);
  st.instance = std::move(instance);
  return st;
}

Json to_json(const Params& p) {
  Json j;
  j["ell"] = p.ell;
  j["n"] = p.n;
  j["p_c"] = p.p_c;
  j["eps"] = p.eps;
  j["p"] = p.p;
  j["r"] = p.r;
  j["k"] = p.k;
  j["delta"] = p.delta;
  j["eta"] = p.eta;
  j["mode"] = std::string(to_string(p.mode));
  j["kTarget"] = p.k_target;
  j["kScale"] = p.k_scale;
  j["blocks"] = p.blocks();
  return j;
}

Json to_json(const RegimeDiagnostics& d) {
  Json j;
  j["ratioIneq1"] = d.ratio_ineq1;
  j["ineq2Ok"] = d.ineq2_ok;
  j["rVsPnOk"] = d.r_vs_pn_ok;
  j["unionBoundMargin"] = d.union_bound_margin;
  j["exponentIdentityErr"] = d.exponent_identity_err;
  return j;
}

Json to_json(const VerifierReport& r) {
  Json j;
  j["degreeDevRed"] = r.degree_dev_red;
  j["degreeDevBlue"] = r.degree_dev_blue;
  j["degreeTol"] = r.degree_tol;
  j["degreesOk"] = r.degrees_ok;
  j["spectralDevRed"] = r.spectral_dev_red;
  j["spectralDevBlue"] = r.spectral_dev_blue;
  j["spectralBound"] = r.spectral_bound;
  j["spectralOk"] = r.spectral_ok;
  j["projectionTrials"] = r.projection_trials;
  j["projectionFailures"] = r.projection_failures;
  j["doubleDegreeMax"] = r.double_degree_max;
  j["doubleDegreeBound"] = r.double_degree_bound;
  j["doubleDegreeOk"] = r.double_degree_ok;
  j["expansionTrials"] = r.expansion_trials;
  j["expansionFailures"] = r.expansion_failures;
  j["passed"] = r.passed;
  return j;
}

Json deletion_json(const DeletionReport& v, const EdgeDeletion& e, std::uint32_t n) {
  Json j;
  j["badBrokenCycles"] = v.bad_broken_cycles_found;
  j["verticesDeleted"] = v.vertices_deleted;
  j["verticesSurviving"] = n - v.vertices_deleted;
  j["cyclesFound"] = e.cycles_found;
  j["coloringsProcessed"] = e.colorings_processed;
  j["edgesDeleted"] = e.edges_deleted;
  Json hist = Json::array();
  for (const auto& [ta, count] : v.histogram) hist.push_back({{"t", ta.first}, {"a", ta.second}, {"count", count}});
  j["histogram"] = hist;
  return j;
}

Json spectral_json(const PipelineState& st, const ExperimentConfig& config, Seed seed) {
  const Params& params = st.instance.params;
  const DominatingOperator op(st.instance.red_base, st.instance.blue_base, st.instance.partitions);
  SpectralDecomposition d = top_eigenpair(op, 1e-6, 10000, derive_seed(seed, "spectral.top"));
  d.M_norm = estimate_M_norm(op, d.mu, d.v, 1e-6, 10000, derive_seed(seed, "spectral.rest"));
  const double n = static_cast<double>(params.n);
  Json j;
  j["mu"] = d.mu;
  j["muTarget"] = 2.0 * params.p * n;
  j["vInf"] = d.v_inf;
  j["vInfBound"] = 1.0 / (params.delta * std::sqrt(n));
  j["MNorm"] = d.M_norm;
  j["MNormBound"] = 6.0 * std::sqrt(static_cast<double>(params.r) * params.p * n);
  j["residual"] = d.residual;
  j["iterations"] = d.iterations;
  j["countsAre"] = "walks";

  std::vector<Vertex> pool = alive_vertices(st.edge.graph);
  const auto want = static_cast<std::size_t>(std::ceil(params.delta * static_cast<double>(params.k) - 1e-9));
  const std::size_t jsize = std::clamp<std::size_t>(want, 1, std::max<std::size_t>(pool.size(), 1));
  Rng rng(derive_seed(seed, "spectral.walks"));
  Json walks = Json::array();
  for (std::uint64_t w = 0; w < config.walk_sets && !pool.empty(); ++w) {
    for (std::size_t i = 0; i < jsize; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    std::vector<Vertex> J(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(jsize));
    std::sort(J.begin(), J.end());
    const WalkBound b = walk_bound(params, d, J);
    Json entry;
    entry["jSize"] = J.size();
    try {
      const std::uint64_t uw = count_walks_exact(st.instance.graph, J, params.ell - 1);
      const std::uint64_t ow = count_walks_exact(op, J, params.ell - 1);
      entry["unionWalks"] = uw;
      entry["operatorWalks"] = ow;
      entry["unionLeOperator"] = uw <= ow;
      entry["operatorLeIntermediate"] = static_cast<double>(ow) <= b.intermediate;
    } catch (const std::overflow_error& e) {
      entry["unionWalks"] = nullptr;
      entry["operatorWalks"] = nullptr;
      entry["unionLeOperator"] = nullptr;
      entry["operatorLeIntermediate"] = nullptr;
      entry["nullReasons"] = {{"unionWalks", e.what()}, {"operatorWalks", e.what()}};
    }
    entry["intermediateBound"] = b.intermediate;
    entry["closedFormBound"] = b.closed_form;
    walks.push_back(entry);
  }
  j["walks"] = walks;
  return j;
}

Json independence_json(const PipelineState& st, const ExperimentConfig& config, Seed seed) {
  const Params& params = st.instance.params;
  const ColoredGraph& g = st.edge.graph;
  const ColoredGraph& gp = st.instance.graph;
  Json j;
  Json reasons = Json::object();
  const std::vector<Vertex> I =
      independent_set_search(g, params.k, config.search_budget, derive_seed(seed, "independence.search"));
  j["bestFoundSet"] = {{"size", I.size()}, {"target", params.k}, {"vertices", I}};

  const Representatives reps = pick_representatives(I, st.instance.partitions, params.delta, params.k);
  j["representatives"] = nullptr;
  j["closedPairs"] = nullptr;
  j["openPairs"] = nullptr;
  j["claim"] = nullptr;
  if (!reps.ok) {
    for (const char* key : {"representatives", "closedPairs", "openPairs", "claim"}) {
      reasons[key] = "found set has fewer than ceil(delta k) blocks in either partition";
    }
  } else {
    const std::size_t js = reps.J.size();
    j["representatives"] = {{"color", reps.color == Color::red ? "red" : "blue"}, {"vertices", reps.J}};
    const double avg_degree = 2.0 * static_cast<double>(gp.union_edges().size()) / static_cast<double>(gp.n());
    const double estimate = static_cast<double>(js) * std::pow(avg_degree, params.ell - 1);
    if (estimate > static_cast<double>(config.path_budget)) {
      const std::string why = "estimated path search " + format_double(estimate) + " above path_budget";
      for (const char* key : {"closedPairs", "openPairs", "claim"}) reasons[key] = why;
    } else {
      const ClosedPairSet closed = closed_pairs(gp, reps.J, params.ell);
      const double bound = walk_bound(params, js).closed_form / static_cast<double>(params.r);
      j["closedPairs"] = {{"count", closed.pairs.size()},
                          {"pairsTotal", js * (js - 1) / 2},
                          {"lemmaBound", bound},
                          {"withinBound", static_cast<double>(closed.pairs.size()) <= bound}};
      const ExposureSplit split = exposure_split(gp, st.instance.partitions, reps.J, params.ell, reps.color);
      j["openPairs"] = {{"count", split.open.size()}, {"g0Edges", edge_count(split.G0)}};
      const ClaimVerdict claim = check_claim(gp, g, st.orderings, reps.J, split, reps.color);
      j["claim"] = {{"antecedent", claim.antecedent},
                    {"openExposed", claim.open_exposed.size()},
                    {"holds", claim.holds},
                    {"counterexample", claim.counterexample ? edge_json(*claim.counterexample) : Json(nullptr)}};
    }
  }
  if (g.n() <= config.alpha_cap) {
    j["alphaExact"] = alpha_exact(g, config.alpha_cap);
  } else {
    j["alphaExact"] = nullptr;
    reasons["alphaExact"] = "n = " + std::to_string(g.n()) + " above alpha_cap";
  }
  const IndSetBound b = ind_set_probability_bound(params);
  j["boundLog"] = {{"logProbability", b.log_probability}, {"logExpectation", b.log_expectation}, {"logUpper", b.log_upper}};
  j["nullReasons"] = reasons;
  return j;
}

Json baseline_json(const ExperimentConfig& config, Seed seed) {
  // Only n and ell are needed; k, when derivable, caps the search.
  const auto n = static_cast<std::uint32_t>(config.n);
  const bool has_k = config.mode == Mode::asymptotic || config.overrides.k.has_value();
  const std::uint64_t target = has_k ? params_for(config).k : n;
  const Baseline b = baseline_construction(n, config.ell, derive_seed(seed, "baseline"), config.cap);
  const std::vector<Vertex> I =
      independent_set_search(b.graph, {}, target, config.search_budget, derive_seed(seed, "baseline.search"));
  Json j;
  j["p"] = b.p;
  j["edgesSampled"] = b.edges_sampled;
  j["cyclesFound"] = b.cycles_found;
  j["expectedCycles"] = expected_cycle_count(n, config.ell, b.p);
  j["edgesRemoved"] = b.edges_removed;
  j["cyclesAfter"] = count_cycles(b.graph, config.ell, config.cap);
  j["bestIndep"] = I.size();
  return j;
}

RunReport run_pipeline(const ExperimentConfig& config, Seed seed) {
  RunReport rep;
  rep.seed = seed;
  Json& j = rep.json;
  j["seed"] = seed;
  for (const char* key : {"params", "regime", "deletion", "nonSimpleCyclesInHat", "cyclesInFinalGraph", "eventA",
                          "spectral", "independence", "baseline", "error"}) {
    j[key] = nullptr;
  }
  Json reasons = Json::object();
  Json timings = Json::object();
  std::string stage;
  try {
    stage = "params";
    const Params params = params_for(config);
    j["params"] = to_json(params);
    j["regime"] = to_json(check_regime(params));

    stage = "sample";
    Stopwatch sw;
    PipelineState st;
    st.instance = sample_instance(params, seed);
    timings["sample"] = sw.ms();

    stage = "vertexDeletion";
    sw = Stopwatch();
    st.vertex = vertex_delete(st.instance.graph, st.instance.partitions, params.ell, config.cap);
    timings["vertexDeletion"] = sw.ms();

    stage = "edgeDeletion";
    sw = Stopwatch();
    st.orderings = build_orderings(st.instance.partitions);
    st.edge = edge_delete(st.vertex.graph, st.orderings, params.ell, config.cap);
    timings["edgeDeletion"] = sw.ms();
    j["deletion"] = deletion_json(st.vertex.report, st.edge, st.instance.graph.n());
    rep.vertices_surviving = st.vertex.graph.alive_count();
    rep.edges_deleted = st.edge.edges_deleted;

    stage = "finalCheck";
    sw = Stopwatch();
    std::uint64_t non_simple = 0;
    const EnumerationStats hat = enumerate_cycles(
        st.vertex.graph, params.ell,
        [&](std::span<const Vertex> c) {
          std::vector<Edge> edges;
          for (std::size_t i = 0; i < c.size(); ++i) edges.push_back(make_edge(c[i], c[(i + 1) % c.size()]));
          if (!is_simple(edges, st.instance.partitions)) ++non_simple;
          return true;
        },
        config.cap);
    if (hat.overflow) throw EnumerationCapExceeded("cycles of G-hat exceed the cap");
    j["nonSimpleCyclesInHat"] = non_simple;
    j["cyclesInFinalGraph"] = count_cycles(st.edge.graph, params.ell, config.cap);
    timings["finalCheck"] = sw.ms();

    stage = "eventA";
    sw = Stopwatch();
    VerifyBudgets budgets;
    budgets.projection_trials = config.trials;
    budgets.expansion_trials = config.trials;
    budgets.seed = derive_seed(seed, "eventA");
    const VerifierReport vr = verify_A(st.instance, budgets);
    j["eventA"] = to_json(vr);
    rep.event_a_passed = vr.passed;
    timings["eventA"] = sw.ms();

    stage = "spectral";
    sw = Stopwatch();
    j["spectral"] = spectral_json(st, config, seed);
    rep.mu = j["spectral"]["mu"].get<double>();
    rep.M_norm = j["spectral"]["MNorm"].get<double>();
    if (!j["spectral"]["walks"].empty()) {
      const Json& w0 = j["spectral"]["walks"][0];
      if (!w0["unionWalks"].is_null()) rep.walk_exact = w0["unionWalks"].get<std::uint64_t>();
      rep.walk_bound = w0["intermediateBound"].get<double>();
    }
    timings["spectral"] = sw.ms();

    stage = "independence";
    sw = Stopwatch();
    j["independence"] = independence_json(st, config, seed);
    rep.best_indep = j["independence"]["bestFoundSet"]["size"].get<std::uint64_t>();
    timings["independence"] = sw.ms();

    stage = "baseline";
    if (config.baseline) {
      sw = Stopwatch();
      j["baseline"] = baseline_json(config, seed);
      rep.baseline_best_indep = j["baseline"]["bestIndep"].get<std::uint64_t>();
      timings["baseline"] = sw.ms();
    } else {
      reasons["baseline"] = "disabled in config";
    }
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.error_stage = stage;
    rep.error_message = e.what();
    j["error"] = {{"stage", stage}, {"message", e.what()}};
  }
  j["nullReasons"] = reasons;
  j["timings"] = timings;
  return rep;
}

Json without_timings(const Json& report) {
  Json out = report;
  out.erase("timings");
  return out;
}

namespace {

const std::vector<std::string> kColumns = {"seed", "verticesSurviving", "edgesDeleted", "eventAPassed", "mu",
                                           "MNorm", "walkExact", "walkBound", "bestIndepFound", "baselineBestIndep"};

template <class T>
std::string cell(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
  else if constexpr (std::is_floating_point_v<T>) return format_double(*v);
  else return std::to_string(*v);
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) out += (i ? "," : "") + kColumns[i];
  return out + "\r\n";
}

std::string csv_row(const RunReport& r) {
  const std::vector<std::string> cells = {std::to_string(r.seed),   cell(r.vertices_surviving), cell(r.edges_deleted),
                                          cell(r.event_a_passed),   cell(r.mu),                 cell(r.M_norm),
                                          cell(r.walk_exact),       cell(r.walk_bound),         cell(r.best_indep),
                                          cell(r.baseline_best_indep)};
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
  return out + "\r\n";
}

std::vector<std::map<std::string, std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') field += '"', ++i;
      else if (c == '"') quoted = false;
      else field += c;
      continue;
    }
    if (c == '"') quoted = true, row_open = true;
    else if (c == ',') row.push_back(std::move(field)), field.clear(), row_open = true;
    else if (c == '\r') continue;
    else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else field += c, row_open = true;
  }
  if (row_open) row.push_back(std::move(field)), rows.push_back(std::move(row));
  if (quoted) throw ParseError(rows.size() + 1, "unterminated quoted field");
  std::vector<std::map<std::string, std::string>> out;
  if (rows.empty()) return out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) throw ParseError(r + 1, "wrong number of fields");
    std::map<std::string, std::string> m;
    for (std::size_t c = 0; c < rows[0].size(); ++c) m[rows[0][c]] = rows[r][c];
    out.push_back(std::move(m));
  }
  return out;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("RF_THREADS")) {
    try {
      const std::uint64_t v = parse_u64(env, 0);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const ParseError&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::vector<RunReport> run_experiment(const ExperimentConfig& config) {
  if (config.seeds.empty()) throw ParameterError("experiment needs at least one seed");
  params_for(config);
  std::vector<RunReport> reports(config.seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reports.size(); i = next++) reports[i] = run_pipeline(config, config.seeds[i]);
  };
  const std::size_t threads = std::min(worker_count(), reports.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (!config.out.empty()) {
    std::filesystem::create_directories(config.out);
    std::ofstream csv(config.out / "summary.csv", std::ios::binary);
    csv << csv_header();
    for (const RunReport& r : reports) {
      std::ofstream(config.out / ("report_" + std::to_string(r.seed) + ".json")) << r.json.dump(2) << "\n";
      csv << csv_row(r);
    }
  }
  return reports;
}

}  // namespace cfree
