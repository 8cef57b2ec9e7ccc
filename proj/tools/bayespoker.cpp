// Command-line front end: matrix estimation, simulated matches, curve
// optimization and the live play service.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bayespoker/harness.hpp"
#include "bayespoker/matrices.hpp"
#include "bayespoker/players.hpp"
#include "bayespoker/reference.hpp"
#ifdef BAYESPOKER_WITH_SERVICE
#include "bayespoker/service.hpp"
#endif

namespace fs = std::filesystem;
using namespace bayespoker;

namespace {

fs::path data_dir() {
  if (const char* env = std::getenv("BAYESPOKER_DATA_DIR"); env && *env) return env;
  return "data";
}

fs::path default_matrices() { return data_dir() / "matrices.json"; }

std::shared_ptr<const Knowledge> knowledge_from(const MatrixSet& set) {
  return std::make_shared<const Knowledge>(Knowledge{set.deal, set.win});
}

CurveParams curves_or_default(const std::string& path) { return path.empty() ? CurveParams{} : load_curves(path); }

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

int cmd_estimate(std::uint64_t deals, std::uint64_t seed, fs::path out, unsigned workers) {
  if (deals == 0) throw std::invalid_argument("--deals must be at least 1");
  if (out.empty()) out = default_matrices();
  MatrixSet set = build_matrix_set(deals, seed, {.workers = workers});
  ensure_parent(out);
  save_matrices(out, set);
  const auto observed = collapse_to_categories(set.deal.final_prior);
  std::printf("%-14s %12s %12s %10s\n", "category", "estimated", "reference", "diff");
  for (int c = 0; c < kNumCategories; ++c)
    std::printf("%-14s %12.7f %12.7f %+10.7f\n", std::string(to_string(static_cast<Category>(c))).c_str(), observed[c],
                kCategoryReferenceProbabilities[c], observed[c] - kCategoryReferenceProbabilities[c]);
  std::printf("wrote %s (%llu deals, seed %llu)\n", out.string().c_str(), static_cast<unsigned long long>(deals),
              static_cast<unsigned long long>(seed));
  return 0;
}

struct SimulateArgs {
  std::string opponent = "rules";
  std::uint64_t games = 2000;
  std::uint64_t seed = 1;
  std::string matrices;
  std::string curves;
  std::string learning = "on";
  std::string out = "match.csv";
  std::string log;
};

int cmd_simulate(const SimulateArgs& a) {
  const MatrixSet set = load_matrices(a.matrices.empty() ? default_matrices() : fs::path(a.matrices));
  const CurveParams params = curves_or_default(a.curves);
  auto counts = std::make_shared<ActionCountsStore>(set.action_counts);
  BppAgent bpp("bpp", knowledge_from(set), counts, params, {.learning = a.learning == "on"});
  const OpponentKind kind = parse_opponent_kind(a.opponent);
  auto opp = make_opponent(kind, std::string(to_string(kind)), params);

  std::ofstream log;
  MatchOptions mo;
  mo.games = a.games;
  mo.seed = a.seed;
  mo.keep_records = false;
  if (!a.log.empty()) {
    ensure_parent(a.log);
    log.open(a.log, std::ios::trunc);
    mo.record_log = &log;
  }
  const MatchResult r = run_match(bpp, *opp, mo);

  ensure_parent(a.out);
  std::ofstream csv(a.out, std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + a.out);
  write_match_csv(csv, r);

  nlohmann::json summary = nlohmann::json::parse(summary_json(r.stats));
  summary["opponent"] = a.opponent;
  summary["learning"] = a.learning;
  if (r.stats.n >= 400) {
    const TwoSampleTest le = learning_effect(r.stats.nets);
    summary["learning_effect"] = {{"early_mean", le.mean_a}, {"late_mean", le.mean_b}, {"t", le.t}, {"p", le.p}};
  }
  fs::path summary_path = a.out;
  summary_path.replace_extension(".summary.json");
  std::ofstream(summary_path, std::ios::trunc) << summary.dump(2) << '\n';
  std::cout << summary.dump() << '\n';
  return 0;
}

int cmd_optimize(std::uint64_t iters, std::uint64_t games, std::uint64_t seed, const std::string& out,
                 const std::string& matrices, const std::string& opponent, double step) {
  const MatrixSet set = load_matrices(matrices.empty() ? default_matrices() : fs::path(matrices));
  CurveOptimizeOptions o;
  o.opponent = parse_opponent_kind(opponent);
  o.iters = iters;
  o.games_per_eval = games;
  o.step_scale = step;
  o.seed = seed;
  const OptimizerResult r = optimize_curves(knowledge_from(set), o);
  ensure_parent(out);
  std::ofstream(out, std::ios::trunc) << optimizer_report_json(r) << '\n';
  std::printf("accepted %zu of %llu steps; wrote %s\n", r.audit.size(), static_cast<unsigned long long>(r.iterations),
              out.c_str());
  return 0;
}

#ifdef BAYESPOKER_WITH_SERVICE
int cmd_serve(unsigned short port, const std::string& address, const std::string& matrices, const std::string& curves,
              std::uint64_t seed) {
  const MatrixSet set = load_matrices(matrices.empty() ? default_matrices() : fs::path(matrices));
  ServiceConfig cfg;
  cfg.knowledge = knowledge_from(set);
  cfg.params = curves_or_default(curves);
  cfg.counts = std::make_shared<ActionCountsStore>(set.action_counts);
  cfg.seed = seed;
  SessionManager sessions(std::move(cfg));
  HttpServer server(sessions, address, port);
  std::printf("listening on %s:%u\n", address.c_str(), server.port());
  std::fflush(stdout);
  server.run();
  return 0;
}
#endif

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian five-card stud player: estimation, simulation, optimization and live play"};
  app.require_subcommand(1);

  std::uint64_t deals = 1'000'000, est_seed = 1;
  std::string est_out;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  auto* est = app.add_subcommand("estimate-matrices", "Estimate all probability matrices by dealing hands");
  est->add_option("--deals", deals, "Number of hands to deal")->default_val(deals);
  est->add_option("--seed", est_seed, "RNG seed")->default_val(est_seed);
  est->add_option("--out", est_out, "Output matrix file (default: $BAYESPOKER_DATA_DIR/matrices.json)");
  est->add_option("--workers", workers, "Worker threads (does not change results)");

  SimulateArgs sim;
  auto* simc = app.add_subcommand("simulate", "Play BPP against an automated opponent");
  simc->add_option("--opponent", sim.opponent)->check(CLI::IsMember({"prob", "rules", "scripted"}))->default_val(sim.opponent);
  simc->add_option("--games", sim.games)->default_val(sim.games);
  simc->add_option("--seed", sim.seed)->default_val(sim.seed);
  simc->add_option("--matrices", sim.matrices, "Matrix file")->check(CLI::ExistingFile);
  simc->add_option("--curves", sim.curves, "Curve parameter file")->check(CLI::ExistingFile);
  simc->add_option("--learning", sim.learning)->check(CLI::IsMember({"on", "off"}))->default_val(sim.learning);
  simc->add_option("--out", sim.out, "Per-game CSV")->default_val(sim.out);
  simc->add_option("--log", sim.log, "Optional JSONL game-record log");

  std::uint64_t iters = 100, per_eval = 200, opt_seed = 1;
  double step = 0.05;
  std::string opt_out = "curves.json", opt_matrices, opt_opponent = "rules";
  auto* opt = app.add_subcommand("optimize", "Stochastic search over the twelve curve parameters");
  opt->add_option("--iters", iters)->default_val(iters);
  opt->add_option("--games-per-eval", per_eval)->default_val(per_eval);
  opt->add_option("--seed", opt_seed)->default_val(opt_seed);
  opt->add_option("--out", opt_out)->default_val(opt_out);
  opt->add_option("--matrices", opt_matrices, "Matrix file")->check(CLI::ExistingFile);
  opt->add_option("--opponent", opt_opponent)->check(CLI::IsMember({"prob", "rules", "scripted"}))->default_val(opt_opponent);
  opt->add_option("--step-scale", step)->default_val(step);

#ifdef BAYESPOKER_WITH_SERVICE
  unsigned short port = 8080;
  std::uint64_t serve_seed = 1;
  std::string address = "0.0.0.0", serve_matrices, serve_curves;
  auto* srv = app.add_subcommand("serve", "Host live games against human players over HTTP/WebSocket");
  srv->add_option("--port", port)->default_val(port);
  srv->add_option("--address", address)->default_val(address);
  srv->add_option("--matrices", serve_matrices, "Matrix file")->check(CLI::ExistingFile);
  srv->add_option("--curves", serve_curves, "Curve parameter file")->check(CLI::ExistingFile);
  srv->add_option("--seed", serve_seed)->default_val(serve_seed);
#endif

  CLI11_PARSE(app, argc, argv);
  try {
    if (*est) return cmd_estimate(deals, est_seed, est_out, workers);
    if (*simc) return cmd_simulate(sim);
    if (*opt) return cmd_optimize(iters, per_eval, opt_seed, opt_out, opt_matrices, opt_opponent, step);
#ifdef BAYESPOKER_WITH_SERVICE
    if (*srv) return cmd_serve(port, address, serve_matrices, serve_curves, serve_seed);
#endif
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
