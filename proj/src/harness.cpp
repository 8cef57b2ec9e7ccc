#include "bayespoker/harness.hpp"

#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace bayespoker {

using json = nlohmann::json;

std::uint64_t game_seed(std::uint64_t match_seed, std::uint64_t game_index, bool mirrored) {
  return derive_seed(match_seed, mirrored ? game_index / 2 : game_index);
}

MatchResult run_match(Agent& a, Agent& b, const MatchOptions& options) {
  if (options.games == 0) throw std::invalid_argument("a match needs at least one game");
  MatchResult result;
  result.opponent_kind = std::string(b.kind());
  std::vector<double> nets;
  nets.reserve(options.games);
  result.seeds.reserve(options.games);
  try {
    for (std::uint64_t g = 0; g < options.games; ++g) {
      const std::uint64_t seed = game_seed(options.seed, g, options.mirrored_deals);
      const bool a_first = g % 2 == 0;
      GameRecord rec = a_first ? play_game(a, b, seed, options.game) : play_game(b, a, seed, options.game);
      nets.push_back(rec.net[a_first ? 0 : 1]);
      result.seeds.push_back(seed);
      if (options.record_log) *options.record_log << game_record_json_line(rec) << '\n';
      if (options.keep_records) result.records.push_back(std::move(rec));
    }
  } catch (...) {
    if (options.record_log) options.record_log->flush();
    throw;
  }
  if (options.record_log) options.record_log->flush();
  result.stats = summarize(nets);
  return result;
}

void write_match_csv(std::ostream& out, const MatchResult& result) {
  out << "game_index,net,cumulative,opponent_kind,seed\n";
  for (std::size_t i = 0; i < result.stats.n; ++i)
    out << i << ',' << result.stats.nets[i] << ',' << result.stats.cumulative[i] << ',' << result.opponent_kind << ','
        << result.seeds[i] << '\n';
}

std::string summary_json(const MatchStats& s) {
  return json{{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"t", s.t}, {"p", s.p}}.dump();
}

std::string_view to_string(OpponentKind k) {
  switch (k) {
    case OpponentKind::Probabilistic: return "prob";
    case OpponentKind::RuleBased: return "rules";
    case OpponentKind::Scripted: return "scripted";
  }
  return "?";
}

OpponentKind parse_opponent_kind(std::string_view text) {
  if (text == "prob") return OpponentKind::Probabilistic;
  if (text == "rules") return OpponentKind::RuleBased;
  if (text == "scripted") return OpponentKind::Scripted;
  throw std::invalid_argument("unknown opponent kind: " + std::string(text));
}

std::unique_ptr<Agent> make_opponent(OpponentKind kind, const std::string& id, const CurveParams& params) {
  switch (kind) {
    case OpponentKind::Probabilistic: return std::make_unique<ProbabilisticAgent>(id, params);
    case OpponentKind::RuleBased: return std::make_unique<RuleBasedAgent>(id);
    case OpponentKind::Scripted: return std::make_unique<ThresholdAgent>(id);
  }
  throw std::invalid_argument("unknown opponent kind");
}

OptimizerResult hill_climb(const CurveParams& initial, const CurveObjective& objective, const HillClimbOptions& options) {
  OptimizerResult result;
  result.best = initial;
  result.seed = options.seed;
  Rng noise(derive_seed(options.seed, 0x4E4F495345));
  for (std::uint64_t it = 0; it < options.iters; ++it) {
    auto v = result.best.flatten();
    for (double& x : v) x += options.step_scale * noise.normal();
    const CurveParams candidate = CurveParams::unflatten(v);

    const std::uint64_t block = derive_seed(options.seed, it + 1);
    const double incumbent_score = objective(result.best, block);
    const double candidate_score = objective(candidate, block);
    result.last_score = incumbent_score;
    if (candidate_score > incumbent_score) {
      result.best = candidate;
      result.last_score = candidate_score;
      result.audit.push_back({it, candidate, candidate_score, incumbent_score});
    }
    result.iterations = it + 1;
  }
  return result;
}

double curve_score(const CurveParams& params, const std::shared_ptr<const Knowledge>& knowledge, OpponentKind opponent,
                   std::uint64_t games, std::uint64_t block_seed) {
  auto counts = std::make_shared<ActionCountsStore>();
  BppAgent bpp("bpp", knowledge, counts, params, BppAgent::Options{.learning = false});
  auto opp = make_opponent(opponent, std::string(to_string(opponent)), params);
  MatchOptions mo;
  mo.games = games;
  mo.seed = block_seed;
  mo.keep_records = false;
  return run_match(bpp, *opp, mo).stats.mean;
}

OptimizerResult optimize_curves(const std::shared_ptr<const Knowledge>& knowledge, const CurveOptimizeOptions& options) {
  if (options.iters == 0) throw std::invalid_argument("optimizer needs at least one iteration");
  if (options.games_per_eval < 100) throw std::invalid_argument("games_per_eval must be at least 100");
  auto objective = [&](const CurveParams& p, std::uint64_t block) {
    return curve_score(p, knowledge, options.opponent, options.games_per_eval, block);
  };
  return hill_climb(options.initial, objective, {options.iters, options.step_scale, options.seed});
}

std::string optimizer_report_json(const OptimizerResult& result) {
  json j = json::parse(dump_curves(result.best));
  json audit = json::array();
  for (const AcceptedStep& s : result.audit)
    audit.push_back({{"iter", s.iter},
                     {"candidate_score", s.candidate_score},
                     {"incumbent_score", s.incumbent_score},
                     {"params", json::parse(dump_curves(s.params))}});
  j["audit"] = {{"iterations", result.iterations}, {"seed", result.seed}, {"accepted", audit}};
  return j.dump(2);
}

}  // namespace bayespoker
