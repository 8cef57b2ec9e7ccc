#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bayespoker/decision.hpp"
#include "bayespoker/engine.hpp"
#include "bayespoker/players.hpp"
#include "bayespoker/stats.hpp"

namespace bayespoker {

struct MatchOptions {
  std::uint64_t games = 1;
  std::uint64_t seed = 0;
  /// Games 2i and 2i+1 share a deal with the seats swapped.
  bool mirrored_deals = true;
  GameConfig game{};
  /// Optional JSONL sink for GameRecords, flushed per game and on failure.
  std::ostream* record_log = nullptr;
  bool keep_records = true;
};

struct MatchResult {
  MatchStats stats;  // from agent a's point of view
  std::vector<std::uint64_t> seeds;
  std::vector<GameRecord> records;
  std::string opponent_kind;
};

/// Seed of game g in a match.
std::uint64_t game_seed(std::uint64_t match_seed, std::uint64_t game_index, bool mirrored);

/// Plays `games` games alternating which agent sits in seat 0.
MatchResult run_match(Agent& a, Agent& b, const MatchOptions& options);

/// CSV: game_index,net,cumulative,opponent_kind,seed
void write_match_csv(std::ostream& out, const MatchResult& result);
std::string summary_json(const MatchStats& stats);

enum class OpponentKind { Probabilistic, RuleBased, Scripted };
std::string_view to_string(OpponentKind k);
OpponentKind parse_opponent_kind(std::string_view text);
std::unique_ptr<Agent> make_opponent(OpponentKind kind, const std::string& id, const CurveParams& params);

struct HillClimbOptions {
  std::uint64_t iters = 100;
  double step_scale = 0.05;
  std::uint64_t seed = 0;
};

struct AcceptedStep {
  std::uint64_t iter;
  CurveParams params;
  double candidate_score;
  double incumbent_score;
};

struct OptimizerResult {
  CurveParams best;
  double last_score = 0.0;  // incumbent's score on the last evaluated block
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::vector<AcceptedStep> audit;
};

/// Score of a parameter set on the game block identified by block_seed.
/// Higher is better.
using CurveObjective = std::function<double(const CurveParams&, std::uint64_t block_seed)>;

/// Stochastic hill climbing: each iteration perturbs all twelve parameters
/// with N(0, step_scale^2) noise and scores candidate and incumbent on the
/// same fresh block; the candidate replaces the incumbent only if it
/// scores strictly higher.
OptimizerResult hill_climb(const CurveParams& initial, const CurveObjective& objective, const HillClimbOptions& options);

struct CurveOptimizeOptions {
  OpponentKind opponent = OpponentKind::RuleBased;
  std::uint64_t iters = 100;
  std::uint64_t games_per_eval = 200;
  double step_scale = 0.05;
  std::uint64_t seed = 0;
  CurveParams initial{};
};

/// Mean net of a non-learning BPP against the opponent over one block. A
/// probabilistic opponent plays the same curves.
double curve_score(const CurveParams& params, const std::shared_ptr<const Knowledge>& knowledge, OpponentKind opponent,
                   std::uint64_t games, std::uint64_t block_seed);

OptimizerResult optimize_curves(const std::shared_ptr<const Knowledge>& knowledge, const CurveOptimizeOptions& options);

std::string optimizer_report_json(const OptimizerResult& result);

}  // namespace bayespoker
