#pragma once

#include <memory>
#include <span>
#include <string>

#include "bayespoker/decision.hpp"
#include "bayespoker/engine.hpp"
#include "bayespoker/inference.hpp"
#include "bayespoker/matrices.hpp"

namespace bayespoker {

/// Immutable deal-derived knowledge shared by every BPP instance.
struct Knowledge {
  DealMatrices deal;
  WinMatrix win;
};

/// Evidence BPP derives from its view: own current type, the opponent's
/// upcard type, and the class of the opponent's latest action this round.
Evidence evidence_from_view(const PlayerView& view);

struct BppResult {
  Evidence evidence;
  BeliefState belief;
  Decision decision;
};

BppResult bpp_decide(const PlayerView& view, const Knowledge& knowledge, const ActionMatrix& action_matrix,
                     const CurveParams& params, Rng& rng, const DecisionConfig& config = {});

/// Monte Carlo win probability from the known cards alone: completes both
/// hands from the unseen cards, ties count one half.
double estimate_win_probability(const PlayerView& view, std::uint64_t samples, Rng& rng);

Decision prob_decide(const PlayerView& view, std::uint64_t samples, const CurveParams& params, Rng& rng,
                     const DecisionConfig& config = {});

/// Interpretation switches for the rule-based player's decision table.
struct RuleBook {
  /// Outer test: true reads it as "my upcards beat the adversary's".
  bool outer_test_is_own_upcards_ahead = true;
  double strong_aggression = 0.90;   // my hand type beats their upcard type
  double modest_aggression = 0.80;   // my hand beats their upcards, same type
  double beaten_fold = 0.85;         // what they show beats my whole hand
  double raise_when_ahead = 0.85;    // facing a bet, my type beats their upcard type
  double call_when_behind = 0.85;    // facing a bet otherwise; remainder folds
};

Action rule_decide(const PlayerView& view, Rng& rng, const RuleBook& book = {});

class BppAgent final : public Agent {
 public:
  struct Options {
    bool learning = true;
    DecisionConfig decision{};
  };

  BppAgent(std::string id, std::shared_ptr<const Knowledge> knowledge, std::shared_ptr<ActionCountsStore> counts,
           CurveParams params, Options options);
  BppAgent(std::string id, std::shared_ptr<const Knowledge> knowledge, std::shared_ptr<ActionCountsStore> counts,
           CurveParams params)
      : BppAgent(std::move(id), std::move(knowledge), std::move(counts), params, Options{}) {}

  const std::string& id() const override { return id_; }
  std::string_view kind() const override { return "bpp"; }
  Action decide(const PlayerView& view, Rng& rng) override;
  void observe(const GameRecord& record, int seat) override;

  const BppResult& last() const { return last_; }
  void set_params(const CurveParams& params) { params_ = params; }
  const CurveParams& params() const { return params_; }
  ActionCountsStore& counts() { return *counts_; }

 private:
  std::string id_;
  std::shared_ptr<const Knowledge> knowledge_;
  std::shared_ptr<ActionCountsStore> counts_;
  CurveParams params_;
  Options options_;
  BppResult last_{};
};

/// The opponent action of one round that serves as action evidence: the one
/// in front of my last decision of the round, or failing that the
/// opponent's closing action unless it was a call forced by the raise cap.
std::optional<Action> evidence_action(std::span<const HistoryEntry> round_history, int my_seat);

/// Records, per round, the class of the evidence action against the
/// opponent's hand type at that round. Showdown records only.
void learn_from_showdown(ActionCountsStore& store, const GameRecord& record, int my_seat);

class ProbabilisticAgent final : public Agent {
 public:
  static constexpr std::uint64_t kDefaultSamples = 10'000;

  ProbabilisticAgent(std::string id, CurveParams params, std::uint64_t samples = kDefaultSamples,
                     DecisionConfig config = {});
  const std::string& id() const override { return id_; }
  std::string_view kind() const override { return "prob"; }
  Action decide(const PlayerView& view, Rng& rng) override;

 private:
  std::string id_;
  CurveParams params_;
  std::uint64_t samples_;
  DecisionConfig config_;
};

class RuleBasedAgent final : public Agent {
 public:
  explicit RuleBasedAgent(std::string id, RuleBook book = {}) : id_(std::move(id)), book_(book) {}
  const std::string& id() const override { return id_; }
  std::string_view kind() const override { return "rules"; }
  Action decide(const PlayerView& view, Rng& rng) override { return rule_decide(view, rng, book_); }

 private:
  std::string id_;
  RuleBook book_;
};

/// Deterministic opponent: aggressive exactly when its current hand type is
/// at least `threshold`, otherwise passes or calls. Never folds.
class ThresholdAgent final : public Agent {
 public:
  explicit ThresholdAgent(std::string id, HandType17 threshold = HandType17::PairLow)
      : id_(std::move(id)), threshold_(threshold) {}
  const std::string& id() const override { return id_; }
  std::string_view kind() const override { return "scripted"; }
  Action decide(const PlayerView& view, Rng& rng) override;
  HandType17 threshold() const { return threshold_; }

 private:
  std::string id_;
  HandType17 threshold_;
};

}  // namespace bayespoker
