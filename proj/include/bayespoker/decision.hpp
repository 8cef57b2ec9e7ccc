#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "bayespoker/actions.hpp"
#include "bayespoker/rng.hpp"

namespace bayespoker {

class DecisionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kMaxRaisesPerRound = 3;

/// Betting situation seen by the player about to act. Heads-up, unit bets.
struct PotState {
  static constexpr int kPlayers = 2;
  static constexpr double kUnit = 1.0;

  double pot = 2.0;                 // c: everything in the pot now
  double cost_to_showdown = 1.0;    // k
  bool facing_bet = false;
  int raises_this_round = 0;
};

/// Expected cost to showdown: one unit per betting round left, this one included.
double expected_cost_to_showdown(RoundId round, double unit = PotState::kUnit);

// Pot-odds formulas. c = current pot, k = expected cost to showdown,
// n = players, u = betting unit.
double pot_odds_zadeh(double c, double k, int n);
double pot_odds_midtable(double c, double k, int n, double u);
double pot_odds_heads_up(double c, double k);
/// Probability threshold equivalent to the given odds: o / (1 + o).
double odds_to_probability(double odds);
/// Calling threshold for two players and unit bets: k / (c + 2k - 1).
double threshold(const PotState& pot);

struct PotOddsVariants {
  double zadeh;
  double midtable;
  double correct;
};
PotOddsVariants pot_odds_variants(const PotState& pot);

struct RoundCurves {
  double f_b = 0.10;  // bet/raise shift
  double f_f = 0.05;  // fold shift
  double f_c = 0.05;  // call shift
  friend bool operator==(const RoundCurves&, const RoundCurves&) = default;
};

/// The twelve curve parameters, one triple per round.
struct CurveParams {
  std::array<RoundCurves, 4> rounds{};

  const RoundCurves& at(RoundId r) const { return rounds[r.index()]; }
  RoundCurves& at(RoundId r) { return rounds[r.index()]; }

  std::array<double, 12> flatten() const;
  static CurveParams unflatten(const std::array<double, 12>& v);

  friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

std::string dump_curves(const CurveParams& params);
CurveParams parse_curves(const std::string& text);
CurveParams load_curves(const std::string& path);
void save_curves(const std::string& path, const CurveParams& params);

struct CurveWeights {
  double bet_raise;
  double fold;
  double call;
};

/// Unnormalized action weights at d = p_win - threshold.
CurveWeights curve_weights(double d, const RoundCurves& f);

/// Normalized probabilities indexed by Action.
using ActionDistribution = std::array<double, kNumActions>;

inline double prob(const ActionDistribution& dist, Action a) { return dist[static_cast<int>(a)]; }

/// Curves mapped onto the legal actions: fold mass goes to PASS when there is
/// no bet to face, aggressive mass to CALL once raises are capped.
ActionDistribution action_distribution(double p_win, const PotState& pot, const RoundCurves& f);

struct DecisionConfig {
  /// Over-representation bluff rate in the last round.
  double bluff_probability = 0.05;
};

struct Decision {
  Action action;
  Action sampled;  // before any bluff override
  bool bluffed = false;
  double p_win = 0.0;
  double theta = 0.0;
  ActionDistribution distribution{};
};

Decision choose_action(double p_win, const PotState& pot, const CurveParams& params, RoundId round, Rng& rng,
                       const DecisionConfig& config = {});

/// Legal aggressive/conservative action for the situation.
Action aggressive_action(const PotState& pot);
Action conservative_action(const PotState& pot);
bool is_legal(Action a, const PotState& pot);

}  // namespace bayespoker
