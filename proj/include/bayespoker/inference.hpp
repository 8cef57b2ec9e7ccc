#pragma once

#include <optional>
#include <span>
#include <stdexcept>

#include "bayespoker/actions.hpp"
#include "bayespoker/matrices.hpp"

namespace bayespoker {

class InferenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One round's network:
///
///   OPP_Final -> OPP_Current -> {OPP_Upcards, OPP_Action}
///   BPP_Final -> BPP_Current
///   {BPP_Final, OPP_Final} -> BPP_Win
///
/// Both final nodes share the same prior. The struct only borrows; the
/// referenced matrices must outlive it.
struct NetworkRound {
  RoundId round;
  const DealMatrices* deal;
  const WinMatrix* win;
  ActionMatrix action;

  const Mat17& c_given_f() const { return deal->c_given_f[round.index()]; }
  const Mat17& u_given_c() const { return deal->u_given_c[round.index()]; }
};

struct Evidence {
  HandType17 bpp_current;
  HandType17 opp_upcards;
  std::optional<ActionClass> opp_action;
};

struct BeliefState {
  Vec17 bpp_final{};
  Vec17 opp_final{};
  Vec17 opp_current{};
  double p_win = 0.0;
};

/// Exact posterior by Pearl-style message passing on the polytree.
BeliefState infer(const NetworkRound& net, const Evidence& ev);

/// Same network with soft (likelihood-vector) evidence on the observed
/// leaves. infer() is the special case of indicator vectors.
BeliefState infer_soft(const NetworkRound& net, const Vec17& bpp_current_lik, const Vec17& opp_upcards_lik,
                       const std::array<double, 2>& opp_action_lik);

/// Class of the opponent's most recent action this round, if any.
/// FOLD cannot appear: a fold ends the hand before any inference.
std::optional<ActionClass> action_class_of(std::span<const Action> opponent_actions_this_round);

}  // namespace bayespoker
