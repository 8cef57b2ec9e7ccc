#include "bayespoker/inference.hpp"

#include <algorithm>
#include <cmath>

namespace bayespoker {

namespace {

Vec17 indicator(HandType17 t) {
  Vec17 v{};
  v[ordinal(t)] = 1.0;
  return v;
}

// lambda message a child sends its parent: sum_x P(x | parent) * lambda(x).
Vec17 lambda_to_parent(const Mat17& child_given_parent, const Vec17& child_lambda) {
  Vec17 out{};
  for (int p = 0; p < kNumHandTypes; ++p) {
    double s = 0;
    for (int x = 0; x < kNumHandTypes; ++x) s += child_given_parent[p][x] * child_lambda[x];
    out[p] = s;
  }
  return out;
}

double normalize(Vec17& v, const char* node) {
  double z = 0;
  for (double x : v) z += x;
  if (!(z > 0.0) || !std::isfinite(z))
    throw InferenceError(std::string("evidence has zero likelihood at node ") + node);
  for (double& x : v) x /= z;
  return z;
}

void check_likelihood(const Vec17& v, const char* what) {
  for (double x : v)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InferenceError(std::string("invalid likelihood vector for ") + what);
}

}  // namespace

BeliefState infer_soft(const NetworkRound& net, const Vec17& bpp_current_lik, const Vec17& opp_upcards_lik,
                       const std::array<double, 2>& opp_action_lik) {
  check_likelihood(bpp_current_lik, "BPP_Current");
  check_likelihood(opp_upcards_lik, "OPP_Upcards");
  for (double x : opp_action_lik)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InferenceError("invalid likelihood vector for OPP_Action");

  const Vec17& prior = net.deal->final_prior;
  const Mat17& cf = net.c_given_f();
  const Mat17& uc = net.u_given_c();

  // Opponent side: leaves report to OPP_Current, which reports to OPP_Final.
  Vec17 lambda_cur = lambda_to_parent(uc, opp_upcards_lik);
  for (int c = 0; c < kNumHandTypes; ++c)
    lambda_cur[c] *= net.action[c][0] * opp_action_lik[0] + net.action[c][1] * opp_action_lik[1];
  const Vec17 lambda_opp_final = lambda_to_parent(cf, lambda_cur);

  BeliefState out;
  for (int f = 0; f < kNumHandTypes; ++f) out.opp_final[f] = prior[f] * lambda_opp_final[f];
  normalize(out.opp_final, "OPP_Final");

  // pi(OPP_Current): prior pushed through M_{C|F}; Win sends a unit lambda.
  for (int c = 0; c < kNumHandTypes; ++c) {
    double pi = 0;
    for (int f = 0; f < kNumHandTypes; ++f) pi += prior[f] * cf[f][c];
    out.opp_current[c] = pi * lambda_cur[c];
  }
  normalize(out.opp_current, "OPP_Current");

  const Vec17 lambda_bpp_final = lambda_to_parent(cf, bpp_current_lik);
  for (int b = 0; b < kNumHandTypes; ++b) out.bpp_final[b] = prior[b] * lambda_bpp_final[b];
  normalize(out.bpp_final, "BPP_Final");

  // BPP_Win: its two parents are d-separated given no evidence below Win.
  double p = 0;
  for (int b = 0; b < kNumHandTypes; ++b) {
    double row = 0;
    for (int f = 0; f < kNumHandTypes; ++f) row += net.win->w[b][f] * out.opp_final[f];
    p += out.bpp_final[b] * row;
  }
  out.p_win = std::clamp(p, 0.0, 1.0);
  return out;
}

BeliefState infer(const NetworkRound& net, const Evidence& ev) {
  std::array<double, 2> action_lik{1.0, 1.0};
  if (ev.opp_action) action_lik = *ev.opp_action == ActionClass::Aggressive ? std::array{0.0, 1.0} : std::array{1.0, 0.0};
  return infer_soft(net, indicator(ev.bpp_current), indicator(ev.opp_upcards), action_lik);
}

std::optional<ActionClass> action_class_of(std::span<const Action> opponent_actions_this_round) {
  for (Action a : opponent_actions_this_round)
    if (a == Action::Fold) throw InferenceError("FOLD in action history: the hand is over, no inference follows");
  if (opponent_actions_this_round.empty()) return std::nullopt;
  return class_of(opponent_actions_this_round.back());
}

}  // namespace bayespoker
