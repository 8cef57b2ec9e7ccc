#pragma once

#include "bayespoker/inference.hpp"

namespace testing {

using namespace bayespoker;

/// A randomly parameterized round network with random (possibly sparse)
/// rows and a random evidence tuple of positive likelihood.
struct RandomNetwork {
  RoundId round{1};
  DealMatrices deal;
  WinMatrix win;
  ActionMatrix action{};
  Evidence evidence{HandType17::BustedLow, HandType17::BustedLow, std::nullopt};

  NetworkRound net() const { return {round, &deal, &win, action}; }
};

inline Vec17 random_row(Rng& rng, bool sparse) {
  Vec17 v{};
  double s = 0;
  for (double& x : v) {
    x = sparse && rng.bernoulli(0.3) ? 0.0 : rng.uniform() + 1e-3;
    s += x;
  }
  if (s == 0) {
    v[0] = 1;
    s = 1;
  }
  for (double& x : v) x /= s;
  return v;
}

inline RandomNetwork random_network(Rng& rng) {
  RandomNetwork r;
  r.round = RoundId(1 + static_cast<int>(rng.below(4)));
  const bool sparse = rng.bernoulli(0.5);
  r.deal.final_prior = random_row(rng, false);
  for (int k = 0; k < kNumRounds; ++k)
    for (int i = 0; i < kNumHandTypes; ++i) {
      r.deal.c_given_f[k][i] = random_row(rng, sparse);
      r.deal.u_given_c[k][i] = random_row(rng, sparse);
    }
  for (auto& row : r.win.w)
    for (double& x : row) x = rng.uniform();
  for (auto& row : r.action) {
    const double p = rng.uniform();
    row = {p, 1.0 - p};
  }
  // Draw evidence by forward sampling so it has positive likelihood.
  auto draw = [&](const Vec17& dist) {
    double u = rng.uniform(), acc = 0;
    for (int i = 0; i < kNumHandTypes; ++i) {
      acc += dist[i];
      if (u < acc && dist[i] > 0) return i;
    }
    for (int i = kNumHandTypes - 1; i >= 0; --i)
      if (dist[i] > 0) return i;
    return 0;
  };
  const int k = r.round.index();
  const int bf = draw(r.deal.final_prior);
  const int of = draw(r.deal.final_prior);
  const int oc = draw(r.deal.c_given_f[k][of]);
  r.evidence.bpp_current = hand_type_from_ordinal(draw(r.deal.c_given_f[k][bf]));
  r.evidence.opp_upcards = hand_type_from_ordinal(draw(r.deal.u_given_c[k][oc]));
  const double u = rng.uniform();
  if (u < 0.33) r.evidence.opp_action = ActionClass::Conservative;
  else if (u < 0.66) r.evidence.opp_action = ActionClass::Aggressive;
  if (r.evidence.opp_action) {
    const double p = r.action[oc][static_cast<int>(*r.evidence.opp_action)];
    if (p <= 0) r.evidence.opp_action.reset();
  }
  return r;
}

}  // namespace testing
