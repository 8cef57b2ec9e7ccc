#pragma once
// Independent reference implementations used only by tests. Each one is
// written from the rules directly and shares no code with the library
// beyond the plain data types.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "bayespoker/cards.hpp"
#include "bayespoker/inference.hpp"
#include "bayespoker/matrices.hpp"

namespace oracle {

using namespace bayespoker;

inline int band_offset(int rank) {
  if (rank <= 9) return 0;
  if (rank <= 11) return 1;
  return rank - 10;  // Q=2, K=3, A=4
}

/// Straightforward 1-5 card labeling by rank counting.
inline HandType17 classify(const std::vector<Card>& cards) {
  std::map<int, int> count;
  std::map<int, int> suits;
  for (const Card& c : cards) {
    ++count[c.rank()];
    ++suits[static_cast<int>(c.suit())];
  }
  int quads = 0, trips = 0;
  std::vector<int> pairs;
  for (auto [rank, n] : count) {
    if (n == 4) ++quads;
    if (n == 3) ++trips;
    if (n == 2) pairs.push_back(rank);
  }
  const int hi = count.rbegin()->first;
  const int lo = count.begin()->first;
  const bool distinct = count.size() == cards.size();
  const bool one_suit = suits.size() == 1 && cards.size() >= 2;
  const bool run = distinct && cards.size() >= 2 && hi - lo <= 4;

  if (cards.size() == 5) {
    const bool straight = distinct && hi - lo == 4;
    if (straight && one_suit) return HandType17::StraightFlush;
    if (quads) return HandType17::FourOfAKind;
    if (trips && pairs.size() == 1) return HandType17::FullHouse;
    if (one_suit) return HandType17::Flush;
    if (straight) return HandType17::Straight;
  } else {
    if (quads) return HandType17::FourOfAKind;
    if (trips && pairs.size() == 1) return HandType17::FullHouse;
    if (run && one_suit) return HandType17::StraightFlush;
    if (one_suit) return HandType17::Flush;
    if (run) return HandType17::Straight;
  }
  if (trips) return HandType17::Triple;
  if (pairs.size() >= 2) return HandType17::TwoPair;
  if (pairs.size() == 1) return hand_type_from_ordinal(ordinal(HandType17::PairLow) + band_offset(pairs[0]));
  return hand_type_from_ordinal(ordinal(HandType17::BustedLow) + band_offset(hi));
}

/// Five-card strength as a vector compared lexicographically: category
/// (0..8) followed by ranks grouped by multiplicity, larger groups first.
inline std::vector<int> strength(const std::vector<Card>& five) {
  std::map<int, int> count;
  std::map<int, int> suits;
  for (const Card& c : five) {
    ++count[c.rank()];
    ++suits[static_cast<int>(c.suit())];
  }
  std::vector<std::pair<int, int>> groups;  // (multiplicity, rank)
  for (auto [r, n] : count) groups.emplace_back(n, r);
  std::sort(groups.rbegin(), groups.rend());
  const bool flush = suits.size() == 1;
  const bool straight = count.size() == 5 && count.rbegin()->first - count.begin()->first == 4;
  int cat;
  if (straight && flush) cat = 8;
  else if (groups[0].first == 4) cat = 7;
  else if (groups[0].first == 3 && groups[1].first == 2) cat = 6;
  else if (flush) cat = 5;
  else if (straight) cat = 4;
  else if (groups[0].first == 3) cat = 3;
  else if (groups[0].first == 2 && groups[1].first == 2) cat = 2;
  else if (groups[0].first == 2) cat = 1;
  else cat = 0;
  std::vector<int> out{cat};
  for (auto [n, r] : groups) out.push_back(r);
  return out;
}

inline int compare(const std::vector<Card>& a, const std::vector<Card>& b) {
  const auto x = strength(a);
  const auto y = strength(b);
  return x > y ? 1 : (x < y ? -1 : 0);
}

/// Exact win probability (ties half) for a view with known cards, by
/// enumerating every completion of both hands from the unseen cards.
inline double exact_win_probability(const std::vector<Card>& own, const std::vector<Card>& opp_known) {
  std::vector<Card> unseen;
  for (int i = 0; i < 52; ++i) {
    const Card c = Card::from_index(i);
    if (std::find(own.begin(), own.end(), c) == own.end() &&
        std::find(opp_known.begin(), opp_known.end(), c) == opp_known.end())
      unseen.push_back(c);
  }
  const std::size_t own_need = 5 - own.size();
  const std::size_t opp_need = 5 - opp_known.size();
  double credit = 0;
  double total = 0;
  // Own completions as index combinations, then opponent combinations of the rest.
  std::vector<int> sel(unseen.size(), 0);
  std::fill(sel.begin(), sel.begin() + static_cast<std::ptrdiff_t>(own_need), 1);
  std::sort(sel.begin(), sel.end(), std::greater<int>());
  do {
    std::vector<Card> mine = own;
    std::vector<Card> rest;
    for (std::size_t i = 0; i < unseen.size(); ++i) (sel[i] ? mine : rest).push_back(unseen[i]);
    std::vector<int> osel(rest.size(), 0);
    std::fill(osel.begin(), osel.begin() + static_cast<std::ptrdiff_t>(opp_need), 1);
    std::sort(osel.begin(), osel.end(), std::greater<int>());
    do {
      std::vector<Card> theirs = opp_known;
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (osel[i]) theirs.push_back(rest[i]);
      const int c = compare(mine, theirs);
      credit += c > 0 ? 1.0 : (c == 0 ? 0.5 : 0.0);
      total += 1.0;
    } while (std::prev_permutation(osel.begin(), osel.end()));
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return credit / total;
}

/// Posterior by summing the full joint over (BPP_Final, OPP_Final,
/// OPP_Current) with likelihood vectors on the observed leaves.
inline BeliefState enumerate(const Vec17& prior, const Mat17& c_given_f, const Mat17& u_given_c,
                             const ActionMatrix& action, const Mat17& w, const Vec17& bpp_current_lik,
                             const Vec17& opp_upcards_lik, const std::array<double, 2>& opp_action_lik) {
  BeliefState b{};
  double z = 0;
  double win = 0;
  for (int bf = 0; bf < kNumHandTypes; ++bf) {
    double e_bpp = 0;
    for (int bc = 0; bc < kNumHandTypes; ++bc) e_bpp += c_given_f[bf][bc] * bpp_current_lik[bc];
    for (int of = 0; of < kNumHandTypes; ++of) {
      for (int oc = 0; oc < kNumHandTypes; ++oc) {
        double e_up = 0;
        for (int u = 0; u < kNumHandTypes; ++u) e_up += u_given_c[oc][u] * opp_upcards_lik[u];
        const double e_act = action[oc][0] * opp_action_lik[0] + action[oc][1] * opp_action_lik[1];
        const double p = prior[bf] * e_bpp * prior[of] * c_given_f[of][oc] * e_up * e_act;
        z += p;
        b.bpp_final[bf] += p;
        b.opp_final[of] += p;
        b.opp_current[oc] += p;
        win += p * w[bf][of];
      }
    }
  }
  for (int i = 0; i < kNumHandTypes; ++i) {
    b.bpp_final[i] /= z;
    b.opp_final[i] /= z;
    b.opp_current[i] /= z;
  }
  b.p_win = win / z;
  return b;
}

inline Vec17 indicator(HandType17 t) {
  Vec17 v{};
  v[ordinal(t)] = 1.0;
  return v;
}

inline BeliefState enumerate(const NetworkRound& net, const Evidence& ev) {
  std::array<double, 2> act{1.0, 1.0};
  if (ev.opp_action) act = *ev.opp_action == ActionClass::Aggressive ? std::array{0.0, 1.0} : std::array{1.0, 0.0};
  return enumerate(net.deal->final_prior, net.c_given_f(), net.u_given_c(), net.action, net.win->w,
                   indicator(ev.bpp_current), indicator(ev.opp_upcards), act);
}

// Betting curves, written in the tanh form of the logistic function.
inline double bet_curve(double d, double f_b) { return 0.5 * (1.0 + std::tanh(4.0 * (d - f_b))); }
inline double fold_curve(double d, double f_f) { return 0.5 * (1.0 - std::tanh(4.0 * (d + f_f))); }
inline double call_curve(double d, double f_c) { return 0.5 / std::exp(20.0 * (d + f_c) * (d + f_c)); }

// Pot odds from first principles: cost over what the pot will hold.
inline double zadeh(double c, double k, int n) { return k / (c + (n - 1) * k); }
inline double midtable(double c, double k, int n, double u) { return k / (c + (n - 1) * k - (n - 1) * u / 2.0); }
inline double heads_up(double c, double k) { return k / (c + k - 1.0); }
inline double odds_to_p(double o) { return o / (1.0 + o); }

}  // namespace oracle
