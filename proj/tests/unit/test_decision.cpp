#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "bayespoker/decision.hpp"
#include "support/oracles.hpp"

using namespace bayespoker;

namespace {

PotState pot(double c, double k, bool facing = false, int raises = 0) { return {c, k, facing, raises}; }

}  // namespace

TEST_CASE("threshold examples") {
  CHECK(threshold(pot(2, 1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(threshold(pot(4, 2)) == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  CHECK(threshold(pot(1e12, 2)) < 1e-11);
  CHECK_THROWS_AS(threshold(pot(-5, 1)), DecisionError);
  CHECK(expected_cost_to_showdown(RoundId(1)) == 4.0);
  CHECK(expected_cost_to_showdown(RoundId(4)) == 1.0);
}

TEST_CASE("pot-odds variants") {
  const PotOddsVariants v = pot_odds_variants(pot(4, 2));
  CHECK(v.zadeh == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(v.midtable == doctest::Approx(4.0 / 11.0).epsilon(1e-15));
  CHECK(v.correct == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
  CHECK(odds_to_probability(v.correct) == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
  // Two players, unit bets: the midtable denominator is c + k - 1/2.
  CHECK(pot_odds_midtable(4, 2, 2, 1) == doctest::Approx(2.0 / (4 + 2 - 0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(pot_odds_heads_up(0, 1), DecisionError);
}

TEST_CASE("pot-odds chain agrees with first principles on a grid") {
  for (int i = 0; i < 20; ++i) {
    const double c = 2.0 + 1.7 * i;
    const double k = 1.0 + (i % 4);
    CHECK(std::abs(pot_odds_zadeh(c, k, 2) - oracle::zadeh(c, k, 2)) <= 1e-12);
    CHECK(std::abs(pot_odds_midtable(c, k, 2, 1.0) - oracle::midtable(c, k, 2, 1.0)) <= 1e-12);
    CHECK(std::abs(pot_odds_heads_up(c, k) - oracle::heads_up(c, k)) <= 1e-12);
    CHECK(std::abs(threshold(pot(c, k)) - oracle::odds_to_p(oracle::heads_up(c, k))) <= 1e-12);
  }
}

TEST_CASE("curves match the tanh-form reimplementation and hit their midpoints") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const RoundCurves f{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5};
    for (int i = -100; i <= 100; ++i) {
      const double d = i / 100.0;
      const CurveWeights w = curve_weights(d, f);
      CHECK(std::abs(w.bet_raise - oracle::bet_curve(d, f.f_b)) <= 1e-12);
      CHECK(std::abs(w.fold - oracle::fold_curve(d, f.f_f)) <= 1e-12);
      CHECK(std::abs(w.call - oracle::call_curve(d, f.f_c)) <= 1e-12);
    }
    CHECK(curve_weights(f.f_b, f).bet_raise == 0.5);
    CHECK(curve_weights(-f.f_f, f).fold == 0.5);
    CHECK(curve_weights(-f.f_c, f).call == 0.5);
  }
}

TEST_CASE("action distribution masking") {
  const RoundCurves f{};
  for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const auto open = action_distribution(p, pot(6, 2, false), f);
    CHECK(prob(open, Action::Fold) == 0.0);
    CHECK(prob(open, Action::Call) == 0.0);
    CHECK(prob(open, Action::Raise) == 0.0);
    CHECK(prob(open, Action::Pass) + prob(open, Action::Bet) == doctest::Approx(1.0).epsilon(1e-12));

    const auto capped = action_distribution(p, pot(12, 2, true, kMaxRaisesPerRound), f);
    CHECK(prob(capped, Action::Raise) == 0.0);
    CHECK(prob(capped, Action::Bet) == 0.0);
    CHECK(prob(capped, Action::Fold) + prob(capped, Action::Call) == doctest::Approx(1.0).epsilon(1e-12));

    const auto facing = action_distribution(p, pot(6, 2, true, 1), f);
    double s = 0;
    for (double x : facing) s += x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a certain winner almost never folds") {
  // Facing a bet the pot holds at least both antes and the bet. Holds for any
  // non-negative fold shift with |f| <= 0.3 (see the design notes for the
  // negative-shift counterexample).
  for (double fb = -0.3; fb <= 0.3001; fb += 0.1)
    for (double ff = 0.0; ff <= 0.3001; ff += 0.1)
      for (double fc = -0.3; fc <= 0.3001; fc += 0.1)
        for (int raises = 0; raises < kMaxRaisesPerRound; ++raises)
          for (double c : {3.0, 5.0, 20.0})
            for (double k : {1.0, 2.0, 4.0}) {
              const auto dist = action_distribution(1.0, pot(c + raises, k, true, raises), {fb, ff, fc});
              CHECK(prob(dist, Action::Fold) < 0.01);
            }
  // The bound does fail for strongly negative fold shifts.
  const auto dist = action_distribution(1.0, pot(3, 4, true, 0), {0.3, -0.3, 0.3});
  CHECK(prob(dist, Action::Fold) > 0.01);
}

TEST_CASE("choose_action sampling and bluffing") {
  CurveParams params;
  SUBCASE("deterministic given the seed") {
    Rng a(77), b(77);
    for (int i = 0; i < 100; ++i) {
      const double p = i / 100.0;
      CHECK(choose_action(p, pot(4, 2, i % 2 == 1), params, RoundId(4), a).action ==
            choose_action(p, pot(4, 2, i % 2 == 1), params, RoundId(4), b).action);
    }
  }
  SUBCASE("empirical frequencies follow the distribution") {
    Rng rng(1);
    const PotState ps = pot(6, 3, true, 1);
    const auto dist = action_distribution(0.4, ps, params.at(RoundId(2)));
    std::array<int, kNumActions> n{};
    const int trials = 200'000;
    for (int i = 0; i < trials; ++i) ++n[static_cast<int>(choose_action(0.4, ps, params, RoundId(2), rng).action)];
    for (int a = 0; a < kNumActions; ++a) CHECK(std::abs(n[a] / double(trials) - dist[a]) < 0.005);
  }
  SUBCASE("bluffs only in round 4, only conservative to aggressive") {
    Rng rng(2);
    int eligible = 0, bluffs = 0;
    for (int i = 0; i < 50'000; ++i) {
      const Decision early = choose_action(0.1, pot(6, 2, false), params, RoundId(3), rng);
      CHECK_FALSE(early.bluffed);
      const Decision d = choose_action(0.1, pot(6, 1, false), params, RoundId(4), rng);
      if (d.bluffed) {
        CHECK(d.action == Action::Bet);
        CHECK(d.sampled == Action::Pass);
      }
      if (d.sampled == Action::Pass) {
        ++eligible;
        bluffs += d.bluffed;
      }
      const Decision capped = choose_action(0.1, pot(12, 1, true, kMaxRaisesPerRound), params, RoundId(4), rng);
      CHECK_FALSE(capped.bluffed);
    }
    CHECK(std::abs(bluffs / double(eligible) - 0.05) < 0.01);
  }
  SUBCASE("bluffing can be disabled") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i)
      CHECK_FALSE(choose_action(0.0, pot(6, 1), params, RoundId(4), rng, {.bluff_probability = 0.0}).bluffed);
  }
  SUBCASE("rejects impossible probabilities") {
    Rng rng(4);
    CHECK_THROWS_AS(choose_action(1.5, pot(2, 4), params, RoundId(1), rng), DecisionError);
    CHECK_THROWS_AS(choose_action(std::nan(""), pot(2, 4), params, RoundId(1), rng), DecisionError);
  }
}

TEST_CASE("legality helpers") {
  CHECK(aggressive_action(pot(2, 4)) == Action::Bet);
  CHECK(aggressive_action(pot(3, 4, true)) == Action::Raise);
  CHECK(aggressive_action(pot(9, 4, true, 3)) == Action::Call);
  CHECK(conservative_action(pot(2, 4)) == Action::Pass);
  CHECK(conservative_action(pot(3, 4, true)) == Action::Call);
  CHECK_FALSE(is_legal(Action::Fold, pot(2, 4)));
  CHECK(is_legal(Action::Fold, pot(3, 4, true)));
  CHECK_FALSE(is_legal(Action::Raise, pot(9, 4, true, 3)));
}

TEST_CASE("curve parameter files") {
  CurveParams p;
  p.at(RoundId(3)) = {0.25, -0.125, 0.3};
  const auto flat = p.flatten();
  CHECK(flat[6] == 0.25);
  CHECK(CurveParams::unflatten(flat) == p);
  CHECK(parse_curves(dump_curves(p)) == p);
  CHECK(parse_curves(R"({"1":{"f_b":0.1,"f_f":0.05,"f_c":0.05},"2":{"f_b":0.1,"f_f":0.05,"f_c":0.05},
                        "3":{"f_b":0.1,"f_f":0.05,"f_c":0.05},"4":{"f_b":0.1,"f_f":0.05,"f_c":0.05},
                        "audit":{}})") == CurveParams{});
  CHECK_THROWS_AS(parse_curves(R"({"1":{"f_b":0.1}})"), DecisionError);
  CHECK_THROWS_AS(parse_curves("{"), DecisionError);
  const auto path = (std::filesystem::temp_directory_path() / "bayespoker_curves.json").string();
  save_curves(path, p);
  CHECK(load_curves(path) == p);
  std::filesystem::remove(path);
}
