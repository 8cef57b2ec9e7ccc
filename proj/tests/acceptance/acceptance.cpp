// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bayespoker/harness.hpp"
#include "bayespoker/reference.hpp"
#include "support/oracles.hpp"
#include "support/random_cpts.hpp"

using namespace bayespoker;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome table_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  const DealEstimate est = estimate_deal_matrices(1'000'000, 20240601);
  const double secs = seconds_since(t0);
  const auto cats = collapse_to_categories(est.matrices.final_prior);
  double worst = 0;
  for (int c = 0; c < kNumCategories; ++c) worst = std::max(worst, std::abs(cats[c] - kCategoryReferenceProbabilities[c]));

  std::array<std::uint64_t, kNumCategories> counts{};
  std::array<Card, 5> h;
  for (int a = 0; a < 52; ++a)
    for (int b = a + 1; b < 52; ++b)
      for (int c = b + 1; c < 52; ++c)
        for (int d = c + 1; d < 52; ++d)
          for (int e = d + 1; e < 52; ++e) {
            h = {Card::from_index(a), Card::from_index(b), Card::from_index(c), Card::from_index(d), Card::from_index(e)};
            ++counts[static_cast<int>(category_of(classify_final(h)))];
          }
  const std::array<std::uint64_t, kNumCategories> exact{1303560, 1098240, 123552, 54912, 9180, 5112, 3744, 624, 36};
  const bool exhaustive_ok = counts == exact;
  return {worst <= 0.002 && exhaustive_ok && secs <= 120.0,
          fmt("max |MC - reference| %.5f over 1M deals in %.1fs; exhaustive straight flushes %llu/2598960 %s", worst, secs,
              static_cast<unsigned long long>(counts[kNumCategories - 1]), exhaustive_ok ? "(all counts exact)" : "(MISMATCH)")};
}

Outcome pot_odds_chain() {
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double c = 2.0 + 1.37 * i;
    const double k = 1.0 + (i % 5) * 0.5;
    const int n = 2 + i % 4;
    worst = std::max(worst, std::abs(pot_odds_zadeh(c, k, n) - oracle::zadeh(c, k, n)));
    worst = std::max(worst, std::abs(pot_odds_midtable(c, k, n, 1.0) - oracle::midtable(c, k, n, 1.0)));
    worst = std::max(worst, std::abs(pot_odds_heads_up(c, k) - oracle::heads_up(c, k)));
    worst = std::max(worst, std::abs(threshold({c, k, false, 0}) - oracle::odds_to_p(oracle::heads_up(c, k))));
  }
  const double reduction = std::abs(pot_odds_midtable(7, 3, 2, 1) - 3.0 / (7 + 3 - 0.5));
  return {worst <= 1e-12 && reduction <= 1e-12, fmt("80 grid evaluations, max error %.2e; two-player reduction error %.2e", worst, reduction)};
}

Outcome curve_equations() {
  Rng rng(8);
  double worst = 0;
  bool midpoints = true;
  for (int trial = 0; trial < 50; ++trial) {
    const RoundCurves f{rng.uniform() - 0.5, rng.uniform() - 0.5, rng.uniform() - 0.5};
    for (int i = -200; i <= 200; ++i) {
      const double d = i / 200.0;
      const CurveWeights w = curve_weights(d, f);
      worst = std::max({worst, std::abs(w.bet_raise - oracle::bet_curve(d, f.f_b)),
                        std::abs(w.fold - oracle::fold_curve(d, f.f_f)), std::abs(w.call - oracle::call_curve(d, f.f_c))});
    }
    midpoints = midpoints && curve_weights(f.f_b, f).bet_raise == 0.5 && curve_weights(-f.f_f, f).fold == 0.5 &&
                curve_weights(-f.f_c, f).call == 0.5;
  }
  return {worst <= 1e-12 && midpoints, fmt("max error %.2e on d in [-1,1]; midpoints %s", worst, midpoints ? "exact" : "off")};
}

Outcome inference_oracle() {
  Rng rng(2718);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const testing::RandomNetwork r = testing::random_network(rng);
    const BeliefState got = infer(r.net(), r.evidence);
    const BeliefState want = oracle::enumerate(r.net(), r.evidence);
    worst = std::max(worst, std::abs(got.p_win - want.p_win));
    for (int i = 0; i < kNumHandTypes; ++i)
      worst = std::max({worst, std::abs(got.bpp_final[i] - want.bpp_final[i]), std::abs(got.opp_final[i] - want.opp_final[i]),
                        std::abs(got.opp_current[i] - want.opp_current[i])});
  }
  return {worst <= 1e-9, fmt("1000 random networks, max deviation from 17^3 enumeration %.2e", worst)};
}

struct Artifacts {
  std::shared_ptr<const Knowledge> knowledge;
  std::map<std::string, ActionCounts> counts;
  CurveParams curves;
  std::string curves_source;
};

Artifacts load_artifacts(const fs::path& dir, const std::string& curve_file) {
  const MatrixSet set = load_matrices(dir / "matrices.json");
  Artifacts a;
  a.knowledge = std::make_shared<const Knowledge>(Knowledge{set.deal, set.win});
  a.counts = set.action_counts;
  const fs::path curves = dir / curve_file;
  if (fs::exists(curves)) {
    a.curves = load_curves(curves.string());
    a.curves_source = curves.filename().string();
  } else {
    a.curves_source = "default curves";
  }
  return a;
}

Outcome experiment(const Artifacts& art, OpponentKind kind, std::uint64_t seed) {
  auto counts = std::make_shared<ActionCountsStore>(art.counts);
  BppAgent bpp("bpp", art.knowledge, counts, art.curves);
  auto opponent = make_opponent(kind, std::string(to_string(kind)), art.curves);
  const auto t0 = std::chrono::steady_clock::now();
  const MatchResult m = run_match(bpp, *opponent, {.games = 2000, .seed = seed, .keep_records = false});
  const double secs = seconds_since(t0);
  const MatchStats& s = m.stats;
  return {s.mean > 0 && s.p <= 0.01 && secs <= 600.0,
          fmt("2000 games (%s), mean %+.3f, sd %.3f, t %+.2f, p %.4f, %.0fs", art.curves_source.c_str(), s.mean, s.sd, s.t, s.p,
              secs)};
}

Outcome learning(const Artifacts& art) {
  auto counts = std::make_shared<ActionCountsStore>();
  BppAgent bpp("bpp", art.knowledge, counts, art.curves);
  ThresholdAgent script("script", HandType17::PairLow);
  std::uint64_t showdowns = 0, g = 0;
  while (showdowns < 10'000) {
    const GameRecord rec = g % 2 == 0 ? play_game(bpp, script, derive_seed(99, g)) : play_game(script, bpp, derive_seed(99, g));
    showdowns += rec.reason == EndReason::Showdown;
    ++g;
  }
  const ActionCounts& learned = counts->counts("script");
  double worst = 0;
  int rows = 0;
  for (int r = 1; r <= 4; ++r) {
    const ActionMatrix m = learned.matrix(RoundId(r));
    for (int t = 0; t < kNumHandTypes; ++t) {
      const HandType17 type = hand_type_from_ordinal(t);
      if (learned.observations(RoundId(r), type) < 100) continue;
      const double want = type >= HandType17::PairLow ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(m[t][1] - want));
      ++rows;
    }
  }
  return {rows > 0 && worst <= 0.03,
          fmt("%llu showdowns in %llu games; %d rows with >= 100 observations, max deviation %.4f",
              static_cast<unsigned long long>(showdowns), static_cast<unsigned long long>(g), rows, worst)};
}

Outcome bluff_rate() {
  Rng rng(555);
  const CurveParams params;
  std::uint64_t eligible = 0, bluffs = 0;
  while (eligible < 100'000) {
    const double p = rng.uniform();
    const bool facing = rng.uniform() < 0.5;
    const PotState pot{2.0 + 10.0 * rng.uniform(), 1.0, facing, facing ? static_cast<int>(rng.below(3)) : 0};
    const Decision d = choose_action(p, pot, params, RoundId(4), rng);
    if (d.sampled == conservative_action(pot)) {
      ++eligible;
      bluffs += d.bluffed;
    }
  }
  const double rate = static_cast<double>(bluffs) / static_cast<double>(eligible);
  return {std::abs(rate - 0.05) <= 0.005, fmt("%llu bluffs in %llu eligible round-4 decisions: %.4f",
                                             static_cast<unsigned long long>(bluffs), static_cast<unsigned long long>(eligible), rate)};
}

Outcome conservation(const Artifacts& art) {
  auto run = [&](std::string& log) {
    BppAgent bpp("bpp", art.knowledge, std::make_shared<ActionCountsStore>(), art.curves);
    RuleBasedAgent rules("rules");
    std::ostringstream out;
    const MatchResult m = run_match(bpp, rules, {.games = 10'000, .seed = 31337, .record_log = &out, .keep_records = true});
    long total = 0;
    for (const GameRecord& r : m.records) total += r.net[0] + r.net[1];
    log = out.str();
    return total;
  };
  std::string first, second;
  const long sum1 = run(first);
  const long sum2 = run(second);
  const bool same = first == second;
  return {sum1 == 0 && sum2 == 0 && same,
          fmt("10000 games, sum of nets %ld; replayed log %s (%zu bytes)", sum1, same ? "byte-identical" : "DIFFERS", first.size())};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bayespoker acceptance checks"};
  std::string data_dir = "data";
  std::string only;
  app.add_option("--data-dir", data_dir, "Directory holding matrices.json and curve files");
  app.add_option("--only", only, "Run only criteria whose name contains this text");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  auto report = [&](const std::string& name, const std::function<Outcome()>& check) {
    if (!only.empty() && name.find(only) == std::string::npos) return;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  };

  report("table-1-category-probabilities", table_reproduction);
  report("pot-odds-chain", pot_odds_chain);
  report("curve-equations", curve_equations);
  report("inference-oracle-equivalence", inference_oracle);

  std::optional<Artifacts> for_prob, for_rules;
  auto artifacts = [&](std::optional<Artifacts>& slot, const char* curve_file) -> const Artifacts& {
    if (!slot) slot = load_artifacts(data_dir, curve_file);
    return *slot;
  };
  report("bpp-vs-probabilistic", [&] { return experiment(artifacts(for_prob, "curves_prob.json"), OpponentKind::Probabilistic, 2001); });
  report("bpp-vs-rule-based", [&] { return experiment(artifacts(for_rules, "curves.json"), OpponentKind::RuleBased, 2002); });
  report("learning-vs-scripted", [&] { return learning(artifacts(for_rules, "curves.json")); });
  report("bluff-rate", bluff_rate);
  report("conservation-and-determinism", [&] { return conservation(artifacts(for_rules, "curves.json")); });
  return failed;
}
