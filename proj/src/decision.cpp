#include "bayespoker/decision.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bayespoker {

using json = nlohmann::json;

namespace {

double checked_ratio(double num, double den, const char* formula) {
  if (!(den > 0.0)) throw DecisionError(std::string(formula) + ": nonpositive denominator");
  return num / den;
}

}  // namespace

double expected_cost_to_showdown(RoundId round, double unit) { return unit * (kNumRounds - round.value() + 1); }

double pot_odds_zadeh(double c, double k, int n) { return checked_ratio(k, c + (n - 1) * k, "zadeh pot odds"); }

double pot_odds_midtable(double c, double k, int n, double u) {
  return checked_ratio(k, c + (n - 1) * k - (n - 1) / 2.0 * u, "midtable pot odds");
}

double pot_odds_heads_up(double c, double k) { return checked_ratio(k, c + k - 1.0, "heads-up pot odds"); }

double odds_to_probability(double odds) { return checked_ratio(odds, 1.0 + odds, "odds to probability"); }

double threshold(const PotState& pot) {
  return checked_ratio(pot.cost_to_showdown, pot.pot + 2.0 * pot.cost_to_showdown - 1.0, "calling threshold");
}

PotOddsVariants pot_odds_variants(const PotState& pot) {
  return {pot_odds_zadeh(pot.pot, pot.cost_to_showdown, PotState::kPlayers),
          pot_odds_midtable(pot.pot, pot.cost_to_showdown, PotState::kPlayers, PotState::kUnit),
          pot_odds_heads_up(pot.pot, pot.cost_to_showdown)};
}

std::array<double, 12> CurveParams::flatten() const {
  std::array<double, 12> v{};
  for (int r = 0; r < 4; ++r) {
    v[3 * r] = rounds[r].f_b;
    v[3 * r + 1] = rounds[r].f_f;
    v[3 * r + 2] = rounds[r].f_c;
  }
  return v;
}

CurveParams CurveParams::unflatten(const std::array<double, 12>& v) {
  CurveParams p;
  for (int r = 0; r < 4; ++r) p.rounds[r] = {v[3 * r], v[3 * r + 1], v[3 * r + 2]};
  return p;
}

std::string dump_curves(const CurveParams& params) {
  json j = json::object();
  for (int r = 0; r < 4; ++r)
    j[std::to_string(r + 1)] = {{"f_b", params.rounds[r].f_b}, {"f_f", params.rounds[r].f_f}, {"f_c", params.rounds[r].f_c}};
  return j.dump(2);
}

CurveParams parse_curves(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DecisionError(std::string("curve file parse error: ") + e.what());
  }
  CurveParams p;
  for (int r = 0; r < 4; ++r) {
    const std::string key = std::to_string(r + 1);
    if (!j.contains(key)) throw DecisionError("curve file: missing round " + key);
    const json& o = j[key];
    RoundCurves& rc = p.rounds[r];
    for (auto [name, slot] : {std::pair{"f_b", &rc.f_b}, std::pair{"f_f", &rc.f_f}, std::pair{"f_c", &rc.f_c}}) {
      if (!o.contains(name) || !o[name].is_number()) throw DecisionError("curve file: round " + key + " lacks " + name);
      *slot = o[name].get<double>();
      if (!std::isfinite(*slot)) throw DecisionError("curve file: non-finite parameter");
    }
  }
  return p;
}

CurveParams load_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DecisionError("cannot open curve file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curves(ss.str());
}

void save_curves(const std::string& path, const CurveParams& params) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DecisionError("cannot write curve file " + path);
  out << dump_curves(params) << '\n';
}

CurveWeights curve_weights(double d, const RoundCurves& f) {
  return {1.0 / (1.0 + std::exp(-8.0 * (d - f.f_b))), 1.0 / (1.0 + std::exp(8.0 * (d + f.f_f))),
          std::exp(-20.0 * (d + f.f_c) * (d + f.f_c)) / 2.0};
}

Action aggressive_action(const PotState& pot) {
  if (!pot.facing_bet) return Action::Bet;
  return pot.raises_this_round < kMaxRaisesPerRound ? Action::Raise : Action::Call;
}

Action conservative_action(const PotState& pot) { return pot.facing_bet ? Action::Call : Action::Pass; }

bool is_legal(Action a, const PotState& pot) {
  switch (a) {
    case Action::Pass:
    case Action::Bet: return !pot.facing_bet;
    case Action::Call:
    case Action::Fold: return pot.facing_bet;
    case Action::Raise: return pot.facing_bet && pot.raises_this_round < kMaxRaisesPerRound;
  }
  return false;
}

ActionDistribution action_distribution(double p_win, const PotState& pot, const RoundCurves& f) {
  const CurveWeights w = curve_weights(p_win - threshold(pot), f);
  ActionDistribution dist{};
  auto add = [&](Action a, double x) { dist[static_cast<int>(a)] += x; };
  add(aggressive_action(pot), w.bet_raise);
  add(conservative_action(pot), w.call);
  add(pot.facing_bet ? Action::Fold : conservative_action(pot), w.fold);
  double z = 0;
  for (double x : dist) z += x;
  for (double& x : dist) x /= z;
  return dist;
}

Decision choose_action(double p_win, const PotState& pot, const CurveParams& params, RoundId round, Rng& rng,
                       const DecisionConfig& config) {
  if (!(p_win >= 0.0 && p_win <= 1.0)) throw DecisionError("p_win outside [0,1]");
  Decision d;
  d.p_win = p_win;
  d.theta = threshold(pot);
  d.distribution = action_distribution(p_win, pot, params.at(round));

  const double u = rng.uniform();
  double acc = 0;
  d.sampled = conservative_action(pot);
  for (int i = 0; i < kNumActions; ++i) {
    if (d.distribution[i] <= 0.0) continue;
    acc += d.distribution[i];
    d.sampled = static_cast<Action>(i);
    if (u < acc) break;
  }
  d.action = d.sampled;

  const Action aggressive = aggressive_action(pot);
  const bool can_escalate = class_of(aggressive) == ActionClass::Aggressive;
  if (round.value() == kNumRounds && class_of(d.sampled) == ActionClass::Conservative && can_escalate &&
      rng.bernoulli(config.bluff_probability)) {
    d.action = aggressive;
    d.bluffed = true;
  }
  return d;
}

}  // namespace bayespoker
