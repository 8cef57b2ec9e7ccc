#include "bayespoker/players.hpp"

#include <array>

namespace bayespoker {

Evidence evidence_from_view(const PlayerView& view) {
  const auto own = view.own_cards();
  const auto opp_actions = view.opponent_actions_this_round();
  return {classify_cards(own), classify_cards(view.opp_up), action_class_of(opp_actions)};
}

BppResult bpp_decide(const PlayerView& view, const Knowledge& knowledge, const ActionMatrix& action_matrix,
                     const CurveParams& params, Rng& rng, const DecisionConfig& config) {
  BppResult out;
  out.evidence = evidence_from_view(view);
  const NetworkRound net{view.round_id(), &knowledge.deal, &knowledge.win, action_matrix};
  out.belief = infer(net, out.evidence);
  out.decision = choose_action(out.belief.p_win, view.pot, params, view.round_id(), rng, config);
  return out;
}

double estimate_win_probability(const PlayerView& view, std::uint64_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  const std::vector<Card> own = view.own_cards();
  std::uint64_t seen = 0;
  for (const Card& c : own) seen |= std::uint64_t{1} << c.index();
  for (const Card& c : view.opp_up) seen |= std::uint64_t{1} << c.index();

  std::array<Card, 52> unseen;
  int n_unseen = 0;
  for (int i = 0; i < 52; ++i)
    if (!(seen & (std::uint64_t{1} << i))) unseen[n_unseen++] = Card::from_index(i);

  const int own_need = 5 - static_cast<int>(own.size());
  const int opp_known = static_cast<int>(view.opp_up.size());
  const int opp_need = 5 - opp_known;
  const int draws = own_need + opp_need;
  if (own_need < 0 || opp_need < 1 || draws > n_unseen) throw std::invalid_argument("inconsistent view for sampling");

  std::array<Card, 5> mine;
  std::array<Card, 5> theirs;
  std::copy(own.begin(), own.end(), mine.begin());
  std::copy(view.opp_up.begin(), view.opp_up.end(), theirs.begin());

  std::uint64_t doubled = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < draws; ++i) std::swap(unseen[i], unseen[i + rng.below(n_unseen - i)]);
    for (int i = 0; i < own_need; ++i) mine[5 - own_need + i] = unseen[i];
    for (int i = 0; i < opp_need; ++i) theirs[opp_known + i] = unseen[own_need + i];
    const std::uint32_t a = evaluate5_packed(mine.data());
    const std::uint32_t b = evaluate5_packed(theirs.data());
    doubled += a > b ? 2 : (a == b ? 1 : 0);
  }
  return static_cast<double>(doubled) / (2.0 * static_cast<double>(samples));
}

Decision prob_decide(const PlayerView& view, std::uint64_t samples, const CurveParams& params, Rng& rng,
                     const DecisionConfig& config) {
  const double p = estimate_win_probability(view, samples, rng);
  return choose_action(p, view.pot, params, view.round_id(), rng, config);
}

Action rule_decide(const PlayerView& view, Rng& rng, const RuleBook& book) {
  const std::vector<Card> mine = view.own_cards();
  const std::uint32_t my_up = showing_strength(view.own_up);
  const std::uint32_t their_up = showing_strength(view.opp_up);
  const std::uint32_t my_hand = showing_strength(mine);
  const bool my_type_beats_their_up = classify_cards(mine) > classify_cards(view.opp_up);
  const double u = rng.uniform();
  const PotState& pot = view.pot;

  auto mixed = [&](double p_aggressive) { return u < p_aggressive ? aggressive_action(pot) : conservative_action(pot); };

  const bool outer = book.outer_test_is_own_upcards_ahead ? my_up > their_up : their_up > my_up;
  if (outer) {
    if (my_hand > their_up) return mixed(my_type_beats_their_up ? book.strong_aggression : book.modest_aggression);
    if (u < book.beaten_fold) return pot.facing_bet ? Action::Fold : Action::Pass;
    return conservative_action(pot);
  }
  if (!pot.facing_bet) return Action::Bet;
  if (my_type_beats_their_up) return u < book.raise_when_ahead ? aggressive_action(pot) : Action::Call;
  return u < book.call_when_behind ? Action::Call : Action::Fold;
}

BppAgent::BppAgent(std::string id, std::shared_ptr<const Knowledge> knowledge, std::shared_ptr<ActionCountsStore> counts,
                   CurveParams params, Options options)
    : id_(std::move(id)),
      knowledge_(std::move(knowledge)),
      counts_(std::move(counts)),
      params_(params),
      options_(options) {
  if (!knowledge_ || !counts_) throw std::invalid_argument("BppAgent needs knowledge and a counts store");
}

Action BppAgent::decide(const PlayerView& view, Rng& rng) {
  const ActionMatrix am = counts_->matrix(view.opponent_id, view.round_id());
  last_ = bpp_decide(view, *knowledge_, am, params_, rng, options_.decision);
  return last_.decision.action;
}

void BppAgent::observe(const GameRecord& record, int seat) {
  if (options_.learning && record.reason == EndReason::Showdown) learn_from_showdown(*counts_, record, seat);
}

std::optional<Action> evidence_action(std::span<const HistoryEntry> round_history, int my_seat) {
  std::optional<Action> latest;     // opponent's latest action so far
  std::optional<Action> seen;       // latest opponent action followed by one of mine
  int raises = 0;
  bool forced = false;              // latest opponent action was a call at the raise cap
  for (const HistoryEntry& h : round_history) {
    if (h.seat == my_seat) {
      if (latest) seen = latest;
    } else {
      latest = h.action;
      forced = h.action == Action::Call && raises >= kMaxRaisesPerRound;
    }
    if (h.action == Action::Raise) ++raises;
  }
  if (seen) return seen;
  if (latest && !forced) return latest;
  return std::nullopt;
}

void learn_from_showdown(ActionCountsStore& store, const GameRecord& record, int my_seat) {
  if (!record.round_types) return;
  const int opp = 1 - my_seat;
  for (int r = 1; r <= kNumRounds; ++r) {
    std::vector<HistoryEntry> round;
    for (const HistoryEntry& h : record.history)
      if (h.round == r) round.push_back(h);
    const auto action = evidence_action(round, my_seat);
    if (!action) continue;
    const auto cls = class_of(*action);
    if (!cls) continue;
    store.record(record.agent_ids[opp], RoundId(r), (*record.round_types)[opp][r - 1], *cls);
  }
}

ProbabilisticAgent::ProbabilisticAgent(std::string id, CurveParams params, std::uint64_t samples, DecisionConfig config)
    : id_(std::move(id)), params_(params), samples_(samples), config_(config) {}

Action ProbabilisticAgent::decide(const PlayerView& view, Rng& rng) {
  return prob_decide(view, samples_, params_, rng, config_).action;
}

Action ThresholdAgent::decide(const PlayerView& view, Rng& /*rng*/) {
  const auto mine = view.own_cards();
  return classify_cards(mine) >= threshold_ ? aggressive_action(view.pot) : conservative_action(view.pot);
}

}  // namespace bayespoker
