#include "bayespoker/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace bayespoker {

using json = nlohmann::json;

std::vector<Card> PlayerView::own_cards() const {
  std::vector<Card> cards{own_hole};
  cards.insert(cards.end(), own_up.begin(), own_up.end());
  return cards;
}

std::vector<Action> PlayerView::opponent_actions_this_round() const {
  std::vector<Action> out;
  for (const HistoryEntry& h : round_history)
    if (h.seat != seat) out.push_back(h.action);
  return out;
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Betting: return "betting";
    case Phase::Showdown: return "showdown";
    case Phase::Settled: return "settled";
    case Phase::Folded: return "folded";
  }
  return "?";
}

std::string_view to_string(EndReason r) {
  switch (r) {
    case EndReason::Showdown: return "showdown";
    case EndReason::Fold: return "fold";
    case EndReason::Forfeit: return "forfeit";
  }
  return "?";
}

std::vector<Action> legal_actions(bool facing_bet, int raises_this_round) {
  if (!facing_bet) return {Action::Pass, Action::Bet};
  std::vector<Action> out{Action::Fold, Action::Call};
  if (raises_this_round < kMaxRaisesPerRound) out.push_back(Action::Raise);
  return out;
}

int first_to_act(const std::vector<Card>& up0, const std::vector<Card>& up1) {
  auto key = [](const std::vector<Card>& up) {
    int top = 0;
    for (const Card& c : up) top = std::max(top, c.rank());
    return std::pair{ordinal(classify_cards(up)), top};
  };
  return key(up1) > key(up0) ? 1 : 0;
}

Game::Game(std::uint64_t seed, GameConfig config, std::array<std::string, 2> ids)
    : Game(Deck::shuffled(derive_seed(seed, 0)), seed, config, std::move(ids)) {}

Game::Game(Deck deck, std::uint64_t seed, GameConfig config, std::array<std::string, 2> ids)
    : config_(config), deck_(std::move(deck)), ids_(std::move(ids)) {
  if (deck_.remaining() < 10) throw std::invalid_argument("a stud deck needs at least 10 cards");
  record_.seed = seed;
  record_.agent_ids = ids_;
  contributions_ = {config_.ante, config_.ante};
  deal_round();
  start_betting_round();
}

void Game::deal_round() {
  ++round_;
  if (round_ == 1) {
    hole_[0] = deck_.deal_one();
    hole_[1] = deck_.deal_one();
  }
  up_[0].push_back(deck_.deal_one());
  up_[1].push_back(deck_.deal_one());
}

void Game::start_betting_round() {
  raises_ = 0;
  passes_ = 0;
  rejections_ = 0;
  round_contrib_ = {0, 0};
  to_act_ = first_to_act(up_[0], up_[1]);
}

bool Game::facing_bet() const { return round_contrib_[to_act_] < round_contrib_[1 - to_act_]; }

std::vector<Action> Game::legal_actions() const {
  if (phase_ != Phase::Betting) return {};
  return bayespoker::legal_actions(facing_bet(), raises_);
}

PotState Game::pot_state() const {
  PotState p;
  p.pot = pot();
  p.cost_to_showdown = expected_cost_to_showdown(RoundId(round_), config_.unit);
  p.facing_bet = facing_bet();
  p.raises_this_round = raises_;
  return p;
}

PlayerView Game::view(int seat) const {
  PlayerView v;
  v.seat = seat;
  v.round = round_;
  v.own_hole = hole_[seat];
  v.own_up = up_[seat];
  v.opp_up = up_[1 - seat];
  v.pot = pot_state();
  v.pot.facing_bet = round_contrib_[seat] < round_contrib_[1 - seat];
  if (phase_ == Phase::Betting && seat == to_act_) v.legal = legal_actions();
  for (const HistoryEntry& h : history_)
    if (h.round == round_) v.round_history.push_back(h);
  v.game_history = history_;
  v.opponent_id = ids_[1 - seat];
  return v;
}

SubmitResult Game::submit(int seat, Action action) {
  if (finished()) return {SubmitStatus::GameOver, "the game is over"};
  if (seat != to_act_) return {SubmitStatus::OutOfTurn, "not your turn"};
  const auto legal = legal_actions();
  if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
    std::string why = std::string(to_string(action)) + " is not legal now";
    if (action == Action::Raise && facing_bet()) why = "RAISE rejected: up to three raises per round";
    if (++rejections_ >= config_.max_rejections) {
      settle_fold(seat, EndReason::Forfeit);
      return {SubmitStatus::Forfeited, why + "; too many illegal actions, hand forfeited"};
    }
    return {SubmitStatus::Illegal, why};
  }
  rejections_ = 0;
  history_.push_back({seat, round_, action});
  const int other = 1 - seat;
  auto put_in = [&](int amount) {
    round_contrib_[seat] += amount;
    contributions_[seat] += amount;
  };
  switch (action) {
    case Action::Pass:
      if (++passes_ == 2) end_betting_round();
      else to_act_ = other;
      break;
    case Action::Bet:
      put_in(config_.unit);
      to_act_ = other;
      break;
    case Action::Raise:
      put_in(round_contrib_[other] - round_contrib_[seat] + config_.unit);
      ++raises_;
      to_act_ = other;
      break;
    case Action::Call:
      put_in(round_contrib_[other] - round_contrib_[seat]);
      end_betting_round();
      break;
    case Action::Fold:
      settle_fold(seat, EndReason::Fold);
      break;
  }
  return {SubmitStatus::Accepted, ""};
}

void Game::end_betting_round() {
  if (round_ == kNumRounds) {
    settle_showdown();
    return;
  }
  deal_round();
  start_betting_round();
}

void Game::settle_showdown() {
  phase_ = Phase::Showdown;
  std::array<std::array<HandType17, 4>, 2> types{};
  for (int s = 0; s < 2; ++s) {
    record_.cards[s] = {hole_[s]};
    record_.cards[s].insert(record_.cards[s].end(), up_[s].begin(), up_[s].end());
    for (int r = 0; r < kNumRounds; ++r)
      types[s][r] = classify_cards(std::span<const Card>(record_.cards[s]).first(r + 2));
  }
  record_.round_types = types;
  record_.reason = EndReason::Showdown;
  record_.pot = pot();
  switch (compare_hands(record_.cards[0], record_.cards[1])) {
    case Comparison::AWins:
      record_.winner = 0;
      record_.net = {contributions_[1], -contributions_[1]};
      break;
    case Comparison::BWins:
      record_.winner = 1;
      record_.net = {-contributions_[0], contributions_[0]};
      break;
    case Comparison::Tie:
      // Bets are matched at showdown, so each seat just takes back its stake.
      record_.winner.reset();
      record_.net = {0, 0};
      break;
  }
  record_.history = history_;
  phase_ = Phase::Settled;
}

void Game::settle_fold(int folder, EndReason reason) {
  for (int s = 0; s < 2; ++s) {
    record_.cards[s] = {hole_[s]};
    record_.cards[s].insert(record_.cards[s].end(), up_[s].begin(), up_[s].end());
  }
  record_.reason = reason;
  record_.fold_by = folder;
  record_.winner = 1 - folder;
  record_.pot = pot();
  record_.net[folder] = -contributions_[folder];
  record_.net[1 - folder] = contributions_[folder];
  record_.history = history_;
  phase_ = Phase::Folded;
}

const GameRecord& Game::record() const {
  if (!finished()) throw std::logic_error("game record requested before the game finished");
  return record_;
}

std::string game_record_json_line(const GameRecord& rec) {
  json j;
  j["seed"] = rec.seed;
  j["agents"] = json::array();
  for (int s = 0; s < 2; ++s) {
    json cards = json::array();
    for (const Card& c : rec.cards[s]) cards.push_back(c.str());
    j["agents"].push_back({{"id", rec.agent_ids[s]}, {"kind", rec.agent_kinds[s]}, {"cards", cards}});
  }
  j["history"] = json::array();
  for (const HistoryEntry& h : rec.history)
    j["history"].push_back({{"seat", h.seat}, {"round", h.round}, {"action", to_string(h.action)}});
  j["reason"] = to_string(rec.reason);
  j["winner"] = rec.winner ? json(*rec.winner) : json(nullptr);
  j["fold_by"] = rec.fold_by ? json(*rec.fold_by) : json(nullptr);
  j["pot"] = rec.pot;
  j["net"] = rec.net;
  if (rec.round_types) {
    json types = json::array();
    for (const auto& seat : *rec.round_types) {
      json row = json::array();
      for (HandType17 t : seat) row.push_back(to_string(t));
      types.push_back(std::move(row));
    }
    j["round_types"] = std::move(types);
  } else {
    j["round_types"] = nullptr;
  }
  return j.dump();
}

namespace {

GameRecord run(Game& game, Agent& a0, Agent& a1) {
  game.set_agent_kinds({std::string(a0.kind()), std::string(a1.kind())});
  const std::uint64_t seed = game.seed();
  std::array<Rng, 2> rngs{Rng(derive_seed(seed, 1)), Rng(derive_seed(seed, 2))};
  std::array<Agent*, 2> agents{&a0, &a1};
  while (!game.finished()) {
    const int seat = game.to_act();
    const Action a = agents[seat]->decide(game.view(seat), rngs[seat]);
    game.submit(seat, a);
  }
  const GameRecord& rec = game.record();
  a0.observe(rec, 0);
  a1.observe(rec, 1);
  return rec;
}

}  // namespace

GameRecord play_game(Agent& seat0, Agent& seat1, std::uint64_t seed, const GameConfig& config) {
  Game game(seed, config, {seat0.id(), seat1.id()});
  return run(game, seat0, seat1);
}

GameRecord play_game(Agent& seat0, Agent& seat1, Deck deck, std::uint64_t seed, const GameConfig& config) {
  Game game(std::move(deck), seed, config, {seat0.id(), seat1.id()});
  return run(game, seat0, seat1);
}

}  // namespace bayespoker
