#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bayespoker/actions.hpp"
#include "bayespoker/cards.hpp"
#include "bayespoker/decision.hpp"
#include "bayespoker/rng.hpp"

namespace bayespoker {

struct HistoryEntry {
  int seat;
  int round;
  Action action;
  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// What one seat may see. There is deliberately no field for the other
/// seat's hole card.
struct PlayerView {
  int seat = 0;
  int round = 1;
  Card own_hole;
  std::vector<Card> own_up;
  std::vector<Card> opp_up;
  PotState pot;
  std::vector<Action> legal;
  std::vector<HistoryEntry> round_history;
  std::vector<HistoryEntry> game_history;
  std::string opponent_id;

  RoundId round_id() const { return RoundId(round); }
  std::vector<Card> own_cards() const;
  std::vector<Action> opponent_actions_this_round() const;
};

enum class Phase { Betting, Showdown, Settled, Folded };
std::string_view to_string(Phase p);

enum class EndReason { Showdown, Fold, Forfeit };
std::string_view to_string(EndReason r);

struct GameRecord {
  std::uint64_t seed = 0;
  std::array<std::string, 2> agent_ids;
  std::array<std::string, 2> agent_kinds;
  /// Cards dealt to each seat, hole card first.
  std::array<std::vector<Card>, 2> cards;
  std::vector<HistoryEntry> history;
  EndReason reason = EndReason::Showdown;
  std::optional<int> winner;  // empty on a tie
  std::optional<int> fold_by;
  int pot = 0;
  std::array<int, 2> net{};
  /// Per seat, per round: type of the cards held at that round. Showdowns only.
  std::optional<std::array<std::array<HandType17, 4>, 2>> round_types;
};

/// One JSON object per game, suitable for an append-only log.
std::string game_record_json_line(const GameRecord& rec);

class Agent {
 public:
  virtual ~Agent() = default;
  virtual const std::string& id() const = 0;
  virtual std::string_view kind() const = 0;
  virtual Action decide(const PlayerView& view, Rng& rng) = 0;
  /// Called once per finished game with the full record.
  virtual void observe(const GameRecord& /*record*/, int /*seat*/) {}
};

struct GameConfig {
  int ante = 1;
  int unit = 1;
  int max_rejections = 3;
};

enum class SubmitStatus { Accepted, OutOfTurn, Illegal, Forfeited, GameOver };

struct SubmitResult {
  SubmitStatus status;
  std::string message;
};

/// Authoritative heads-up five-card stud state machine. Seat 0 and 1 ante,
/// receive a hole card and an upcard, then bet; three more upcards follow,
/// each with a betting round. Bets and raises are one unit, at most three
/// raises per round.
class Game {
 public:
  Game(std::uint64_t seed, GameConfig config = {}, std::array<std::string, 2> ids = {"seat0", "seat1"});
  /// Deals from a prepared deck in order: hole0, hole1, up0, up1, up0, up1, ...
  Game(Deck deck, std::uint64_t seed, GameConfig config = {}, std::array<std::string, 2> ids = {"seat0", "seat1"});

  Phase phase() const { return phase_; }
  bool finished() const { return phase_ == Phase::Settled || phase_ == Phase::Folded; }
  std::uint64_t seed() const { return record_.seed; }
  int round() const { return round_; }
  int to_act() const { return to_act_; }
  int pot() const { return contributions_[0] + contributions_[1]; }
  int raises_this_round() const { return raises_; }
  bool facing_bet() const;
  std::vector<Action> legal_actions() const;
  const std::vector<HistoryEntry>& history() const { return history_; }
  Card hole(int seat) const { return hole_[seat]; }
  const std::vector<Card>& upcards(int seat) const { return up_[seat]; }
  int contribution(int seat) const { return contributions_[seat]; }

  PlayerView view(int seat) const;
  SubmitResult submit(int seat, Action action);
  /// Valid once finished().
  const GameRecord& record() const;
  void set_agent_kinds(std::array<std::string, 2> kinds) { record_.agent_kinds = std::move(kinds); }

 private:
  void deal_round();
  void start_betting_round();
  void end_betting_round();
  void settle_showdown();
  void settle_fold(int folder, EndReason reason);
  PotState pot_state() const;

  GameConfig config_;
  Deck deck_;
  std::array<std::string, 2> ids_;
  std::array<Card, 2> hole_{};
  std::array<std::vector<Card>, 2> up_;
  std::array<int, 2> contributions_{};
  std::array<int, 2> round_contrib_{};
  std::vector<HistoryEntry> history_;
  Phase phase_ = Phase::Betting;
  int round_ = 0;
  int to_act_ = 0;
  int raises_ = 0;
  int passes_ = 0;
  int rejections_ = 0;
  GameRecord record_;
};

/// Legal actions for a seat facing (or not) an outstanding bet.
std::vector<Action> legal_actions(bool facing_bet, int raises_this_round);

/// Which seat bets first given the two upcard sets.
int first_to_act(const std::vector<Card>& up0, const std::vector<Card>& up1);

/// Plays a complete game. Illegal actions are re-requested; repeated
/// violations forfeit. Both agents observe the finished record.
GameRecord play_game(Agent& seat0, Agent& seat1, std::uint64_t seed, const GameConfig& config = {});
GameRecord play_game(Agent& seat0, Agent& seat1, Deck deck, std::uint64_t seed, const GameConfig& config = {});

}  // namespace bayespoker
