#include "bayespoker/actions.hpp"

#include <array>

namespace bayespoker {

namespace {
constexpr std::array<std::string_view, kNumActions> kNames = {"PASS", "BET", "CALL", "RAISE", "FOLD"};
}

std::string_view to_string(Action a) { return kNames.at(static_cast<int>(a)); }

std::optional<Action> parse_action(std::string_view text) {
  for (int i = 0; i < kNumActions; ++i)
    if (kNames[i] == text) return static_cast<Action>(i);
  return std::nullopt;
}

std::string_view to_string(ActionClass c) { return c == ActionClass::Aggressive ? "aggressive" : "conservative"; }

std::optional<ActionClass> class_of(Action a) {
  switch (a) {
    case Action::Pass:
    case Action::Call: return ActionClass::Conservative;
    case Action::Bet:
    case Action::Raise: return ActionClass::Aggressive;
    case Action::Fold: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace bayespoker
