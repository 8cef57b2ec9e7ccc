#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "bayespoker/matrices.hpp"

namespace bayespoker {

enum class Action : std::uint8_t { Pass, Bet, Call, Raise, Fold };

inline constexpr int kNumActions = 5;

std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view text);
std::string_view to_string(ActionClass c);

/// PASS/CALL are conservative, BET/RAISE aggressive; FOLD has no class.
std::optional<ActionClass> class_of(Action a);

}  // namespace bayespoker
