#pragma once

#include <array>

#include "bayespoker/cards.hpp"

namespace bayespoker {

/// Published probabilities of the nine five-card categories, weakest first.
inline constexpr std::array<double, kNumCategories> kCategoryReferenceProbabilities = {
    0.5015629, 0.4225703, 0.0475431, 0.0211037, 0.0035492, 0.0019693, 0.0014405, 0.0002476, 0.0000134};

/// Collapses a 17-type distribution onto the nine categories.
template <typename Vec>
std::array<double, kNumCategories> collapse_to_categories(const Vec& by_type) {
  std::array<double, kNumCategories> out{};
  for (int t = 0; t < kNumHandTypes; ++t) out[static_cast<int>(category_of(hand_type_from_ordinal(t)))] += by_type[t];
  return out;
}

}  // namespace bayespoker
