#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bayespoker/rng.hpp"

namespace bayespoker {

class CardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Suit : std::uint8_t { Clubs, Diamonds, Hearts, Spades };

/// A playing card. Rank runs 2..14 with the Ace high only.
class Card {
 public:
  constexpr Card() = default;
  constexpr Card(int rank, Suit suit) : rank_(static_cast<std::uint8_t>(rank)), suit_(suit) {
    if (rank < 2 || rank > 14) throw CardError("card rank out of range: " + std::to_string(rank));
  }

  static constexpr Card from_index(int index) { return Card(index / 4 + 2, static_cast<Suit>(index % 4)); }
  /// Parses "As", "Td", "10h", "2c" (rank then suit letter).
  static Card parse(std::string_view text);

  constexpr int rank() const { return rank_; }
  constexpr Suit suit() const { return suit_; }
  /// Dense index 0..51.
  constexpr int index() const { return (rank_ - 2) * 4 + static_cast<int>(suit_); }
  std::string str() const;

  friend constexpr bool operator==(Card a, Card b) { return a.rank_ == b.rank_ && a.suit_ == b.suit_; }

 private:
  std::uint8_t rank_ = 2;
  Suit suit_ = Suit::Clubs;
};

std::vector<Card> parse_cards(std::string_view text);
std::string cards_str(std::span<const Card> cards);

/// The refined 17-step hand scale, weakest first. The ordinal value is
/// normative: it indexes every matrix row and column.
enum class HandType17 : std::uint8_t {
  BustedLow,
  BustedMedium,
  BustedQueen,
  BustedKing,
  BustedAce,
  PairLow,
  PairMedium,
  PairQueens,
  PairKings,
  PairAces,
  TwoPair,
  Triple,
  Straight,
  Flush,
  FullHouse,
  FourOfAKind,
  StraightFlush,
};

inline constexpr int kNumHandTypes = 17;

constexpr int ordinal(HandType17 t) { return static_cast<int>(t); }
constexpr HandType17 hand_type_from_ordinal(int i) { return static_cast<HandType17>(i); }
std::string_view to_string(HandType17 t);
std::optional<HandType17> parse_hand_type(std::string_view name);
const std::array<std::string_view, kNumHandTypes>& hand_type_names();

/// The nine Table-1 categories the 17 types collapse onto.
enum class Category : std::uint8_t { Busted, Pair, TwoPair, Triple, Straight, Flush, FullHouse, FourOfAKind, StraightFlush };
inline constexpr int kNumCategories = 9;

Category category_of(HandType17 t);
std::string_view to_string(Category c);

/// Busted/pair refinement by rank: 9 or lower, 10-J, Q, K, A.
int rank_band(int rank);

/// Full comparable value of a five-card hand. Suits never break ties.
struct HandValue {
  Category category = Category::Busted;
  std::array<std::uint8_t, 5> tiebreak{};  // most significant first; unused slots 0

  /// Single integer with the same ordering as (category, tiebreak).
  std::uint32_t packed() const;
  friend auto operator<=>(const HandValue&, const HandValue&) = default;
};

enum class Comparison { AWins, BWins, Tie };

/// Packed evaluation of exactly five cards; validity is the caller's concern.
/// Ordering of the returned integers equals poker ordering of the hands.
std::uint32_t evaluate5_packed(const Card* cards);
HandType17 hand_type_of_packed(std::uint32_t packed);

HandValue evaluate(std::span<const Card> five);
HandType17 classify_final(std::span<const Card> five);
/// Label for a 2-4 card prefix: the strongest category it already realizes.
HandType17 classify_partial(std::span<const Card> cards);
/// Label for any 1-5 cards: a single card is the busted subtype of its rank,
/// 2-4 cards go through classify_partial, five through classify_final.
HandType17 classify_cards(std::span<const Card> cards);
Comparison compare_hands(std::span<const Card> a, std::span<const Card> b);

/// Ordering key for 1-5 card hands: 17-type first, then grouped ranks.
/// Used where visible partial hands are ranked against each other.
std::uint32_t showing_strength(std::span<const Card> cards);

/// Throws CardError if any two cards coincide.
void require_distinct(std::span<const Card> cards);

/// A shuffled card sequence dealt from the top.
class Deck {
 public:
  /// The 52 cards in index order.
  Deck();
  static Deck shuffled(Rng& rng);
  static Deck shuffled(std::uint64_t seed);
  explicit Deck(std::vector<Card> cards);

  std::vector<Card> deal(std::size_t n);
  Card deal_one();
  std::size_t remaining() const { return cards_.size() - next_; }
  std::span<const Card> undealt() const { return std::span(cards_).subspan(next_); }

 private:
  std::vector<Card> cards_;
  std::size_t next_ = 0;
};

}  // namespace bayespoker
