#include "bayespoker/cards.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

namespace bayespoker {

namespace {

constexpr std::array<std::string_view, kNumHandTypes> kHandTypeNames = {
    "BustedLow",  "BustedMedium", "BustedQueen", "BustedKing", "BustedAce", "PairLow",
    "PairMedium", "PairQueens",   "PairKings",   "PairAces",   "TwoPair",   "Triple",
    "Straight",   "Flush",        "FullHouse",   "FourOfAKind", "StraightFlush"};

constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "Busted", "Pair", "TwoPair", "Triple", "Straight", "Flush", "FullHouse", "FourOfAKind", "StraightFlush"};

constexpr std::uint32_t pack(Category cat, const int* ranks, int n) {
  std::uint32_t v = static_cast<std::uint32_t>(cat) << 20;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint32_t>(ranks[i]) << (16 - 4 * i);
  return v;
}

// Distinct ranks ordered by (multiplicity desc, rank desc). Returns count written.
int grouped_ranks(const int* counts, int* out) {
  int n = 0;
  for (int mult = 4; mult >= 1; --mult)
    for (int r = 14; r >= 2; --r)
      if (counts[r] == mult) out[n++] = r;
  return n;
}

struct RankProfile {
  int counts[15] = {};
  unsigned mask = 0;
  bool suited = true;
  int max_count = 0;
  int pairs = 0;
};

RankProfile profile(std::span<const Card> cards) {
  RankProfile p;
  for (const Card& c : cards) {
    const int r = c.rank();
    ++p.counts[r];
    p.mask |= 1u << r;
    if (c.suit() != cards[0].suit()) p.suited = false;
  }
  for (int r = 2; r <= 14; ++r) {
    p.max_count = std::max(p.max_count, p.counts[r]);
    if (p.counts[r] == 2) ++p.pairs;
  }
  return p;
}

int highest_rank(unsigned mask) { return 31 - std::countl_zero(mask); }
int lowest_rank(unsigned mask) { return std::countr_zero(mask); }

HandType17 busted_of(int high) { return hand_type_from_ordinal(ordinal(HandType17::BustedLow) + rank_band(high)); }
HandType17 pair_of(int pair_rank) { return hand_type_from_ordinal(ordinal(HandType17::PairLow) + rank_band(pair_rank)); }

}  // namespace

Card Card::parse(std::string_view text) {
  auto fail = [&] { return CardError("cannot parse card '" + std::string(text) + "'"); };
  if (text.size() < 2) throw fail();
  int rank = 0;
  std::size_t pos = 1;
  switch (std::toupper(static_cast<unsigned char>(text[0]))) {
    case 'A': rank = 14; break;
    case 'K': rank = 13; break;
    case 'Q': rank = 12; break;
    case 'J': rank = 11; break;
    case 'T': rank = 10; break;
    case '1':
      if (text.size() < 3 || text[1] != '0') throw fail();
      rank = 10;
      pos = 2;
      break;
    default:
      if (text[0] < '2' || text[0] > '9') throw fail();
      rank = text[0] - '0';
  }
  const std::string_view suit = text.substr(pos);
  Suit s;
  if (suit == "c" || suit == "C" || suit == "♣") s = Suit::Clubs;
  else if (suit == "d" || suit == "D" || suit == "♦") s = Suit::Diamonds;
  else if (suit == "h" || suit == "H" || suit == "♥") s = Suit::Hearts;
  else if (suit == "s" || suit == "S" || suit == "♠") s = Suit::Spades;
  else throw fail();
  return Card(rank, s);
}

std::string Card::str() const {
  static constexpr std::string_view kRanks = "??23456789TJQKA";
  static constexpr std::string_view kSuits = "cdhs";
  return {kRanks[rank_], kSuits[static_cast<int>(suit_)]};
}

std::vector<Card> parse_cards(std::string_view text) {
  std::vector<Card> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',') ++j;
    if (j > i) out.push_back(Card::parse(text.substr(i, j - i)));
    i = j;
  }
  return out;
}

std::string cards_str(std::span<const Card> cards) {
  std::string s;
  for (const Card& c : cards) {
    if (!s.empty()) s += ' ';
    s += c.str();
  }
  return s;
}

std::string_view to_string(HandType17 t) { return kHandTypeNames.at(ordinal(t)); }
const std::array<std::string_view, kNumHandTypes>& hand_type_names() { return kHandTypeNames; }

std::optional<HandType17> parse_hand_type(std::string_view name) {
  for (int i = 0; i < kNumHandTypes; ++i)
    if (kHandTypeNames[i] == name) return hand_type_from_ordinal(i);
  return std::nullopt;
}

Category category_of(HandType17 t) {
  const int i = ordinal(t);
  if (i <= ordinal(HandType17::BustedAce)) return Category::Busted;
  if (i <= ordinal(HandType17::PairAces)) return Category::Pair;
  return static_cast<Category>(i - ordinal(HandType17::TwoPair) + static_cast<int>(Category::TwoPair));
}

std::string_view to_string(Category c) { return kCategoryNames.at(static_cast<int>(c)); }

int rank_band(int rank) {
  if (rank <= 9) return 0;
  if (rank <= 11) return 1;
  return rank - 10;
}

std::uint32_t HandValue::packed() const {
  int ranks[5];
  for (int i = 0; i < 5; ++i) ranks[i] = tiebreak[i];
  return pack(category, ranks, 5);
}

std::uint32_t evaluate5_packed(const Card* cards) {
  int counts[15] = {};
  unsigned mask = 0;
  bool flush = true;
  for (int i = 0; i < 5; ++i) {
    const int r = cards[i].rank();
    ++counts[r];
    mask |= 1u << r;
    flush = flush && cards[i].suit() == cards[0].suit();
  }
  int ranks[5];
  if (std::popcount(mask) == 5) {
    const bool straight = highest_rank(mask) - lowest_rank(mask) == 4;
    int n = 0;
    for (int r = 14; r >= 2; --r)
      if (mask & (1u << r)) ranks[n++] = r;
    Category cat = Category::Busted;
    if (straight && flush) cat = Category::StraightFlush;
    else if (flush) cat = Category::Flush;
    else if (straight) cat = Category::Straight;
    return pack(cat, ranks, 5);
  }
  const int n = grouped_ranks(counts, ranks);
  const int top = counts[ranks[0]];
  Category cat;
  if (top == 4) cat = Category::FourOfAKind;
  else if (top == 3) cat = n == 2 ? Category::FullHouse : Category::Triple;
  else cat = n == 3 ? Category::TwoPair : Category::Pair;
  return pack(cat, ranks, n);
}

HandType17 hand_type_of_packed(std::uint32_t packed) {
  const auto cat = static_cast<Category>(packed >> 20);
  const int lead = static_cast<int>((packed >> 16) & 0xF);
  switch (cat) {
    case Category::Busted: return busted_of(lead);
    case Category::Pair: return pair_of(lead);
    default:
      return hand_type_from_ordinal(ordinal(HandType17::TwoPair) + static_cast<int>(cat) -
                                    static_cast<int>(Category::TwoPair));
  }
}

void require_distinct(std::span<const Card> cards) {
  std::uint64_t seen = 0;
  for (const Card& c : cards) {
    const std::uint64_t bit = std::uint64_t{1} << c.index();
    if (seen & bit) throw CardError("duplicate card " + c.str());
    seen |= bit;
  }
}

HandValue evaluate(std::span<const Card> five) {
  if (five.size() != 5) throw CardError("a full hand needs exactly 5 cards, got " + std::to_string(five.size()));
  const std::uint32_t p = evaluate5_packed(five.data());
  HandValue v;
  v.category = static_cast<Category>(p >> 20);
  for (int i = 0; i < 5; ++i) v.tiebreak[i] = static_cast<std::uint8_t>((p >> (16 - 4 * i)) & 0xF);
  return v;
}

HandType17 classify_final(std::span<const Card> five) {
  if (five.size() != 5) throw CardError("classify_final needs exactly 5 cards, got " + std::to_string(five.size()));
  require_distinct(five);
  return hand_type_of_packed(evaluate5_packed(five.data()));
}

HandType17 classify_partial(std::span<const Card> cards) {
  if (cards.size() < 2 || cards.size() > 4)
    throw CardError("classify_partial needs 2-4 cards, got " + std::to_string(cards.size()));
  require_distinct(cards);
  const RankProfile p = profile(cards);
  if (p.max_count == 4) return HandType17::FourOfAKind;
  if (p.max_count == 3) return HandType17::Triple;
  if (p.pairs == 2) return HandType17::TwoPair;
  if (p.pairs == 1) {
    for (int r = 14; r >= 2; --r)
      if (p.counts[r] == 2) return pair_of(r);
  }
  const bool run = highest_rank(p.mask) - lowest_rank(p.mask) <= 4;
  if (p.suited && run) return HandType17::StraightFlush;
  if (p.suited) return HandType17::Flush;
  if (run) return HandType17::Straight;
  return busted_of(highest_rank(p.mask));
}

HandType17 classify_cards(std::span<const Card> cards) {
  switch (cards.size()) {
    case 1: return busted_of(cards[0].rank());
    case 5: return classify_final(cards);
    default: return classify_partial(cards);
  }
}

Comparison compare_hands(std::span<const Card> a, std::span<const Card> b) {
  if (a.size() != 5 || b.size() != 5) throw CardError("compare_hands needs two 5-card hands");
  const std::uint32_t va = evaluate5_packed(a.data());
  const std::uint32_t vb = evaluate5_packed(b.data());
  if (va > vb) return Comparison::AWins;
  if (vb > va) return Comparison::BWins;
  return Comparison::Tie;
}

std::uint32_t showing_strength(std::span<const Card> cards) {
  const HandType17 t = classify_cards(cards);
  const RankProfile p = profile(cards);
  int ranks[5];
  const int n = grouped_ranks(p.counts, ranks);
  std::uint32_t v = static_cast<std::uint32_t>(ordinal(t)) << 20;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint32_t>(ranks[i]) << (16 - 4 * i);
  return v;
}

Deck::Deck() {
  cards_.reserve(52);
  for (int i = 0; i < 52; ++i) cards_.push_back(Card::from_index(i));
}

Deck::Deck(std::vector<Card> cards) : cards_(std::move(cards)) { require_distinct(cards_); }

Deck Deck::shuffled(Rng& rng) {
  Deck d;
  for (std::size_t i = d.cards_.size() - 1; i > 0; --i) std::swap(d.cards_[i], d.cards_[rng.below(i + 1)]);
  return d;
}

Deck Deck::shuffled(std::uint64_t seed) {
  Rng rng(seed);
  return shuffled(rng);
}

std::vector<Card> Deck::deal(std::size_t n) {
  if (n > remaining())
    throw CardError("deck exhausted: asked for " + std::to_string(n) + ", " + std::to_string(remaining()) + " left");
  std::vector<Card> out(cards_.begin() + static_cast<std::ptrdiff_t>(next_),
                        cards_.begin() + static_cast<std::ptrdiff_t>(next_ + n));
  next_ += n;
  return out;
}

Card Deck::deal_one() { return deal(1).front(); }

}  // namespace bayespoker
