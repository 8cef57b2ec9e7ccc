#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "bayespoker/cards.hpp"

namespace bayespoker {

inline constexpr int kNumRounds = 4;

/// Betting round 1..4; round r is played after r+1 cards have been dealt.
class RoundId {
 public:
  constexpr explicit RoundId(int value) : value_(value) {
    if (value < 1 || value > kNumRounds) throw std::out_of_range("round must be 1..4");
  }
  constexpr int value() const { return value_; }
  constexpr int index() const { return value_ - 1; }
  constexpr int cards_dealt() const { return value_ + 1; }
  friend constexpr auto operator<=>(RoundId, RoundId) = default;

 private:
  int value_;
};

using Vec17 = std::array<double, kNumHandTypes>;
using Mat17 = std::array<Vec17, kNumHandTypes>;

enum class ActionClass : std::uint8_t { Conservative, Aggressive };

/// 17x2 conditional table P(action class | current type).
using ActionMatrix = std::array<std::array<double, 2>, kNumHandTypes>;

class MatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrices estimated from dealt hands. Rows of c_given_f are final types,
/// columns current (partial) types; rows of u_given_c are current types,
/// columns upcard types.
struct DealMatrices {
  Vec17 final_prior{};
  std::array<Mat17, kNumRounds> c_given_f{};
  std::array<Mat17, kNumRounds> u_given_c{};
};

/// W[i][j] = P(hand of type i beats hand of type j), ties credited half.
struct WinMatrix {
  Mat17 w{};
};

/// Raw tallies kept alongside the normalized matrices, for diagnostics and
/// for the law-of-total-probability check.
struct DealTallies {
  std::uint64_t deals = 0;
  std::array<std::uint64_t, kNumHandTypes> final_counts{};
  std::array<std::array<std::uint64_t, kNumHandTypes>, kNumRounds> current_counts{};
};

struct DealEstimate {
  DealMatrices matrices;
  DealTallies tallies;
};

struct EstimateOptions {
  /// Worker threads; results do not depend on this.
  unsigned workers = 1;
  /// Deals per independently seeded shard; results depend on this.
  std::uint64_t shard_size = 1u << 16;
};

/// Whether a type can label a hand of n cards (1-5). Smoothing only fills
/// reachable cells so impossible partial types keep zero mass.
bool type_reachable(HandType17 t, int n_cards);

DealEstimate estimate_deal_matrices(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts = {});
WinMatrix estimate_win_matrix(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts = {});

/// Win matrix forced by type order with every diagonal cell 1/2.
WinMatrix ordered_win_matrix();

/// Per-opponent counts of {conservative, aggressive} observations.
class ActionCounts {
 public:
  /// Every cell starts at the pseudo-count 1.
  ActionCounts();

  void record(RoundId round, HandType17 opp_type, ActionClass cls, double weight = 1.0);
  double count(RoundId round, HandType17 opp_type, ActionClass cls) const;
  void set_count(RoundId round, HandType17 opp_type, ActionClass cls, double value);
  ActionMatrix matrix(RoundId round) const;
  double observations(RoundId round, HandType17 opp_type) const;

  friend bool operator==(const ActionCounts&, const ActionCounts&) = default;

 private:
  std::array<std::array<std::array<double, 2>, kNumHandTypes>, kNumRounds> counts_;
};

ActionCounts update_action_counts(ActionCounts counts, RoundId round, HandType17 opp_type, ActionClass cls);

inline const std::string kPooledOpponent = "*pooled*";

/// Thread-safe map of opponent id -> counts. Every record also feeds the
/// pooled pseudo-opponent.
class ActionCountsStore {
 public:
  ActionCountsStore() = default;
  explicit ActionCountsStore(std::map<std::string, ActionCounts> initial) : counts_(std::move(initial)) {}

  ActionMatrix matrix(const std::string& opponent, RoundId round) const;
  void record(const std::string& opponent, RoundId round, HandType17 opp_type, ActionClass cls);
  ActionCounts counts(const std::string& opponent) const;
  std::map<std::string, ActionCounts> snapshot() const;
  bool has(const std::string& opponent) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, ActionCounts> counts_;
};

/// Everything persisted in a matrix file.
struct MatrixSet {
  static constexpr int kFormatVersion = 1;
  std::uint64_t seed = 0;
  std::uint64_t num_deals = 0;
  DealMatrices deal;
  WinMatrix win;
  std::map<std::string, ActionCounts> action_counts;
};

/// Estimates every matrix with one seed; the win matrix uses a derived stream.
MatrixSet build_matrix_set(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts = {});

std::string dump_matrix_set(const MatrixSet& set);
MatrixSet parse_matrix_set(const std::string& text);
void save_matrices(const std::filesystem::path& path, const MatrixSet& set);
MatrixSet load_matrices(const std::filesystem::path& path);

/// Throws MatrixError if any row is negative or off unit sum by more than tol.
void validate_rows(const Mat17& m, const std::string& what, double tol = 1e-9);
void validate_distribution(const Vec17& v, const std::string& what, double tol = 1e-9);

}  // namespace bayespoker
