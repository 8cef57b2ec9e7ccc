#include "bayespoker/matrices.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

namespace bayespoker {

using json = nlohmann::json;

namespace {

using CountMat = std::array<std::array<std::uint64_t, kNumHandTypes>, kNumHandTypes>;

struct DealCounts {
  std::uint64_t deals = 0;
  std::array<std::uint64_t, kNumHandTypes> final_counts{};
  std::array<CountMat, kNumRounds> cf{};
  std::array<CountMat, kNumRounds> uc{};
  std::array<std::array<std::uint64_t, kNumHandTypes>, kNumRounds> current{};

  void merge(const DealCounts& o) {
    deals += o.deals;
    for (int i = 0; i < kNumHandTypes; ++i) final_counts[i] += o.final_counts[i];
    for (int r = 0; r < kNumRounds; ++r)
      for (int i = 0; i < kNumHandTypes; ++i) {
        current[r][i] += o.current[r][i];
        for (int j = 0; j < kNumHandTypes; ++j) {
          cf[r][i][j] += o.cf[r][i][j];
          uc[r][i][j] += o.uc[r][i][j];
        }
      }
  }
};

struct WinCounts {
  // Twice the win share (win = 2, tie = 1) so everything stays integral.
  CountMat doubled_wins{};
  CountMat games{};

  void merge(const WinCounts& o) {
    for (int i = 0; i < kNumHandTypes; ++i)
      for (int j = 0; j < kNumHandTypes; ++j) {
        doubled_wins[i][j] += o.doubled_wins[i][j];
        games[i][j] += o.games[i][j];
      }
  }
};

// Draws the first n cards of a uniformly random permutation into deck[0..n).
void partial_shuffle(std::array<Card, 52>& deck, int n, Rng& rng) {
  for (int i = 0; i < n; ++i) std::swap(deck[i], deck[i + rng.below(52 - i)]);
}

std::array<Card, 52> fresh_deck() {
  std::array<Card, 52> d;
  for (int i = 0; i < 52; ++i) d[i] = Card::from_index(i);
  return d;
}

void count_deal_shard(std::uint64_t n, std::uint64_t seed, DealCounts& out) {
  Rng rng(seed);
  auto deck = fresh_deck();
  for (std::uint64_t k = 0; k < n; ++k) {
    partial_shuffle(deck, 5, rng);
    const std::span<const Card> hand(deck.data(), 5);
    const int fin = ordinal(hand_type_of_packed(evaluate5_packed(deck.data())));
    ++out.final_counts[fin];
    for (int r = 0; r < kNumRounds; ++r) {
      const int cur = r == kNumRounds - 1 ? fin : ordinal(classify_cards(hand.first(r + 2)));
      const int up = ordinal(classify_cards(hand.subspan(1, r + 1)));
      ++out.current[r][cur];
      ++out.cf[r][fin][cur];
      ++out.uc[r][cur][up];
    }
  }
  out.deals += n;
}

void count_win_shard(std::uint64_t n, std::uint64_t seed, WinCounts& out) {
  Rng rng(seed);
  auto deck = fresh_deck();
  for (std::uint64_t k = 0; k < n; ++k) {
    partial_shuffle(deck, 10, rng);
    const std::uint32_t va = evaluate5_packed(deck.data());
    const std::uint32_t vb = evaluate5_packed(deck.data() + 5);
    const int ta = ordinal(hand_type_of_packed(va));
    const int tb = ordinal(hand_type_of_packed(vb));
    const std::uint64_t a_share = va > vb ? 2 : (va == vb ? 1 : 0);
    // Both orientations: the diagonal is then exactly symmetric.
    out.doubled_wins[ta][tb] += a_share;
    out.doubled_wins[tb][ta] += 2 - a_share;
    ++out.games[ta][tb];
    ++out.games[tb][ta];
  }
}

template <typename Counts, typename Fn>
Counts run_sharded(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts, Fn shard_fn) {
  const std::uint64_t shard = std::max<std::uint64_t>(1, opts.shard_size);
  const std::uint64_t num_shards = (num_deals + shard - 1) / shard;
  std::vector<Counts> parts(num_shards);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t s = next++; s < num_shards; s = next++) {
      const std::uint64_t n = std::min(shard, num_deals - s * shard);
      shard_fn(n, derive_seed(seed, s), parts[s]);
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(num_shards)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  }
  Counts total{};
  for (const Counts& p : parts) total.merge(p);
  return total;
}

Vec17 normalize_row(const std::array<std::uint64_t, kNumHandTypes>& counts, int n_cards) {
  Vec17 row{};
  double sum = 0;
  for (int j = 0; j < kNumHandTypes; ++j) {
    row[j] = static_cast<double>(counts[j]) + (type_reachable(hand_type_from_ordinal(j), n_cards) ? 1.0 : 0.0);
    sum += row[j];
  }
  for (double& x : row) x /= sum;
  return row;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw MatrixError(msg);
}

json mat_to_json(const Mat17& m) {
  json rows = json::array();
  for (const Vec17& row : m) rows.push_back(row);
  return rows;
}

Vec17 vec_from_json(const json& j, const std::string& what) {
  require(j.is_array() && j.size() == kNumHandTypes, what + ": expected 17 numbers");
  Vec17 v{};
  for (int i = 0; i < kNumHandTypes; ++i) {
    require(j[i].is_number(), what + ": non-numeric entry");
    v[i] = j[i].get<double>();
  }
  return v;
}

Mat17 mat_from_json(const json& j, const std::string& what) {
  require(j.is_array() && j.size() == kNumHandTypes, what + ": expected 17 rows");
  Mat17 m{};
  for (int i = 0; i < kNumHandTypes; ++i) m[i] = vec_from_json(j[i], what + " row " + std::to_string(i));
  return m;
}

}  // namespace

bool type_reachable(HandType17 t, int n_cards) {
  switch (category_of(t)) {
    case Category::Busted: return true;
    case Category::Pair:
    case Category::Straight:
    case Category::Flush:
    case Category::StraightFlush: return n_cards >= 2;
    case Category::Triple: return n_cards >= 3;
    case Category::TwoPair:
    case Category::FourOfAKind: return n_cards >= 4;
    case Category::FullHouse: return n_cards >= 5;
  }
  return false;
}

DealEstimate estimate_deal_matrices(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts) {
  if (num_deals == 0) throw MatrixError("num_deals must be at least 1");
  const DealCounts c = run_sharded<DealCounts>(num_deals, seed, opts, count_deal_shard);

  DealEstimate est;
  DealMatrices& m = est.matrices;
  m.final_prior = normalize_row(c.final_counts, 5);
  for (int r = 0; r < kNumRounds; ++r) {
    const int n_cards = r + 2;
    for (int i = 0; i < kNumHandTypes; ++i) {
      if (r == kNumRounds - 1) {
        m.c_given_f[r][i] = Vec17{};
        m.c_given_f[r][i][i] = 1.0;
      } else {
        m.c_given_f[r][i] = normalize_row(c.cf[r][i], n_cards);
      }
      m.u_given_c[r][i] = normalize_row(c.uc[r][i], n_cards - 1);
    }
  }
  est.tallies.deals = c.deals;
  est.tallies.final_counts = c.final_counts;
  est.tallies.current_counts = c.current;
  return est;
}

WinMatrix estimate_win_matrix(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts) {
  if (num_deals == 0) throw MatrixError("num_deals must be at least 1");
  const WinCounts c = run_sharded<WinCounts>(num_deals, seed, opts, count_win_shard);
  WinMatrix w = ordered_win_matrix();
  for (int i = 0; i < kNumHandTypes; ++i)
    if (c.games[i][i] > 0)
      w.w[i][i] = static_cast<double>(c.doubled_wins[i][i]) / (2.0 * static_cast<double>(c.games[i][i]));
  return w;
}

WinMatrix ordered_win_matrix() {
  WinMatrix w;
  for (int i = 0; i < kNumHandTypes; ++i)
    for (int j = 0; j < kNumHandTypes; ++j) w.w[i][j] = i > j ? 1.0 : (i < j ? 0.0 : 0.5);
  return w;
}

ActionCounts::ActionCounts() {
  for (auto& round : counts_)
    for (auto& row : round) row = {1.0, 1.0};
}

void ActionCounts::record(RoundId round, HandType17 opp_type, ActionClass cls, double weight) {
  counts_[round.index()][ordinal(opp_type)][static_cast<int>(cls)] += weight;
}

double ActionCounts::count(RoundId round, HandType17 opp_type, ActionClass cls) const {
  return counts_[round.index()][ordinal(opp_type)][static_cast<int>(cls)];
}

void ActionCounts::set_count(RoundId round, HandType17 opp_type, ActionClass cls, double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw MatrixError("action counts must be finite and nonnegative");
  counts_[round.index()][ordinal(opp_type)][static_cast<int>(cls)] = value;
}

ActionMatrix ActionCounts::matrix(RoundId round) const {
  ActionMatrix m{};
  for (int i = 0; i < kNumHandTypes; ++i) {
    const auto& c = counts_[round.index()][i];
    const double total = c[0] + c[1];
    m[i] = total > 0 ? std::array<double, 2>{c[0] / total, c[1] / total} : std::array<double, 2>{0.5, 0.5};
  }
  return m;
}

double ActionCounts::observations(RoundId round, HandType17 opp_type) const {
  const auto& c = counts_[round.index()][ordinal(opp_type)];
  return c[0] + c[1];
}

ActionCounts update_action_counts(ActionCounts counts, RoundId round, HandType17 opp_type, ActionClass cls) {
  counts.record(round, opp_type, cls);
  return counts;
}

ActionMatrix ActionCountsStore::matrix(const std::string& opponent, RoundId round) const {
  std::lock_guard lock(mu_);
  auto it = counts_.find(opponent);
  return it == counts_.end() ? ActionCounts{}.matrix(round) : it->second.matrix(round);
}

void ActionCountsStore::record(const std::string& opponent, RoundId round, HandType17 opp_type, ActionClass cls) {
  std::lock_guard lock(mu_);
  counts_[opponent].record(round, opp_type, cls);
  if (opponent != kPooledOpponent) counts_[kPooledOpponent].record(round, opp_type, cls);
}

ActionCounts ActionCountsStore::counts(const std::string& opponent) const {
  std::lock_guard lock(mu_);
  auto it = counts_.find(opponent);
  return it == counts_.end() ? ActionCounts{} : it->second;
}

std::map<std::string, ActionCounts> ActionCountsStore::snapshot() const {
  std::lock_guard lock(mu_);
  return counts_;
}

bool ActionCountsStore::has(const std::string& opponent) const {
  std::lock_guard lock(mu_);
  return counts_.contains(opponent);
}

MatrixSet build_matrix_set(std::uint64_t num_deals, std::uint64_t seed, const EstimateOptions& opts) {
  MatrixSet set;
  set.seed = seed;
  set.num_deals = num_deals;
  set.deal = estimate_deal_matrices(num_deals, seed, opts).matrices;
  set.win = estimate_win_matrix(num_deals, derive_seed(seed, 0x57494E), opts);
  return set;
}

void validate_distribution(const Vec17& v, const std::string& what, double tol) {
  double sum = 0;
  for (double x : v) {
    require(std::isfinite(x) && x >= 0.0, what + ": negative or non-finite entry");
    sum += x;
  }
  require(std::abs(sum - 1.0) <= tol, what + ": sums to " + std::to_string(sum) + ", not 1");
}

void validate_rows(const Mat17& m, const std::string& what, double tol) {
  for (int i = 0; i < kNumHandTypes; ++i) validate_distribution(m[i], what + " row " + std::to_string(i), tol);
}

std::string dump_matrix_set(const MatrixSet& set) {
  json j;
  j["format_version"] = MatrixSet::kFormatVersion;
  j["hand_types"] = hand_type_names();
  j["seed"] = set.seed;
  j["num_deals"] = set.num_deals;
  j["final_prior"] = set.deal.final_prior;
  j["c_given_f"] = json::array();
  j["u_given_c"] = json::array();
  for (int r = 0; r < kNumRounds; ++r) {
    j["c_given_f"].push_back(mat_to_json(set.deal.c_given_f[r]));
    j["u_given_c"].push_back(mat_to_json(set.deal.u_given_c[r]));
  }
  j["win_matrix"] = mat_to_json(set.win.w);
  json counts = json::object();
  for (const auto& [id, ac] : set.action_counts) {
    json rounds = json::array();
    for (int r = 1; r <= kNumRounds; ++r) {
      json rows = json::array();
      for (int t = 0; t < kNumHandTypes; ++t)
        rows.push_back({ac.count(RoundId(r), hand_type_from_ordinal(t), ActionClass::Conservative),
                        ac.count(RoundId(r), hand_type_from_ordinal(t), ActionClass::Aggressive)});
      rounds.push_back(std::move(rows));
    }
    counts[id] = std::move(rounds);
  }
  j["action_counts"] = std::move(counts);
  return j.dump(1);
}

MatrixSet parse_matrix_set(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MatrixError("matrix file parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  require(j.is_object(), "matrix file: top level must be an object");
  require(j.contains("format_version") && j["format_version"].is_number_integer(), "matrix file: missing format_version");
  const int version = j["format_version"].get<int>();
  require(version == MatrixSet::kFormatVersion, "matrix file: unsupported format_version " + std::to_string(version));
  if (j.contains("hand_types")) {
    const auto& names = hand_type_names();
    require(j["hand_types"] == json(names), "matrix file: hand_types header does not match this build's type order");
  }
  for (const char* key : {"seed", "num_deals", "final_prior", "c_given_f", "u_given_c", "win_matrix"})
    require(j.contains(key), std::string("matrix file: missing key ") + key);

  MatrixSet set;
  set.seed = j["seed"].get<std::uint64_t>();
  set.num_deals = j["num_deals"].get<std::uint64_t>();
  set.deal.final_prior = vec_from_json(j["final_prior"], "final_prior");
  validate_distribution(set.deal.final_prior, "final_prior");
  require(j["c_given_f"].is_array() && j["c_given_f"].size() == kNumRounds, "c_given_f: expected 4 matrices");
  require(j["u_given_c"].is_array() && j["u_given_c"].size() == kNumRounds, "u_given_c: expected 4 matrices");
  for (int r = 0; r < kNumRounds; ++r) {
    const std::string tag = "[" + std::to_string(r + 1) + "]";
    set.deal.c_given_f[r] = mat_from_json(j["c_given_f"][r], "c_given_f" + tag);
    set.deal.u_given_c[r] = mat_from_json(j["u_given_c"][r], "u_given_c" + tag);
    validate_rows(set.deal.c_given_f[r], "c_given_f" + tag);
    validate_rows(set.deal.u_given_c[r], "u_given_c" + tag);
  }
  set.win.w = mat_from_json(j["win_matrix"], "win_matrix");
  for (const Vec17& row : set.win.w)
    for (double x : row) require(x >= 0.0 && x <= 1.0, "win_matrix: entry outside [0,1]");

  if (j.contains("action_counts")) {
    require(j["action_counts"].is_object(), "action_counts: expected an object");
    for (const auto& [id, rounds] : j["action_counts"].items()) {
      const std::string what = "action_counts[" + id + "]";
      require(rounds.is_array() && rounds.size() == kNumRounds, what + ": expected 4 rounds");
      ActionCounts ac;
      for (int r = 0; r < kNumRounds; ++r) {
        require(rounds[r].is_array() && rounds[r].size() == kNumHandTypes, what + ": expected 17 rows");
        for (int t = 0; t < kNumHandTypes; ++t) {
          const json& cell = rounds[r][t];
          require(cell.is_array() && cell.size() == 2, what + ": expected [conservative, aggressive] pairs");
          for (int c = 0; c < 2; ++c) {
            require(cell[c].is_number(), what + ": non-numeric count");
            ac.set_count(RoundId(r + 1), hand_type_from_ordinal(t), static_cast<ActionClass>(c), cell[c].get<double>());
          }
          require(ac.observations(RoundId(r + 1), hand_type_from_ordinal(t)) > 0, what + ": row with zero total");
        }
      }
      set.action_counts.emplace(id, ac);
    }
  }
  return set;
}

void save_matrices(const std::filesystem::path& path, const MatrixSet& set) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw MatrixError("cannot open " + path.string() + " for writing");
  out << dump_matrix_set(set) << '\n';
  if (!out) throw MatrixError("write failed: " + path.string());
}

MatrixSet load_matrices(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MatrixError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_set(ss.str());
}

}  // namespace bayespoker
