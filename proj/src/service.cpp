#include "bayespoker/service.hpp"

#include <algorithm>
#include <cstdio>

namespace bayespoker {

using json = nlohmann::json;

json ServiceError::payload() const {
  json p = extra_;
  p["code"] = code_;
  p["message"] = what();
  return p;
}

namespace {

json cards_json(std::span<const Card> cards) {
  json out = json::array();
  for (const Card& c : cards) out.push_back(c.str());
  return out;
}

json actions_json(const std::vector<Action>& actions) {
  json out = json::array();
  for (Action a : actions) out.push_back(to_string(a));
  return out;
}

std::string hex_id(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

struct SessionManager::Session {
  std::string id;
  std::string learner_key;  // opponent id BPP learns under
  std::uint64_t seed = 0;
  std::uint64_t game_index = 0;
  int human_seat = 0;
  int running_net = 0;
  std::unique_ptr<Game> game;
  std::unique_ptr<BppAgent> bpp;
  std::unique_ptr<Rng> bpp_rng;
  std::vector<json> outbox;
  std::optional<json> last_result;
  std::vector<GameRecord> finished;

  mutable std::mutex mu;
  mutable std::condition_variable cv;

  int bpp_seat() const { return 1 - human_seat; }

  json state_payload() const {
    const PlayerView v = game->view(human_seat);
    json history = json::array();
    for (const HistoryEntry& h : game->history())
      history.push_back({{"by", h.seat == human_seat ? "you" : "opponent"}, {"round", h.round}, {"action", to_string(h.action)}});
    json p;
    p["schema_version"] = kWireSchemaVersion;
    p["session_id"] = id;
    p["game_index"] = game_index;
    p["round"] = game->round();
    p["pot"] = game->pot();
    p["your_seat"] = human_seat;
    p["your_hole"] = v.own_hole.str();
    p["your_up"] = cards_json(v.own_up);
    p["opp_up"] = cards_json(v.opp_up);
    p["to_act"] = game->finished() ? json(nullptr) : json(game->to_act() == human_seat ? "you" : "opponent");
    p["legal_actions"] = actions_json(v.legal);
    p["raises_this_round"] = game->raises_this_round();
    p["history"] = std::move(history);
    p["phase"] = to_string(game->phase());
    p["running_net"] = running_net;
    p["last_result"] = last_result ? *last_result : json(nullptr);
    return p;
  }

  void push(const char* kind, json payload) {
    outbox.push_back({{"kind", kind}, {"seq", outbox.size()}, {"payload", std::move(payload)}});
  }

  void publish_state() {
    push("state", state_payload());
    if (!game->finished() && game->to_act() == human_seat)
      push("action_request", {{"session_id", id}, {"legal_actions", actions_json(game->legal_actions())}});
    cv.notify_all();
  }
};

SessionManager::SessionManager(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.knowledge) throw std::invalid_argument("service needs loaded matrices");
  if (!config_.counts) config_.counts = std::make_shared<ActionCountsStore>();
}

SessionManager::~SessionManager() = default;

namespace {

// Requires the session lock.
void start_game(SessionManager::Session& s, const ServiceConfig& cfg);
void finish_game(SessionManager::Session& s);

void run_bpp(SessionManager::Session& s, const ServiceConfig& cfg) {
  while (true) {
    while (!s.game->finished() && s.game->to_act() == s.bpp_seat()) {
      const Action a = s.bpp->decide(s.game->view(s.bpp_seat()), *s.bpp_rng);
      s.game->submit(s.bpp_seat(), a);
    }
    if (!s.game->finished()) return;
    finish_game(s);
    start_game(s, cfg);
    if (s.game->to_act() == s.human_seat) return;
  }
}

void finish_game(SessionManager::Session& s) {
  const GameRecord& rec = s.game->record();
  s.bpp->observe(rec, s.bpp_seat());
  const int h = s.human_seat;
  const int o = 1 - h;
  s.running_net += rec.net[h];
  json result;
  result["session_id"] = s.id;
  result["game_index"] = s.game_index;
  result["winner"] = !rec.winner ? "tie" : (*rec.winner == h ? "you" : "opponent");
  result["reason"] = to_string(rec.reason);
  result["your_net"] = rec.net[h];
  result["running_net"] = s.running_net;
  result["your_cards"] = cards_json(rec.cards[h]);
  result["opp_up"] = cards_json(std::span(rec.cards[o]).subspan(1));
  if (rec.reason == EndReason::Showdown) {
    result["opp_hole"] = rec.cards[o][0].str();
    result["opp_hand_type"] = to_string(classify_final(rec.cards[o]));
    result["your_hand_type"] = to_string(classify_final(rec.cards[h]));
  } else {
    // A folded hand is never shown.
    result["opp_hole"] = nullptr;
    result["opp_hand_type"] = nullptr;
  }
  s.last_result = result;
  s.finished.push_back(rec);
  s.push("result", std::move(result));
}

void start_game(SessionManager::Session& s, const ServiceConfig& cfg) {
  if (s.game) ++s.game_index;
  s.human_seat = static_cast<int>(s.game_index % 2);
  const std::uint64_t seed = derive_seed(s.seed, s.game_index);
  std::array<std::string, 2> ids;
  ids[s.human_seat] = s.learner_key;
  ids[s.bpp_seat()] = "bpp";
  s.game = cfg.deck_factory ? std::make_unique<Game>(cfg.deck_factory(seed), seed, cfg.game, ids)
                            : std::make_unique<Game>(seed, cfg.game, ids);
  std::array<std::string, 2> kinds;
  kinds[s.human_seat] = "remote_human";
  kinds[s.bpp_seat()] = "bpp";
  s.game->set_agent_kinds(kinds);
  s.bpp_rng = std::make_unique<Rng>(derive_seed(seed, 0xB99));
}

}  // namespace

std::string SessionManager::create_session(const std::string& display_name) {
  auto s = std::make_shared<Session>();
  {
    std::lock_guard lock(mu_);
    const std::uint64_t n = next_session_++;
    s->seed = derive_seed(config_.seed, n);
    s->id = hex_id(derive_seed(s->seed, 0x1D));
    while (sessions_.contains(s->id)) s->id = hex_id(derive_seed(std::stoull(s->id, nullptr, 16), n));
    sessions_[s->id] = s;
  }
  std::lock_guard lock(s->mu);
  s->learner_key = display_name.empty() ? kPooledOpponent : display_name;
  s->bpp = std::make_unique<BppAgent>("bpp", config_.knowledge, config_.counts, config_.params);
  start_game(*s, config_);
  run_bpp(*s, config_);
  s->publish_state();
  return s->id;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "unknown_session", "unknown session " + id);
  return it->second;
}

json SessionManager::state(const std::string& session_id) const {
  auto s = find(session_id);
  std::lock_guard lock(s->mu);
  return {{"kind", "state"}, {"payload", s->state_payload()}};
}

json SessionManager::submit(const std::string& session_id, const std::string& action_text) {
  auto s = find(session_id);
  std::lock_guard lock(s->mu);
  const auto action = parse_action(action_text);
  if (!action) throw ServiceError(400, "bad_action", "unknown action '" + action_text + "'");
  const std::uint64_t game_before = s->game_index;
  const SubmitResult r = s->game->submit(s->human_seat, *action);
  switch (r.status) {
    case SubmitStatus::OutOfTurn: throw ServiceError(409, "out_of_turn", "action out of turn");
    case SubmitStatus::GameOver: throw ServiceError(409, "game_over", r.message);
    case SubmitStatus::Illegal: {
      json extra{{"legal_actions", actions_json(s->game->legal_actions())}};
      s->push("error", {{"code", "illegal_action"}, {"message", r.message}, {"legal_actions", extra["legal_actions"]}});
      s->cv.notify_all();
      throw ServiceError(422, "illegal_action", r.message, extra);
    }
    case SubmitStatus::Forfeited:
    case SubmitStatus::Accepted: break;
  }
  run_bpp(*s, config_);
  s->publish_state();
  json resp;
  resp["accepted"] = r.status == SubmitStatus::Accepted;
  if (r.status == SubmitStatus::Forfeited) resp["message"] = r.message;
  resp["state"] = s->state_payload();
  resp["result"] = s->game_index != game_before && s->last_result ? *s->last_result : json(nullptr);
  return resp;
}

std::vector<json> SessionManager::wait_messages(const std::string& session_id, std::size_t cursor,
                                                std::chrono::milliseconds timeout) const {
  auto s = find(session_id);
  std::unique_lock lock(s->mu);
  s->cv.wait_for(lock, timeout, [&] { return s->outbox.size() > cursor; });
  if (s->outbox.size() <= cursor) return {};
  return {s->outbox.begin() + static_cast<std::ptrdiff_t>(cursor), s->outbox.end()};
}

std::vector<GameRecord> SessionManager::finished_games(const std::string& session_id) const {
  auto s = find(session_id);
  std::lock_guard lock(s->mu);
  return s->finished;
}

std::size_t SessionManager::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::pair<int, std::string> handle_http(SessionManager& sessions, const std::string& method, const std::string& target,
                                        const std::string& body) {
  auto error = [](const ServiceError& e) {
    return std::pair{e.status(), json{{"kind", "error"}, {"payload", e.payload()}}.dump()};
  };
  try {
    std::string path = target.substr(0, target.find('?'));
    if (path == "/healthz") return {200, "ok"};
    if (path == "/games" && method == "POST") {
      std::string name;
      if (!body.empty()) {
        const json j = json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw ServiceError(400, "bad_request", "body must be a JSON object");
        if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
      }
      return {201, json{{"session_id", sessions.create_session(name)}}.dump()};
    }
    const std::string prefix = "/games/";
    if (path.rfind(prefix, 0) == 0) {
      std::string rest = path.substr(prefix.size());
      const auto slash = rest.find('/');
      const std::string id = rest.substr(0, slash);
      const std::string tail = slash == std::string::npos ? "" : rest.substr(slash);
      if (tail.empty() && method == "GET") return {200, sessions.state(id).dump()};
      if (tail == "/action" && method == "POST") {
        const json j = json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("action") || !j["action"].is_string())
          throw ServiceError(400, "bad_request", "expected {\"action\": \"PASS|CALL|BET|RAISE|FOLD\"}");
        return {200, sessions.submit(id, j["action"].get<std::string>()).dump()};
      }
    }
    throw ServiceError(404, "not_found", "no route for " + method + " " + path);
  } catch (const ServiceError& e) {
    return error(e);
  } catch (const std::exception& e) {
    return error(ServiceError(500, "internal", e.what()));
  }
}

}  // namespace bayespoker
