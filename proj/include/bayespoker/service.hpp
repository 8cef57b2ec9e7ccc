#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bayespoker/engine.hpp"
#include "bayespoker/players.hpp"

namespace bayespoker {

inline constexpr int kWireSchemaVersion = 1;

/// Error surfaced to a client, carrying the HTTP status to answer with.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message, nlohmann::json extra = nlohmann::json::object())
      : std::runtime_error(message), status_(status), code_(std::move(code)), extra_(std::move(extra)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }
  nlohmann::json payload() const;

 private:
  int status_;
  std::string code_;
  nlohmann::json extra_;
};

struct ServiceConfig {
  std::shared_ptr<const Knowledge> knowledge;
  CurveParams params{};
  std::shared_ptr<ActionCountsStore> counts = std::make_shared<ActionCountsStore>();
  std::uint64_t seed = 0;
  GameConfig game{};
  /// Test hook: builds the deck for a session's n-th game.
  std::function<Deck(std::uint64_t game_seed)> deck_factory;
};

/// Human-vs-BPP sessions. One human seat per session; BPP moves are made
/// synchronously whenever it is BPP's turn. Every message meant for the
/// human is appended to the session's outbox, which the stream endpoint
/// replays in order.
class SessionManager {
 public:
  explicit SessionManager(ServiceConfig config);
  ~SessionManager();

  /// Anonymous players (empty name) learn into the pooled pseudo-opponent.
  std::string create_session(const std::string& display_name);
  /// {"kind":"state","payload":{...}}
  nlohmann::json state(const std::string& session_id) const;
  /// Applies the human's action and any BPP replies. Throws ServiceError
  /// when the action is unknown, out of turn or illegal.
  nlohmann::json submit(const std::string& session_id, const std::string& action);
  /// Blocks up to `timeout` for outbox messages past `cursor`.
  std::vector<nlohmann::json> wait_messages(const std::string& session_id, std::size_t cursor,
                                            std::chrono::milliseconds timeout) const;
  std::vector<GameRecord> finished_games(const std::string& session_id) const;
  std::size_t session_count() const;

  struct Session;

 private:
  std::shared_ptr<Session> find(const std::string& id) const;

  ServiceConfig config_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_session_ = 0;
};

/// Minimal blocking HTTP + WebSocket front end for SessionManager.
///
///   GET  /healthz               -> ok
///   POST /games                 -> {"session_id": ...}   body: {"name": "..."} (optional)
///   GET  /games/{id}            -> state message
///   POST /games/{id}/action     -> body {"action": "PASS|CALL|BET|RAISE|FOLD"}
///   GET  /games/{id}/stream     -> WebSocket; pushes outbox messages, accepts action_submit
class HttpServer {
 public:
  HttpServer(SessionManager& sessions, const std::string& address, unsigned short port);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  unsigned short port() const;
  /// Serves on a background thread until stop().
  void start();
  /// Serves on the calling thread until stop() is called elsewhere.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Dispatches one HTTP request without a socket; the server and the tests
/// share it. Returns (status, body).
std::pair<int, std::string> handle_http(SessionManager& sessions, const std::string& method, const std::string& target,
                                        const std::string& body);

}  // namespace bayespoker
