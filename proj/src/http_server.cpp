#include <atomic>
#include <deque>
#include <list>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "bayespoker/service.hpp"

namespace bayespoker {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct HttpServer::Impl {
  SessionManager& sessions;
  asio::io_context ioc;
  tcp::acceptor acceptor;
  std::thread thread;
  std::atomic<bool> stopping{false};

  std::mutex conn_mu;
  std::condition_variable conn_cv;
  std::list<std::shared_ptr<tcp::socket>> connections;

  Impl(SessionManager& s, const std::string& address, unsigned short port)
      : sessions(s), acceptor(ioc, tcp::endpoint(asio::ip::make_address(address), port)) {}

  void accept_next() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec || stopping) return;
      auto sock = std::make_shared<tcp::socket>(std::move(socket));
      std::list<std::shared_ptr<tcp::socket>>::iterator it;
      {
        std::lock_guard lock(conn_mu);
        it = connections.insert(connections.end(), sock);
      }
      std::thread([this, sock, it] {
        serve(*sock);
        std::lock_guard lock(conn_mu);
        connections.erase(it);
        conn_cv.notify_all();
      }).detach();
      accept_next();
    });
  }

  void serve(tcp::socket& socket) {
    beast::error_code ec;
    beast::flat_buffer buffer;
    while (!stopping) {
      http::request<http::string_body> req;
      http::read(socket, buffer, req, ec);
      if (ec) break;
      if (websocket::is_upgrade(req)) {
        stream(std::move(socket), req);
        return;
      }
      const auto [status, body] =
          handle_http(sessions, std::string(req.method_string()), std::string(req.target()), req.body());
      http::response<http::string_body> res{static_cast<http::status>(status), req.version()};
      res.set(http::field::server, "bayespoker");
      res.set(http::field::content_type, body == "ok" ? "text/plain" : "application/json");
      res.keep_alive(req.keep_alive());
      res.body() = body;
      res.prepare_payload();
      http::write(socket, res, ec);
      if (ec || !res.keep_alive()) break;
    }
    socket.shutdown(tcp::socket::shutdown_send, ec);
  }

  void stream(tcp::socket socket, const http::request<http::string_body>& req) {
    const std::string target(req.target());
    const std::string prefix = "/games/";
    const std::string suffix = "/stream";
    beast::error_code ec;
    std::string id;
    if (target.rfind(prefix, 0) == 0 && target.size() > prefix.size() + suffix.size() &&
        target.compare(target.size() - suffix.size(), suffix.size(), suffix) == 0)
      id = target.substr(prefix.size(), target.size() - prefix.size() - suffix.size());
    try {
      if (id.empty()) throw ServiceError(404, "not_found", "no stream at " + target);
      sessions.state(id);
    } catch (const ServiceError& e) {
      http::response<http::string_body> res{static_cast<http::status>(e.status()), req.version()};
      res.set(http::field::content_type, "application/json");
      res.body() = nlohmann::json{{"kind", "error"}, {"payload", e.payload()}}.dump();
      res.prepare_payload();
      http::write(socket, res, ec);
      return;
    }
    auto ws = std::make_shared<WsSession>(*this, id, std::move(socket));
    ws->ws.accept(req, ec);
    if (ec) return;
    // From here on the connection lives on the io_context thread.
    asio::post(ws->ws.get_executor(), [ws] { ws->start(); });
  }

  /// One WebSocket client: replays the session outbox in order and accepts
  /// {"kind":"action_submit","payload":{"action":"CALL"}} frames.
  struct WsSession : std::enable_shared_from_this<WsSession> {
    Impl& impl;
    std::string id;
    websocket::stream<tcp::socket> ws;
    beast::flat_buffer in;
    asio::steady_timer timer;
    std::deque<std::string> queue;
    std::size_t cursor = 0;
    bool writing = false;
    bool closed = false;

    WsSession(Impl& i, std::string session_id, tcp::socket socket)
        : impl(i), id(std::move(session_id)), ws(std::move(socket)), timer(ws.get_executor()) {}

    void start() {
      read();
      poll();
    }

    void read() {
      ws.async_read(in, [self = shared_from_this()](beast::error_code ec, std::size_t) {
        if (ec) {
          self->closed = true;
          self->timer.cancel();
          return;
        }
        const std::string text = beast::buffers_to_string(self->in.data());
        self->in.consume(self->in.size());
        self->receive(text);
        self->read();
      });
    }

    void poll() {
      if (closed || impl.stopping) return;
      try {
        for (const auto& msg : impl.sessions.wait_messages(id, cursor, std::chrono::milliseconds(0))) {
          queue.push_back(msg.dump());
          ++cursor;
        }
      } catch (const ServiceError& e) {
        send_error(e);
      }
      flush();
      timer.expires_after(std::chrono::milliseconds(25));
      timer.async_wait([self = shared_from_this()](beast::error_code ec) {
        if (!ec) self->poll();
      });
    }

    void receive(const std::string& text) {
      const auto j = nlohmann::json::parse(text, nullptr, false);
      const bool well_formed = j.is_object() && j.value("kind", "") == "action_submit" && j.contains("payload") &&
                               j["payload"].is_object() && j["payload"].contains("action") &&
                               j["payload"]["action"].is_string();
      if (!well_formed) {
        send_error(ServiceError(400, "bad_request", R"(expected {"kind":"action_submit","payload":{"action":...}})"));
        return;
      }
      try {
        impl.sessions.submit(id, j["payload"]["action"].get<std::string>());
      } catch (const ServiceError& e) {
        // Illegal actions already reach the client through the outbox.
        if (e.code() != "illegal_action") send_error(e);
      }
      poll_now();
    }

    void poll_now() {
      timer.cancel();
      poll();
    }

    void send_error(const ServiceError& e) {
      queue.push_back(nlohmann::json{{"kind", "error"}, {"payload", e.payload()}}.dump());
      flush();
    }

    void flush() {
      if (writing || queue.empty() || closed) return;
      writing = true;
      ws.async_write(asio::buffer(queue.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
        self->writing = false;
        if (ec) {
          self->closed = true;
          return;
        }
        self->queue.pop_front();
        self->flush();
      });
    }
  };
};

HttpServer::HttpServer(SessionManager& sessions, const std::string& address, unsigned short port)
    : impl_(std::make_unique<Impl>(sessions, address, port)) {}

HttpServer::~HttpServer() { stop(); }

unsigned short HttpServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void HttpServer::run() {
  impl_->accept_next();
  impl_->ioc.run();
}

void HttpServer::start() {
  impl_->accept_next();
  impl_->thread = std::thread([this] { impl_->ioc.run(); });
}

void HttpServer::stop() {
  if (impl_->stopping.exchange(true)) return;
  asio::post(impl_->ioc, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->ioc.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  std::unique_lock lock(impl_->conn_mu);
  for (auto& sock : impl_->connections) {
    beast::error_code ec;
    sock->shutdown(tcp::socket::shutdown_both, ec);
  }
  impl_->conn_cv.wait(lock, [this] { return impl_->connections.empty(); });
}

}  // namespace bayespoker
