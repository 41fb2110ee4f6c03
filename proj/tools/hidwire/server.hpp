#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core/flat_buffer.hpp>
#include <boost/beast/core/tcp_stream.hpp>
#include <boost/beast/websocket/stream.hpp>

#include "config.hpp"
#include "hidwire/transport.hpp"
#include "pipeline.hpp"

namespace hidwire::cli {

class PortInUse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kClientQueueLimit = 1024;

class EventHub;

/// One WebSocket client. Runs entirely on the io_context thread.
class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(boost::asio::ip::tcp::socket socket, EventHub& hub);

  void start();
  /// Queues a text frame. Overflowing the bounded queue drops the client.
  void send(std::shared_ptr<const std::string> message);
  void close();
  std::size_t queued() const { return queue_.size(); }

 private:
  void on_accept(boost::beast::error_code ec);
  void do_read();
  void on_read(boost::beast::error_code ec, std::size_t bytes);
  void do_write();
  void on_write(boost::beast::error_code ec, std::size_t bytes);
  void fail();

  boost::beast::websocket::stream<boost::beast::tcp_stream> ws_;
  boost::beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  EventHub& hub_;
  bool joined_ = false;
  bool closed_ = false;
};

/// Fan-out of server messages to every joined client.
class EventHub {
 public:
  explicit EventHub(std::size_t queue_limit = kClientQueueLimit) : queue_limit_(queue_limit) {}

  /// Sends hello to the new client before anything else.
  void join(const std::shared_ptr<WsSession>& session);
  void leave(const WsSession* session);
  void broadcast(const std::string& message);
  void close_all();

  std::size_t clients() const { return sessions_.size(); }
  std::size_t max_queue_depth() const;
  std::size_t queue_limit() const { return queue_limit_; }

  std::function<void()> on_join;

 private:
  std::size_t queue_limit_;
  std::vector<std::shared_ptr<WsSession>> sessions_;
};

struct ServiceOptions {
  ServiceConfig config;
  std::optional<std::vector<ReplayRecord>> replay;
  joycon::Side side = joycon::Side::Right;
  std::string bind_address = "127.0.0.1";
  std::size_t queue_limit = kClientQueueLimit;
};

/// Event service: owns the simulated Joy-Con, the jump pipeline and the
/// listener. Single-threaded; all members run on `ioc`.
class Service {
 public:
  /// Binds immediately; throws PortInUse. Port 0 picks a free port.
  Service(boost::asio::io_context& ioc, ServiceOptions options);

  std::uint16_t port() const { return port_; }
  EventHub& hub() { return hub_; }

  void start();
  void stop();

  /// Simulator input: one simple-mode A press plus a standard-mode report
  /// carrying a 3 g spike. Must run on the io_context.
  void simulate_press();

  bool replay_finished() const { return replay_finished_; }
  std::size_t replayed() const { return replay_next_; }

 private:
  void do_accept();
  void maybe_start_replay();
  void replay_step();
  void advance_wall_clock();

  boost::asio::io_context& ioc_;
  ServiceOptions options_;
  boost::asio::ip::tcp::acceptor acceptor_;
  std::uint16_t port_ = 0;
  EventHub hub_;
  SimulatedJoyConRig rig_;
  boost::asio::steady_timer timer_;
  std::chrono::steady_clock::time_point started_at_;
  std::chrono::steady_clock::time_point replay_started_at_;
  bool replay_started_ = false;
  bool replay_finished_ = false;
  std::size_t replay_next_ = 0;
  std::uint8_t sim_timer_ = 0;
};

}  // namespace hidwire::cli
