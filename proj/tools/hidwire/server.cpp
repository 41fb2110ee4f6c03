#include "server.hpp"

#include <algorithm>
#include <iostream>

#include <boost/asio/post.hpp>
#include <boost/beast/core/buffers_to_string.hpp>
#include <boost/beast/websocket.hpp>
#include <json.hpp>

namespace hidwire::cli {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

// Replay pauses while any client has more than this many frames queued.
constexpr std::size_t kReplayHighWater = 256;

}  // namespace

// WsSession

WsSession::WsSession(tcp::socket socket, EventHub& hub) : ws_(std::move(socket)), hub_(hub) {}

void WsSession::start() {
  ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
  ws_.async_accept([self = shared_from_this()](beast::error_code ec) { self->on_accept(ec); });
}

void WsSession::on_accept(beast::error_code ec) {
  if (ec) return fail();
  ws_.text(true);
  joined_ = true;
  hub_.join(shared_from_this());
  do_read();
}

void WsSession::do_read() {
  ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t bytes) {
    self->on_read(ec, bytes);
  });
}

void WsSession::on_read(beast::error_code ec, std::size_t) {
  if (ec) return fail();
  const auto doc = nlohmann::json::parse(beast::buffers_to_string(buffer_.data()), nullptr, false);
  buffer_.consume(buffer_.size());
  if (doc.is_object() && doc.value("type", "") == "ping") {
    send(std::make_shared<const std::string>(pong_message()));
  }
  do_read();
}

void WsSession::send(std::shared_ptr<const std::string> message) {
  if (closed_) return;
  if (queue_.size() >= hub_.queue_limit()) {
    std::cerr << "dropping slow client after " << queue_.size() << " queued messages\n";
    return fail();
  }
  queue_.push_back(std::move(message));
  if (queue_.size() == 1) do_write();
}

void WsSession::do_write() {
  ws_.async_write(net::buffer(*queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t bytes) {
    self->on_write(ec, bytes);
  });
}

void WsSession::on_write(beast::error_code ec, std::size_t) {
  if (ec) return fail();
  queue_.pop_front();
  if (!queue_.empty() && !closed_) do_write();
}

void WsSession::close() { fail(); }

void WsSession::fail() {
  if (closed_) return;
  closed_ = true;
  beast::error_code ignored;
  beast::get_lowest_layer(ws_).socket().close(ignored);
  if (joined_) hub_.leave(this);
}

// EventHub

void EventHub::join(const std::shared_ptr<WsSession>& session) {
  sessions_.push_back(session);
  session->send(std::make_shared<const std::string>(hello_message()));
  if (on_join) on_join();
}

void EventHub::leave(const WsSession* session) {
  std::erase_if(sessions_, [&](const auto& s) { return s.get() == session; });
}

void EventHub::broadcast(const std::string& message) {
  auto shared = std::make_shared<const std::string>(message);
  // send() may drop a client, which edits sessions_.
  auto targets = sessions_;
  for (const auto& s : targets) s->send(shared);
}

void EventHub::close_all() {
  auto targets = sessions_;
  for (const auto& s : targets) s->close();
}

std::size_t EventHub::max_queue_depth() const {
  std::size_t depth = 0;
  for (const auto& s : sessions_) depth = std::max(depth, s->queued());
  return depth;
}

// Service

Service::Service(net::io_context& ioc, ServiceOptions options)
    : ioc_(ioc),
      options_(std::move(options)),
      acceptor_(ioc),
      hub_(options_.queue_limit),
      rig_(options_.side, options_.config.jump,
           [this](const EventMessage& m) { hub_.broadcast(to_json_line(m)); }),
      timer_(ioc),
      started_at_(std::chrono::steady_clock::now()) {
  const tcp::endpoint endpoint(net::ip::make_address(options_.bind_address), options_.config.serve.port);
  beast::error_code ec;
  acceptor_.open(endpoint.protocol(), ec);
  if (!ec) acceptor_.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec) acceptor_.bind(endpoint, ec);
  if (!ec) acceptor_.listen(net::socket_base::max_listen_connections, ec);
  if (ec == net::error::address_in_use) {
    throw PortInUse("PortInUse: port " + std::to_string(options_.config.serve.port) + " is already bound");
  }
  if (ec) throw std::runtime_error("listen failed: " + ec.message());
  port_ = acceptor_.local_endpoint().port();
  hub_.on_join = [this] { maybe_start_replay(); };
}

void Service::start() {
  do_accept();
  maybe_start_replay();
}

void Service::stop() {
  beast::error_code ignored;
  acceptor_.close(ignored);
  timer_.cancel();
  hub_.close_all();
}

void Service::do_accept() {
  acceptor_.async_accept([this](beast::error_code ec, tcp::socket socket) {
    if (ec) return;  // acceptor closed
    std::make_shared<WsSession>(std::move(socket), hub_)->start();
    do_accept();
  });
}

void Service::maybe_start_replay() {
  if (!options_.replay || replay_started_) return;
  if (hub_.clients() < options_.config.serve.wait_clients) return;
  replay_started_ = true;
  replay_started_at_ = std::chrono::steady_clock::now();
  // Let the joining client's hello go out first.
  net::post(ioc_, [this] { replay_step(); });
}

void Service::replay_step() {
  const auto& records = *options_.replay;
  if (replay_next_ >= records.size()) {
    replay_finished_ = true;
    return;
  }
  const auto& record = records[replay_next_];
  if (options_.config.serve.realtime) {
    const auto due = replay_started_at_ + std::chrono::milliseconds(record.t_ms - records.front().t_ms);
    if (std::chrono::steady_clock::now() < due) {
      timer_.expires_at(due);
      timer_.async_wait([this](beast::error_code ec) {
        if (!ec) replay_step();
      });
      return;
    }
  } else if (hub_.max_queue_depth() > kReplayHighWater) {
    timer_.expires_after(std::chrono::milliseconds(1));
    timer_.async_wait([this](beast::error_code ec) {
      if (!ec) replay_step();
    });
    return;
  }
  rig_.replay(std::span(&record, 1));
  ++replay_next_;
  net::post(ioc_, [this] { replay_step(); });
}

void Service::advance_wall_clock() {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                             started_at_);
  rig_.transport().clock().advance_to(elapsed.count());
}

void Service::simulate_press() {
  using joycon::RawImuSample;
  advance_wall_clock();

  Bytes simple(joycon::kSimpleReportLength, 0);
  simple[0] = 0x01;
  rig_.inject(joycon::kSimpleReportId, simple);

  // ~1 g at rest, ~3 g spike, then rest again one report later.
  constexpr std::int16_t kRest = 4096;
  constexpr std::int16_t kSpike = 12295;
  const RawImuSample rest{{0, 0, kRest}, {}};
  const RawImuSample spike{{0, 0, kSpike}, {}};
  const std::array<RawImuSample, 3> first{rest, spike, spike};
  const std::array<RawImuSample, 3> second{rest, rest, rest};
  rig_.inject(joycon::kStandardReportId, joycon::encode_standard_report(0, first, sim_timer_++));
  rig_.transport().clock().advance_by(15);
  rig_.inject(joycon::kStandardReportId, joycon::encode_standard_report(0, second, sim_timer_++));
}

}  // namespace hidwire::cli
