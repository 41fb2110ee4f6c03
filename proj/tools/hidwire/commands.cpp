#include "commands.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <termios.h>
#include <unistd.h>

#include <boost/asio/io_context.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>

#include "config.hpp"
#include "hidwire/codec.hpp"
#include "hidwire/error.hpp"
#include "hidwire/transport.hpp"
#include "messages.hpp"
#include "pipeline.hpp"
#include "server.hpp"

namespace hidwire::cli {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

ReportDescriptor load_descriptor(const std::filesystem::path& path) {
  return parse_descriptor(parse_hex_text(read_file(path)));
}

// Puts a terminal into single-keystroke mode for the lifetime of the object.
class RawTerminal {
 public:
  RawTerminal() {
    if (!isatty(STDIN_FILENO) || tcgetattr(STDIN_FILENO, &saved_) != 0) return;
    termios raw = saved_;
    raw.c_lflag &= static_cast<tcflag_t>(~(ICANON | ECHO));
    raw.c_cc[VMIN] = 1;
    raw.c_cc[VTIME] = 0;
    active_ = tcsetattr(STDIN_FILENO, TCSANOW, &raw) == 0;
  }
  ~RawTerminal() {
    if (active_) tcsetattr(STDIN_FILENO, TCSANOW, &saved_);
  }
  RawTerminal(const RawTerminal&) = delete;
  RawTerminal& operator=(const RawTerminal&) = delete;

 private:
  termios saved_{};
  bool active_ = false;
};

}  // namespace

std::uint8_t parse_report_id(const std::string& text) {
  std::size_t used = 0;
  const unsigned long value = std::stoul(text, &used, 0);
  if (used != text.size() || value > 0xff) throw std::invalid_argument("report id must be 0..255");
  return static_cast<std::uint8_t>(value);
}

int cmd_dump_descriptor(const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  try {
    out << descriptor_to_json(load_descriptor(path)).dump() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_decode(const std::filesystem::path& descriptor, const std::string& report_id, const std::string& data_hex,
               std::ostream& out, std::ostream& err) {
  try {
    const auto desc = load_descriptor(descriptor);
    const auto data = parse_hex_text(data_hex);
    out << decoded_fields_to_json(decode_input_report(desc, parse_report_id(report_id), data)).dump() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
  } catch (const std::logic_error& e) {
    err << "invalid report id '" << report_id << "'\n";
  }
  return kExitFailure;
}

int cmd_replay(const ReplayArgs& args, std::ostream& out, std::ostream& err) {
  ServiceConfig config;
  try {
    if (args.config) config = load_config(*args.config);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitBadConfig;
  }
  try {
    const auto records = load_replay(args.log);
    joycon::Diagnostics notes;
    SimulatedJoyConRig rig(
        args.side, config.jump,
        [&](const EventMessage& m) { out << (args.json ? to_json_line(m) : to_text_line(m)) << '\n'; }, &notes);
    rig.replay(records);
    for (const auto& note : notes) err << "note: " << note << '\n';
    out.flush();
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_serve(const ServeArgs& args, std::ostream& err) {
  ServiceOptions options;
  try {
    if (args.config) options.config = load_config(*args.config);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitBadConfig;
  }
  if (args.port) options.config.serve.port = *args.port;
  if (args.realtime) options.config.serve.realtime = true;
  if (args.wait_clients) options.config.serve.wait_clients = *args.wait_clients;
  try {
    if (args.replay) options.replay = load_replay(*args.replay);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitFailure;
  }

  boost::asio::io_context ioc(1);
  std::unique_ptr<Service> service;
  try {
    service = std::make_unique<Service>(ioc, std::move(options));
  } catch (const PortInUse& e) {
    err << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitFailure;
  }
  err << "listening on ws://127.0.0.1:" << service->port() << '\n';
  service->start();

  boost::asio::signal_set signals(ioc, SIGINT, SIGTERM);
  signals.async_wait([&](const boost::system::error_code&, int) {
    service->stop();
    ioc.stop();
  });

  std::optional<RawTerminal> raw;
  if (args.stdin_sim) {
    raw.emplace();
    err << "stdin simulator: press space to jump, q to quit\n";
    // Blocking reads stay off the io thread; each key is posted to it.
    std::thread([&ioc, svc = service.get()] {
      char c = 0;
      while (std::cin.get(c)) {
        if (c == ' ') {
          boost::asio::post(ioc, [svc] { svc->simulate_press(); });
        } else if (c == 'q') {
          boost::asio::post(ioc, [svc, &ioc] {
            svc->stop();
            ioc.stop();
          });
          return;
        }
      }
    }).detach();
  }

  ioc.run();
  return kExitOk;
}

}  // namespace hidwire::cli
