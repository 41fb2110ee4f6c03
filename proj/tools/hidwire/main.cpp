#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace hidwire::cli;

  CLI::App app{"hidwire: HID descriptor tools and Joy-Con event service"};
  app.require_subcommand(1);

  std::string descriptor_path;
  auto* dump = app.add_subcommand("dump-descriptor", "Parse a hex descriptor file and print it as JSON");
  dump->add_option("file", descriptor_path, "Descriptor as whitespace/comma separated hex")->required();

  std::string decode_descriptor;
  std::string decode_report_id;
  std::string decode_data;
  auto* decode = app.add_subcommand("decode", "Decode one input report against a descriptor");
  decode->add_option("--descriptor", decode_descriptor, "Descriptor hex file")->required();
  decode->add_option("--report-id", decode_report_id, "Report id (decimal or 0x..)")->required();
  decode->add_option("--data", decode_data, "Report body as hex")->required();

  ReplayArgs replay_args;
  std::string replay_config;
  std::string replay_side = "right";
  auto* replay = app.add_subcommand("replay", "Run a replay log through the Joy-Con pipeline");
  replay->add_option("log", replay_args.log, "JSONL replay log")->required();
  replay->add_option("--config", replay_config, "TOML config file");
  replay->add_flag("--json", replay_args.json, "Print one JSON object per event");
  replay->add_option("--side", replay_side, "Simulated Joy-Con side")->check(CLI::IsMember({"left", "right"}));

  ServeArgs serve_args;
  std::uint16_t port = 9001;
  std::string serve_config;
  std::string serve_replay;
  unsigned wait_clients = 1;
  auto* serve = app.add_subcommand("serve", "Stream Joy-Con events to WebSocket clients");
  auto* port_opt = serve->add_option("--port", port, "TCP port (default 9001)");
  serve->add_option("--config", serve_config, "TOML config file");
  auto* replay_opt = serve->add_option("--replay", serve_replay, "Replay log to stream");
  auto* sim_opt = serve->add_flag("--stdin-sim", serve_args.stdin_sim, "Space bar simulates a jump");
  replay_opt->excludes(sim_opt);
  serve->add_flag("--realtime", serve_args.realtime, "Honor replay timestamps with wall-clock sleeps");
  auto* wait_opt = serve->add_option("--wait-clients", wait_clients, "Clients to wait for before replaying");

  CLI11_PARSE(app, argc, argv);

  if (dump->parsed()) return cmd_dump_descriptor(descriptor_path, std::cout, std::cerr);
  if (decode->parsed()) return cmd_decode(decode_descriptor, decode_report_id, decode_data, std::cout, std::cerr);
  if (replay->parsed()) {
    if (!replay_config.empty()) replay_args.config = replay_config;
    replay_args.side = replay_side == "left" ? hidwire::joycon::Side::Left : hidwire::joycon::Side::Right;
    return cmd_replay(replay_args, std::cout, std::cerr);
  }
  if (serve->parsed()) {
    if (port_opt->count() > 0) serve_args.port = port;
    if (!serve_config.empty()) serve_args.config = serve_config;
    if (!serve_replay.empty()) serve_args.replay = serve_replay;
    if (wait_opt->count() > 0) serve_args.wait_clients = wait_clients;
    return cmd_serve(serve_args, std::cerr);
  }
  return kExitFailure;
}
