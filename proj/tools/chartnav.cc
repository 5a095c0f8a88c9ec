// Command-line front end: replay traces, serve sessions, inspect charts.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "chartnav/harness.h"
#include "chartnav/server.h"

namespace {

chartnav::Server* g_server = nullptr;

void OnSignal(int) {
  if (g_server) g_server->Stop();
}

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("chartnav");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("CHARTA11Y_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();

  CLI::App app{"Touch exploration engine for accessible charts"};
  app.require_subcommand(1);

  std::string config_path;
  std::string trace_path;
  std::string output;
  bool force = false;
  int port = 0;
  std::string host = "127.0.0.1";
  int depth = -1;

  auto* replay = app.add_subcommand("replay", "Replay a trace and write its feedback transcript");
  replay->add_option("config", config_path, "Session config")->required();
  replay->add_option("trace", trace_path, "Recorded trace")->required();
  replay->add_option("-o,--output", output, "Transcript path (stdout when omitted)");
  replay->add_flag("--force", force, "Replay even if the trace was recorded for another config");

  auto* serve = app.add_subcommand("serve", "Serve sessions over length-prefixed TCP frames");
  serve->add_option("config", config_path, "Session config")->required();
  serve->add_option("--port", port, "TCP port")->required()->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "IPv4 address to bind");

  auto* describe = app.add_subcommand("describe", "Print the semantic tree");
  describe->add_option("config", config_path, "Session config")->required();
  describe->add_option("--depth", depth, "Deepest level printed (root is 0)");

  auto* svg = app.add_subcommand("trace-svg", "Draw a trace's finger paths over the chart");
  svg->add_option("config", config_path, "Session config")->required();
  svg->add_option("trace", trace_path, "Recorded trace")->required();
  svg->add_option("-o,--output", output, "SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const chartnav::SessionConfig config = chartnav::LoadSessionConfig(config_path);
    auto engine = chartnav::BuildEngine(config);
    spdlog::debug("loaded {} points, {} tree nodes", engine->model().points().size(),
                  engine->tree().size());

    if (*replay) {
      const auto trace = chartnav::ParseTrace(chartnav::ReadFile(trace_path));
      const auto transcript =
          chartnav::ReplayTrace(*engine, chartnav::ConfigHash(config), trace, force);
      WriteOutput(output, chartnav::SerializeTranscript(transcript));
    } else if (*serve) {
      chartnav::Server server(engine, static_cast<std::uint16_t>(port), host);
      g_server = &server;
      std::signal(SIGINT, OnSignal);
      std::signal(SIGTERM, OnSignal);
      std::cout << "listening on " << host << ':' << server.port() << std::endl;
      server.Run();
      g_server = nullptr;
    } else if (*describe) {
      std::cout << chartnav::DescribeTree(*engine, depth);
    } else if (*svg) {
      const auto trace = chartnav::ParseTrace(chartnav::ReadFile(trace_path));
      WriteOutput(output, chartnav::RenderTraceSvg(*engine, trace));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
