#include "cli.hpp"

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "agc/engine.hpp"
#include "agc/format.hpp"
#include "agc/live.hpp"
#include "agc/server.hpp"

namespace agc {

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted.store(true); }

struct Options {
  std::string scenario;
  std::string out = "telemetry.csv";
  std::optional<std::uint64_t> seed;
  std::optional<double> duration;
  std::string serve;
  int decimate = 10;
  bool pause_on_start = false;
};

std::filesystem::path summary_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".summary.json");
  return p;
}

int run_headless(const Scenario& sc, const Options& opt, std::ostream& out, std::ostream& err) {
  const RunResult result = run(sc);
  std::ofstream csv(opt.out, std::ios::binary);
  if (!csv) {
    err << "error: cannot write '" << opt.out << "'\n";
    return 1;
  }
  write_csv(csv, result.frames);
  csv.close();

  const std::string summary = summary_json(summarize(result.frames));
  const auto json_path = summary_path(opt.out);
  std::ofstream js(json_path, std::ios::binary);
  if (!js) {
    err << "error: cannot write '" << json_path.string() << "'\n";
    return 1;
  }
  js << summary << "\n";
  out << summary << "\n";
  return 0;
}

int run_live(const Scenario& sc, const Options& opt, std::ostream& out, std::ostream& err) {
  Endpoint ep;
  try {
    ep = parse_endpoint(opt.serve);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream csv(opt.out, std::ios::binary);
  if (!csv) {
    err << "error: cannot write '" << opt.out << "'\n";
    return 1;
  }
  csv << telemetry_header() << "\n";

  LiveSession live(sc, LiveOptions{opt.decimate, opt.pause_on_start});
  std::string row;
  live.on_frame([&](const TelemetryFrame& f) {
    row.clear();
    append_csv_row(row, f);
    csv << row;
  });

  std::optional<OperatorServer> server;
  try {
    server.emplace(live, ep);
  } catch (const std::exception& e) {
    err << "error: cannot listen on " << ep.host << ":" << ep.port << ": " << e.what() << "\n";
    return 1;
  }
  out << "serving ws://" << ep.host << ":" << server->port() << "/" << (opt.pause_on_start ? " (paused)" : "")
      << std::endl;

  g_interrupted = false;
  auto prev_int = std::signal(SIGINT, on_signal);
  auto prev_term = std::signal(SIGTERM, on_signal);
  live.run_paced([&] {
    if (g_interrupted.load()) return true;
    return opt.duration && live.simulation().clock().t() >= *opt.duration - 1e-9;
  });
  std::signal(SIGINT, prev_int);
  std::signal(SIGTERM, prev_term);

  server->stop();
  csv.flush();
  out << "stopped at t=" << format_double(live.simulation().clock().t()) << " s" << std::endl;
  return csv ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"agcsim: UAV-UGV cooperative inspection simulator"};
  app.add_option("--scenario", opt.scenario, "Scenario INI file (defaults when omitted)");
  app.add_option("--out", opt.out, "Telemetry CSV path; the summary goes next to it")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Override sim.seed");
  app.add_option("--duration", opt.duration, "Override sim.duration (s); live mode stops there")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--serve", opt.serve, "Run live, paced to wall clock, serving host:port");
  app.add_option("--decimate", opt.decimate, "Live stream: send every Nth frame")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--pause-on-start", opt.pause_on_start, "Live mode: wait for an operator resume");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  Scenario sc;
  try {
    if (!opt.scenario.empty()) {
      if (!std::filesystem::is_regular_file(opt.scenario)) {
        err << "error: cannot open scenario file '" << opt.scenario << "'\n";
        return 2;
      }
      sc = load_scenario_file(opt.scenario);
    }
    if (opt.seed) sc.seed = *opt.seed;
    if (opt.duration) sc.duration = *opt.duration;
    sc.validate();
  } catch (const ConfigError& e) {
    err << "error: " << (opt.scenario.empty() ? "scenario" : opt.scenario);
    if (e.line() > 0) err << ":" << e.line();
    err << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!opt.serve.empty()) return run_live(sc, opt, out, err);
    return run_headless(sc, opt, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace agc
