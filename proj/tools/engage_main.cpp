// engage — real-time engagement decision engine CLI.
//
//   engage run [--tcp PORT] --config FILE
//   engage simulate --scenario FILE --config FILE [--seed N] [--out FILE]
//                   [--timeline FILE]
//   engage check --config FILE
//
// Exit codes: 0 success, 1 validation failure, 2 I/O failure.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "engage/config.hpp"
#include "engage/config_file.hpp"
#include "engage/engine.hpp"
#include "engage/protocol.hpp"
#include "engage/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

volatile std::sig_atomic_t g_stop = 0;

void handle_signal(int) { g_stop = 1; }

// Fixed-bucket latency histogram: 1 us resolution, bounded memory.
class Histogram {
 public:
  void add(double us) {
    ++count_;
    int bucket = us <= 0.0 ? 0 : static_cast<int>(us);
    if (bucket >= kBuckets) bucket = kBuckets - 1;
    ++buckets_[bucket];
  }

  // Upper edge (us) of the smallest bucket covering quantile q.
  int quantile_us(double q) const {
    if (count_ == 0) return 0;
    auto threshold = static_cast<std::uint64_t>(q * static_cast<double>(count_));
    if (threshold >= count_) threshold = count_ - 1;
    std::uint64_t seen = 0;
    for (int i = 0; i < kBuckets; ++i) {
      seen += buckets_[i];
      if (seen > threshold) return i + 1;
    }
    return kBuckets;
  }

 private:
  static constexpr int kBuckets = 4096;
  std::array<std::uint64_t, kBuckets> buckets_{};
  std::uint64_t count_ = 0;
};

double elapsed_us(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::micro>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Consumes newline-delimited events one line at a time; appends command
// lines to the output string it is handed. Ticks are runs of events
// sharing a timestamp: the engine decides when the timestamp advances and
// once more at end of stream.
class StreamProcessor {
 public:
  StreamProcessor(engage::Engine& engine, std::ostream& diag)
      : engine_(engine), diag_(diag) {}

  void handle_line(const std::string& line, std::string& out) {
    ++line_no_;
    if (line.empty()) return;

    auto started = std::chrono::steady_clock::now();
    engage::FaceObservation obs;
    std::string error;
    bool ok = engage::parse_event(line, obs, error);
    parse_us_.add(elapsed_us(started));
    if (!ok) {
      ++errors_;
      diag_ << "line " << line_no_ << ": " << error << '\n';
      return;
    }

    if (tick_t_ && obs.timestamp != *tick_t_) flush_tick(out);
    std::string reason;
    if (!engine_.observe(obs, &reason)) {
      ++errors_;
      diag_ << "line " << line_no_ << ": rejected: " << reason << '\n';
      return;
    }
    ++events_;
    tick_t_ = obs.timestamp;
  }

  void finish(std::string& out) { flush_tick(out); }

  std::string summary_line() const {
    nlohmann::ordered_json stages;
    auto stage = [](const Histogram& h) {
      nlohmann::ordered_json s;
      s["p50"] = h.quantile_us(0.50);
      s["p99"] = h.quantile_us(0.99);
      return s;
    };
    stages["parse"] = stage(parse_us_);
    stages["decide"] = stage(decide_us_);
    stages["emit"] = stage(emit_us_);
    nlohmann::ordered_json j;
    j["summary"] = {{"events", events_},
                    {"commands", commands_},
                    {"errors", errors_},
                    {"stage_us", stages}};
    return j.dump();
  }

 private:
  void flush_tick(std::string& out) {
    if (!tick_t_) return;
    auto started = std::chrono::steady_clock::now();
    std::vector<engage::RobotCommand> cmds = engine_.decide(*tick_t_);
    decide_us_.add(elapsed_us(started));

    started = std::chrono::steady_clock::now();
    for (const auto& cmd : cmds) {
      out += engage::emit_command(cmd);
      out += '\n';
      ++commands_;
    }
    emit_us_.add(elapsed_us(started));
    tick_t_.reset();
  }

  engage::Engine& engine_;
  std::ostream& diag_;
  std::uint64_t line_no_ = 0;
  std::optional<double> tick_t_;
  std::uint64_t events_ = 0;
  std::uint64_t commands_ = 0;
  std::uint64_t errors_ = 0;
  Histogram parse_us_;
  Histogram decide_us_;
  Histogram emit_us_;
};

int run_stdin(StreamProcessor& proc) {
  std::string line;
  std::string out;
  while (!g_stop && std::getline(std::cin, line)) {
    proc.handle_line(line, out);
    if (!out.empty()) {
      std::cout << out;
      std::cout.flush();
      out.clear();
    }
  }
  proc.finish(out);
  out += proc.summary_line();
  out += '\n';
  std::cout << out;
  std::cout.flush();
  return kExitOk;
}

int run_tcp(StreamProcessor& proc, int port) {
  int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) {
    std::cerr << "cannot create socket\n";
    return kExitIo;
  }
  int reuse = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(listener, 1) < 0) {
    std::cerr << "cannot bind tcp port " << port << '\n';
    ::close(listener);
    return kExitIo;
  }
  std::cerr << "listening on 127.0.0.1:" << port << '\n';
  int client = ::accept(listener, nullptr, nullptr);
  ::close(listener);
  if (client < 0) {
    std::cerr << "accept failed\n";
    return kExitIo;
  }

  // One client, plain byte stream: event lines in, command lines back.
  auto send_all = [&](const std::string& text) {
    size_t sent = 0;
    while (sent < text.size()) {
      ssize_t n = ::write(client, text.data() + sent, text.size() - sent);
      if (n <= 0) return false;
      sent += static_cast<size_t>(n);
    }
    return true;
  };

  std::string pending;
  std::string out;
  char chunk[4096];
  ssize_t n;
  while (!g_stop && (n = ::read(client, chunk, sizeof(chunk))) > 0) {
    pending.append(chunk, static_cast<size_t>(n));
    size_t pos;
    while ((pos = pending.find('\n')) != std::string::npos) {
      std::string line = pending.substr(0, pos);
      pending.erase(0, pos + 1);
      proc.handle_line(line, out);
      if (!out.empty()) {
        if (!send_all(out)) {
          ::close(client);
          return kExitIo;
        }
        out.clear();
      }
    }
  }
  if (!pending.empty()) proc.handle_line(pending, out);
  proc.finish(out);
  if (!out.empty()) send_all(out);
  ::close(client);
  std::cout << proc.summary_line() << '\n';
  return kExitOk;
}

int cmd_run(const engage::EngineConfig& cfg, std::optional<int> tcp_port) {
  engage::Engine engine(cfg, /*decision_latency_s=*/0.0);
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  StreamProcessor proc(engine, std::cerr);
  if (tcp_port) return run_tcp(proc, *tcp_port);
  return run_stdin(proc);
}

int cmd_simulate(const engage::EngineConfig& cfg,
                 const std::string& scenario_path,
                 std::optional<std::uint64_t> seed, const std::string& out_path,
                 const std::string& timeline_path) {
  engage::Scenario sc;
  std::vector<std::string> errors;
  bool io_error = false;
  if (!engage::load_scenario_file(scenario_path, sc, errors, io_error)) {
    for (const auto& e : errors) std::cerr << e << '\n';
    return io_error ? kExitIo : kExitValidation;
  }
  if (seed) sc.seed = *seed;

  engage::ScenarioReport report = engage::run_scenario(sc, cfg);
  std::string text = engage::report_to_json(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "cannot write report: " << out_path << '\n';
      return kExitIo;
    }
  }
  if (!timeline_path.empty()) {
    std::ofstream out(timeline_path, std::ios::binary);
    if (!out || !(out << engage::report_timeline_csv(report))) {
      std::cerr << "cannot write timeline: " << timeline_path << '\n';
      return kExitIo;
    }
  }
  return kExitOk;
}

int cmd_check(const std::string& config_path) {
  engage::EngineConfig cfg;
  std::vector<std::string> errors;
  bool io_error = false;
  if (!engage::load_config_file(config_path, cfg, errors, io_error)) {
    for (const auto& e : errors) std::cout << e << '\n';
    return io_error ? kExitIo : kExitValidation;
  }
  // Totality: every sentiment state must map to a strategy.
  for (int p = 0; p < engage::kPolarityCount; ++p) {
    for (int a = 0; a < 2; ++a) {
      engage::SentimentState s{static_cast<engage::Polarity>(p), a == 1};
      (void)engage::select_strategy(s, cfg.strategy_table);
    }
  }
  std::cout << "ok\n";
  return kExitOk;
}

std::string config_or_env(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("ENGAGE_CONFIG");
  return env ? env : "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"engagement decision engine"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario_path;
  std::string out_path;
  std::string timeline_path;
  std::optional<int> tcp_port;
  std::optional<std::uint64_t> seed;

  CLI::App* run = app.add_subcommand("run", "process an event stream");
  run->add_option("--config", config_path, "config file");
  run->add_option("--tcp", tcp_port, "listen on a TCP port instead of stdin");

  CLI::App* simulate = app.add_subcommand("simulate", "run a scripted scenario");
  simulate->add_option("--scenario", scenario_path, "scenario file")->required();
  simulate->add_option("--config", config_path, "config file");
  simulate->add_option("--seed", seed, "override the scenario seed");
  simulate->add_option("--out", out_path, "report path (default stdout)");
  simulate->add_option("--timeline", timeline_path, "per-frame CSV path");

  CLI::App* check = app.add_subcommand("check", "validate a config file");
  check->add_option("--config", config_path, "config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::string resolved = config_or_env(config_path);
  if (resolved.empty()) {
    std::cerr << "no config given (--config or ENGAGE_CONFIG)\n";
    return kExitValidation;
  }
  if (check->parsed()) return cmd_check(resolved);

  engage::EngineConfig cfg;
  std::vector<std::string> errors;
  bool io_error = false;
  if (!engage::load_config_file(resolved, cfg, errors, io_error)) {
    for (const auto& e : errors) std::cerr << e << '\n';
    return io_error ? kExitIo : kExitValidation;
  }
  if (run->parsed()) return cmd_run(cfg, tcp_port);
  if (simulate->parsed()) {
    return cmd_simulate(cfg, scenario_path, seed, out_path, timeline_path);
  }
  return kExitValidation;
}
