// Flat key/value config parser: `key = value` lines, `#` comments.
#include "engage/config_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace engage {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(const std::string& text, int& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

// Table override key: "<polarity>.<attention>", e.g. "positive.attentive".
bool parse_table_key(const std::string& key, SentimentState& out) {
  auto dot = key.find('.');
  if (dot == std::string::npos) return false;
  auto pol = polarity_from_string(key.substr(0, dot));
  if (!pol) return false;
  std::string att = key.substr(dot + 1);
  if (att != "attentive" && att != "inattentive") return false;
  out = SentimentState{*pol, att == "attentive"};
  return true;
}

}  // namespace

bool load_config_from_string(const std::string& text, EngineConfig& cfg,
                             std::vector<std::string>& errors) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::array<bool, kSentimentStateCount> table_seen{};
  bool any_table_line = false;

  auto fail = [&](const std::string& msg) {
    errors.push_back("line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string stripped = trim(line);
    if (stripped.empty()) continue;

    auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail("expected `key = value`");
      continue;
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      fail("empty key");
      continue;
    }

    SentimentState cell;
    if (parse_table_key(key, cell)) {
      auto strat = strategy_from_string(value);
      if (!strat) {
        fail("unknown strategy: " + value);
        continue;
      }
      cfg.strategy_table.set(cell, *strat);
      table_seen[cell.index()] = true;
      any_table_line = true;
      continue;
    }

    auto set_double = [&](double& field) {
      double v;
      if (parse_double(value, v)) {
        field = v;
      } else {
        fail("invalid number for " + key + ": " + value);
      }
    };
    auto set_int = [&](int& field) {
      int v;
      if (parse_int(value, v)) {
        field = v;
      } else {
        fail("invalid integer for " + key + ": " + value);
      }
    };

    if (key == "hfov_deg") set_double(cfg.hfov_deg);
    else if (key == "vfov_deg") set_double(cfg.vfov_deg);
    else if (key == "theta_att_deg") set_double(cfg.theta_att_deg);
    else if (key == "p_min") set_double(cfg.p_min);
    else if (key == "v_pos") set_double(cfg.v_pos);
    else if (key == "v_neg") set_double(cfg.v_neg);
    else if (key == "window_frames") set_int(cfg.window_frames);
    else if (key == "dwell_frames") set_int(cfg.dwell_frames);
    else if (key == "majority_frac") set_double(cfg.majority_frac);
    else if (key == "head_yaw_limit_deg") set_double(cfg.head_yaw_limit_deg);
    else if (key == "avert_cone_deg") set_double(cfg.avert_cone_deg);
    else if (key == "head_pan_rate_dps") set_double(cfg.head_pan_rate_dps);
    else if (key == "base_rotate_rate_dps") set_double(cfg.base_rotate_rate_dps);
    else if (key == "frame_rate_hz") set_double(cfg.frame_rate_hz);
    else if (key == "track_timeout_s") set_double(cfg.track_timeout_s);
    else if (key == "greeting") cfg.greeting = value;
    else if (key == "tcp_port") set_int(cfg.tcp_port);
    else fail("unknown key: " + key);
  }

  // A table override must cover all 8 cells; partial tables are ambiguous.
  if (any_table_line) {
    std::string missing;
    for (int p = 0; p < kPolarityCount; ++p) {
      for (int a = 0; a < 2; ++a) {
        SentimentState s{static_cast<Polarity>(p), a == 1};
        if (!table_seen[s.index()]) {
          if (!missing.empty()) missing += ", ";
          missing += std::string(to_string(s.polarity)) + "." +
                     (s.attentive ? "attentive" : "inattentive");
        }
      }
    }
    if (!missing.empty()) {
      errors.push_back("strategy table override incomplete; missing cells: " +
                       missing);
    }
  }

  for (auto& problem : validate_config(cfg)) {
    errors.push_back(problem);
  }
  return errors.empty();
}

bool load_config_file(const std::string& path, EngineConfig& cfg,
                      std::vector<std::string>& errors, bool& io_error) {
  io_error = false;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    io_error = true;
    errors.push_back("cannot open config file: " + path);
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config_from_string(buf.str(), cfg, errors);
}

}  // namespace engage
