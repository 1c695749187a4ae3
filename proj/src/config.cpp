#include "engage/config.hpp"

#include <cmath>

namespace engage {

StrategyTable::StrategyTable() {
  auto set_cell = [&](Polarity p, bool att, EngagementStrategy s) {
    set(SentimentState{p, att}, s);
  };
  set_cell(Polarity::Positive, true, EngagementStrategy::Engage);
  set_cell(Polarity::Positive, false, EngagementStrategy::Attract);
  set_cell(Polarity::NegativeStrong, true, EngagementStrategy::Avoid);
  set_cell(Polarity::NegativeStrong, false, EngagementStrategy::Ignore);
  set_cell(Polarity::NegativeSoft, true, EngagementStrategy::Attract);
  set_cell(Polarity::NegativeSoft, false, EngagementStrategy::Ignore);
  set_cell(Polarity::Neutral, true, EngagementStrategy::Attract);
  set_cell(Polarity::Neutral, false, EngagementStrategy::Ignore);
}

int EngineConfig::majority_count() const {
  return static_cast<int>(std::ceil(majority_frac * window_frames));
}

std::vector<std::string> validate_config(const EngineConfig& cfg) {
  std::vector<std::string> problems;
  auto check = [&](bool ok, std::string msg) {
    if (!ok) problems.push_back(std::move(msg));
  };
  check(cfg.hfov_deg > 0.0 && cfg.hfov_deg < 180.0,
        "hfov_deg must be in (0,180)");
  check(cfg.vfov_deg > 0.0 && cfg.vfov_deg < 180.0,
        "vfov_deg must be in (0,180)");
  double half_min_fov = 0.5 * std::min(cfg.hfov_deg, cfg.vfov_deg);
  check(cfg.theta_att_deg > 0.0 && cfg.theta_att_deg < half_min_fov,
        "theta_att_deg must be in (0, min FOV / 2)");
  check(cfg.p_min > 0.0 && cfg.p_min <= 1.0, "p_min must be in (0,1]");
  check(cfg.v_pos >= -1.0 && cfg.v_pos <= 1.0, "v_pos must be in [-1,1]");
  check(cfg.v_neg >= -1.0 && cfg.v_neg <= 1.0, "v_neg must be in [-1,1]");
  check(cfg.v_neg <= cfg.v_pos, "v_neg must not exceed v_pos");
  check(cfg.window_frames >= 1, "window_frames must be >= 1");
  check(cfg.dwell_frames >= 1, "dwell_frames must be >= 1");
  check(cfg.dwell_frames <= cfg.window_frames, "dwell exceeds window");
  check(cfg.majority_frac > 0.5 && cfg.majority_frac <= 1.0,
        "majority fraction must exceed 0.5 and not exceed 1");
  check(cfg.head_yaw_limit_deg > 0.0 && cfg.head_yaw_limit_deg <= 90.0,
        "head_yaw_limit_deg must be in (0,90]");
  check(cfg.avert_cone_deg > 0.0 && cfg.avert_cone_deg < 90.0,
        "avert_cone_deg must be in (0,90)");
  check(cfg.head_pan_rate_dps > 0.0, "head_pan_rate_dps must be > 0");
  check(cfg.base_rotate_rate_dps > 0.0, "base_rotate_rate_dps must be > 0");
  check(cfg.frame_rate_hz > 0.0, "frame_rate_hz must be > 0");
  check(cfg.track_timeout_s > 0.0, "track_timeout_s must be > 0");
  check(!cfg.greeting.empty(), "greeting must not be empty");
  check(cfg.tcp_port > 0 && cfg.tcp_port <= 65535,
        "tcp_port must be in [1,65535]");
  return problems;
}

}  // namespace engage
