// config.hpp — engine tuning parameters and their validation.
//
// Units policy:
// - angles in degrees
// - time in seconds, rates in degrees/second
// - fractions dimensionless in [0,1]
#pragma once

#include <string>
#include <vector>

#include "engage/policy.hpp"

namespace engage {

struct EngineConfig {
  // Camera geometry.
  double hfov_deg = 60.0;
  double vfov_deg = 45.0;

  // Attention cone half-angle: head deviation at or below this counts as
  // attentive.
  double theta_att_deg = 15.0;

  // Polarity classifier: minimum top-class probability before the class
  // mapping applies; otherwise valence thresholds decide.
  double p_min = 0.4;
  double v_pos = 0.2;
  double v_neg = -0.2;

  // Temporal filter: window W, dwell D, majority fraction m.
  int window_frames = 15;
  int dwell_frames = 5;
  double majority_frac = 0.6;

  // Robot kinematics.
  double head_yaw_limit_deg = 60.0;
  double avert_cone_deg = 10.0;
  double head_pan_rate_dps = 90.0;
  double base_rotate_rate_dps = 30.0;

  double frame_rate_hz = 30.0;

  // Tracks unseen for longer than this are dropped.
  double track_timeout_s = 1.0;

  // Spoken once per engagement episode.
  std::string greeting = "Hello! Can I help you?";

  // TCP listen port for `run --tcp`.
  int tcp_port = 7060;

  StrategyTable strategy_table;

  // ceil(m * W): window votes a candidate needs before a switch.
  int majority_count() const;
};

// Returns one message per violated constraint, each naming the field and
// the bound; empty means valid.
std::vector<std::string> validate_config(const EngineConfig& cfg);

}  // namespace engage
