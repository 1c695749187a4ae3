// engine.hpp — the decision core: observations in, command batches out.
//
// Driving contract: call observe() for every observation of the current
// tick (any number of tracks), then decide(now) once per tick. Stream mode
// groups events by timestamp into ticks; the simulator calls decide() once
// per frame, including frames with no observations.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engage/arbiter.hpp"
#include "engage/attention.hpp"
#include "engage/config.hpp"
#include "engage/core.hpp"
#include "engage/policy.hpp"
#include "engage/sentiment.hpp"

namespace engage {

class Engine {
 public:
  // decision_latency_s is added to every command timestamp (the simulator
  // passes the perception latency model; live mode passes 0).
  explicit Engine(const EngineConfig& cfg, double decision_latency_s = 0.0);

  // Updates the observation's track. Returns false with a reason when the
  // observation is rejected (out-of-order timestamp for its track).
  bool observe(const FaceObservation& obs, std::string* reject_reason = nullptr);

  // Expires stale tracks, refreshes per-track strategies, arbitrates and
  // plans. Commands are stamped now + decision latency. Emits a single
  // Idle when no live tracks remain.
  std::vector<RobotCommand> decide(double now);

  // Per-track strategy after the last decide(). Keyed by track_id.
  const std::map<std::uint64_t, EngagementStrategy>& strategies() const {
    return strategies_;
  }
  const std::map<std::uint64_t, TrackState>& tracks() const {
    return sentiment_;
  }
  const RobotState& robot() const { return robot_; }
  const EngineConfig& config() const { return cfg_; }

  // Overwrites the pose fields (pan/tilt/heading/torso) with externally
  // measured values; greeting flags are untouched. The simulator calls this
  // every frame so planning starts from the rate-limited physical pose
  // rather than from the last commanded setpoint.
  void sync_robot_pose(const RobotState& pose);

 private:
  struct TrackAux {
    Bearing bearing;        // from the latest observation
    BoundingBox bbox;
    double deviation_deg = 0.0;
  };

  EngineConfig cfg_;
  double latency_s_;
  std::map<std::uint64_t, TrackState> sentiment_;
  std::map<std::uint64_t, TrackAux> aux_;
  std::map<std::uint64_t, EngagementStrategy> strategies_;
  RobotState robot_;
};

}  // namespace engage
