// arbiter.hpp — turns per-track strategies into robot commands and picks
// a single target when several people are in view.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "engage/attention.hpp"
#include "engage/config.hpp"
#include "engage/core.hpp"
#include "engage/policy.hpp"

namespace engage {

// Command payloads. Pan/tilt/heading values are setpoints in degrees in
// the robot base frame; the platform (or the simulator's kinematic
// integrator) moves toward them at its rate limits.
struct HeadFollow {
  double pan_deg = 0.0;
  double tilt_deg = 0.0;
};
struct BodyRotate {
  double delta_deg = 0.0;  // relative base rotation
};
struct TorsoLift {
  double height = 0.0;  // normalized [0,1]
};
struct Speak {
  std::string text;  // never empty
};
struct AvertGaze {
  double pan_deg = 0.0;
  double tilt_deg = 0.0;
};
struct Idle {};

using CommandPayload =
    std::variant<HeadFollow, BodyRotate, TorsoLift, Speak, AvertGaze, Idle>;

struct RobotCommand {
  double t = 0.0;
  std::optional<std::uint64_t> target;
  CommandPayload payload;
};

const char* command_name(const CommandPayload& payload);

struct RobotState {
  double head_pan_deg = 0.0;
  double head_tilt_deg = 0.0;
  double base_heading_deg = 0.0;
  double torso_height = 0.0;  // [0,1], 0 = down
  // Greeting episode flags: true once a track has been greeted during its
  // current Engage episode.
  std::map<std::uint64_t, bool> greeted;
};

struct TrackSnapshot {
  std::uint64_t track_id = 0;
  SentimentState state;
  EngagementStrategy strategy = EngagementStrategy::Ignore;
  BoundingBox bbox;
};

// Priority Avoid > Engage > Attract > Ignore; ties broken by larger bbox
// area, then lower track_id. nullopt on empty input.
std::optional<std::uint64_t> select_target(
    const std::vector<TrackSnapshot>& tracks);

// Plans this tick's commands for the selected target and updates the robot
// state to the commanded setpoints. `bearing` is the target's position
// relative to the current optical axis. Timestamps are stamped by the
// caller. Deterministic.
std::vector<RobotCommand> plan_commands(EngagementStrategy strategy,
                                        std::uint64_t target_id,
                                        const Bearing& bearing,
                                        RobotState& robot,
                                        const EngineConfig& cfg);

// Clears the greeted flag so a later Engage episode greets again. Called
// when a track's strategy leaves Engage.
void reset_episode(RobotState& robot, std::uint64_t track_id);

// Removes the track's episode bookkeeping entirely (track expiry).
void drop_track(RobotState& robot, std::uint64_t track_id);

}  // namespace engage
