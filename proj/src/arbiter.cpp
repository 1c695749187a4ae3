#include "engage/arbiter.hpp"

#include <algorithm>
#include <cmath>

namespace engage {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

// Strategy precedence for target selection: safety first, then commitment.
int priority_rank(EngagementStrategy s) {
  switch (s) {
    case EngagementStrategy::Avoid: return 0;
    case EngagementStrategy::Engage: return 1;
    case EngagementStrategy::Attract: return 2;
    case EngagementStrategy::Ignore: return 3;
  }
  return 3;
}

// Face the target: pan the head if the goal is reachable, otherwise rotate
// the base toward it and re-center the head.
void face_target(const Bearing& bearing, std::uint64_t target_id,
                 RobotState& robot, const EngineConfig& cfg,
                 std::vector<RobotCommand>& out) {
  double desired_pan = robot.head_pan_deg + bearing.alpha_deg;
  double desired_tilt = robot.head_tilt_deg + bearing.beta_deg;
  if (std::abs(desired_pan) <= cfg.head_yaw_limit_deg) {
    out.push_back(RobotCommand{0.0, target_id,
                               HeadFollow{desired_pan, desired_tilt}});
    robot.head_pan_deg = desired_pan;
  } else {
    out.push_back(RobotCommand{0.0, target_id, BodyRotate{desired_pan}});
    out.push_back(RobotCommand{0.0, target_id, HeadFollow{0.0, desired_tilt}});
    robot.base_heading_deg += desired_pan;
    robot.head_pan_deg = 0.0;
  }
  robot.head_tilt_deg = desired_tilt;
}

void lift_torso_if_down(std::uint64_t target_id, RobotState& robot,
                        std::vector<RobotCommand>& out) {
  if (robot.torso_height < 1.0) {
    out.push_back(RobotCommand{0.0, target_id, TorsoLift{1.0}});
    robot.torso_height = 1.0;
  }
}

}  // namespace

const char* command_name(const CommandPayload& payload) {
  struct Namer {
    const char* operator()(const HeadFollow&) const { return "head_follow"; }
    const char* operator()(const BodyRotate&) const { return "body_rotate"; }
    const char* operator()(const TorsoLift&) const { return "torso_lift"; }
    const char* operator()(const Speak&) const { return "speak"; }
    const char* operator()(const AvertGaze&) const { return "avert_gaze"; }
    const char* operator()(const Idle&) const { return "idle"; }
  };
  return std::visit(Namer{}, payload);
}

std::optional<std::uint64_t> select_target(
    const std::vector<TrackSnapshot>& tracks) {
  const TrackSnapshot* best = nullptr;
  for (const auto& t : tracks) {
    if (!best) {
      best = &t;
      continue;
    }
    int r = priority_rank(t.strategy);
    int br = priority_rank(best->strategy);
    if (r != br) {
      if (r < br) best = &t;
      continue;
    }
    double a = t.bbox.area();
    double ba = best->bbox.area();
    if (a != ba) {
      if (a > ba) best = &t;
      continue;
    }
    if (t.track_id < best->track_id) best = &t;
  }
  if (!best) return std::nullopt;
  return best->track_id;
}

std::vector<RobotCommand> plan_commands(EngagementStrategy strategy,
                                        std::uint64_t target_id,
                                        const Bearing& bearing,
                                        RobotState& robot,
                                        const EngineConfig& cfg) {
  std::vector<RobotCommand> out;
  switch (strategy) {
    case EngagementStrategy::Engage: {
      lift_torso_if_down(target_id, robot, out);
      face_target(bearing, target_id, robot, cfg, out);
      bool& greeted = robot.greeted[target_id];
      if (!greeted) {
        out.push_back(RobotCommand{0.0, target_id, Speak{cfg.greeting}});
        greeted = true;
      }
      break;
    }
    case EngagementStrategy::Attract: {
      lift_torso_if_down(target_id, robot, out);
      face_target(bearing, target_id, robot, cfg, out);
      break;
    }
    case EngagementStrategy::Avoid: {
      // Absolute target direction given the current head pose.
      double a_deg = robot.head_pan_deg + bearing.alpha_deg;
      double b_deg = robot.head_tilt_deg + bearing.beta_deg;
      double b = b_deg * kDegToRad;
      double cos_b2 = std::max(std::cos(b) * std::cos(b), 1e-12);
      // Horizontal pan offset rho such that, with the tilt matched to the
      // face, the face sits exactly on the avert cone boundary:
      //   cos(cone) = sin^2(b) + cos^2(b) * cos(rho)
      double ratio = (std::cos(cfg.avert_cone_deg * kDegToRad) -
                      std::sin(b) * std::sin(b)) /
                     cos_b2;
      double rho = std::acos(std::clamp(ratio, -1.0, 1.0)) * kRadToDeg;
      double limit = cfg.head_yaw_limit_deg;
      double left = a_deg - rho;
      double right = a_deg + rho;
      bool left_ok = std::abs(left) <= limit;
      bool right_ok = std::abs(right) <= limit;
      double pan;
      if (left_ok && right_ok) {
        // Both sides keep the face in frame; take the smaller head motion.
        pan = std::abs(left - robot.head_pan_deg) <=
                      std::abs(right - robot.head_pan_deg)
                  ? left
                  : right;
      } else if (left_ok) {
        pan = left;
      } else if (right_ok) {
        pan = right;
      } else {
        // Target is beyond the reachable cone edge; the pan limit itself
        // already leaves the face at deviation > rho.
        pan = std::clamp(a_deg, -limit, limit);
      }
      out.push_back(RobotCommand{0.0, target_id, AvertGaze{pan, b_deg}});
      robot.head_pan_deg = pan;
      robot.head_tilt_deg = b_deg;
      break;
    }
    case EngagementStrategy::Ignore: {
      // Passive monitoring: head only, clamped to its mechanical range.
      double desired_pan =
          std::clamp(robot.head_pan_deg + bearing.alpha_deg,
                     -cfg.head_yaw_limit_deg, cfg.head_yaw_limit_deg);
      double desired_tilt = robot.head_tilt_deg + bearing.beta_deg;
      out.push_back(RobotCommand{0.0, target_id,
                                 HeadFollow{desired_pan, desired_tilt}});
      robot.head_pan_deg = desired_pan;
      robot.head_tilt_deg = desired_tilt;
      break;
    }
  }
  return out;
}

void reset_episode(RobotState& robot, std::uint64_t track_id) {
  auto it = robot.greeted.find(track_id);
  if (it != robot.greeted.end()) it->second = false;
}

void drop_track(RobotState& robot, std::uint64_t track_id) {
  robot.greeted.erase(track_id);
}

}  // namespace engage
