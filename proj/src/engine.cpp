#include "engage/engine.hpp"

#include <algorithm>

namespace engage {

Engine::Engine(const EngineConfig& cfg, double decision_latency_s)
    : cfg_(cfg), latency_s_(decision_latency_s) {}

bool Engine::observe(const FaceObservation& obs, std::string* reject_reason) {
  auto problems = validate_observation(obs);
  if (!problems.empty()) {
    if (reject_reason) {
      std::string joined;
      for (const auto& p : problems) {
        if (!joined.empty()) joined += "; ";
        joined += p;
      }
      *reject_reason = joined;
    }
    return false;
  }

  auto [it, inserted] =
      sentiment_.try_emplace(obs.track_id, TrackState(obs.track_id));
  TrackState& track = it->second;

  Bearing bearing = observation_bearing(obs, cfg_);
  AttentionEstimate attention =
      attention_score(obs.yaw, obs.pitch, bearing, cfg_);
  if (!update_track(track, obs, attention, cfg_)) {
    if (inserted) sentiment_.erase(it);
    if (reject_reason) {
      *reject_reason = "timestamp regression for track " +
                       std::to_string(obs.track_id);
    }
    return false;
  }

  aux_[obs.track_id] = TrackAux{bearing, obs.bbox, attention.deviation_deg};
  return true;
}

std::vector<RobotCommand> Engine::decide(double now) {
  // Drop tracks that have gone quiet, and their episode bookkeeping.
  for (auto it = sentiment_.begin(); it != sentiment_.end();) {
    if (track_expired(it->second, now, cfg_.track_timeout_s)) {
      std::uint64_t id = it->first;
      it = sentiment_.erase(it);
      aux_.erase(id);
      strategies_.erase(id);
      drop_track(robot_, id);
    } else {
      ++it;
    }
  }

  // Refresh every live track's strategy; a track leaving Engage ends its
  // greeting episode so a later Engage greets again.
  std::map<std::uint64_t, EngagementStrategy> next;
  for (const auto& [id, track] : sentiment_) {
    EngagementStrategy strategy =
        select_strategy(track.filtered(), cfg_.strategy_table);
    auto prev = strategies_.find(id);
    if (prev != strategies_.end() &&
        prev->second == EngagementStrategy::Engage &&
        strategy != EngagementStrategy::Engage) {
      reset_episode(robot_, id);
    }
    next.emplace(id, strategy);
  }
  strategies_ = std::move(next);

  std::vector<RobotCommand> commands;
  if (sentiment_.empty()) {
    commands.push_back(RobotCommand{0.0, std::nullopt, Idle{}});
  } else {
    std::vector<TrackSnapshot> snapshots;
    snapshots.reserve(sentiment_.size());
    for (const auto& [id, track] : sentiment_) {
      snapshots.push_back(TrackSnapshot{id, track.filtered(),
                                        strategies_.at(id), aux_.at(id).bbox});
    }
    std::optional<std::uint64_t> target = select_target(snapshots);
    if (target) {
      commands = plan_commands(strategies_.at(*target), *target,
                               aux_.at(*target).bearing, robot_, cfg_);
    }
  }
  for (auto& cmd : commands) cmd.t = now + latency_s_;
  return commands;
}

void Engine::sync_robot_pose(const RobotState& pose) {
  robot_.head_pan_deg = pose.head_pan_deg;
  robot_.head_tilt_deg = pose.head_tilt_deg;
  robot_.base_heading_deg = pose.base_heading_deg;
  robot_.torso_height = pose.torso_height;
}

}  // namespace engage
