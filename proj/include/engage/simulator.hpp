// simulator.hpp — deterministic scenario engine: scripted person timelines
// with seeded noise, the full perception->decision pipeline with the fixed
// perception latency model, simulated pan/tilt/base kinematics, and metric
// reports.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engage/arbiter.hpp"
#include "engage/config.hpp"
#include "engage/core.hpp"
#include "engage/policy.hpp"

namespace engage {

// Fixed per-frame perception stage costs (milliseconds).
struct LatencyModel {
  double face_detection_ms = 6.7;
  double head_pose_ms = 1.4;
  double emotion_ms = 6.3;

  double total_ms() const {
    return face_detection_ms + head_pose_ms + emotion_ms;
  }
  double total_s() const { return total_ms() / 1000.0; }
};

struct NoiseSpec {
  // Per-frame probability that the scripted label is replaced by a
  // uniformly random other label.
  double flicker_prob = 0.0;
  // Sharpness of the synthesized distribution: the scripted class gets
  // weight e^c, every other class weight 1 (share e^c / (e^c + 6)).
  double emotion_concentration = 6.0;
  // Gaussian sigma on synthesized yaw/pitch/roll, degrees.
  double angle_sigma_deg = 0.0;
};

struct BearingKeyframe {
  double t = 0.0;
  double alpha_deg = 0.0;
  double beta_deg = 0.0;
};
struct OffsetKeyframe {
  double t = 0.0;
  double offset_deg = 0.0;  // head deviation from camera-facing
};
struct LabelKeyframe {
  double t = 0.0;
  EmotionClass label = EmotionClass::Neutral;
};

struct PersonScript {
  std::uint64_t track_id = 0;
  // Bearings are in the robot base frame at heading 0; the camera view
  // follows the simulated head/base pose.
  std::vector<BearingKeyframe> bearing;   // piecewise linear
  std::vector<OffsetKeyframe> head_offset;  // piecewise linear
  std::vector<LabelKeyframe> emotion;     // step function
  double bbox_w = 0.15;
  double bbox_h = 0.20;
};

struct Scenario {
  int version = 1;
  double duration_s = 0.0;
  double frame_rate_hz = 30.0;
  std::uint64_t seed = 0;
  NoiseSpec noise;
  std::vector<PersonScript> persons;
};

// Canonical valence/arousal per emotion class used by the synthesizer.
void canonical_va(EmotionClass label, double& valence, double& arousal);

std::vector<std::string> validate_scenario(const Scenario& sc);

// JSON scenario documents, schema `"version": 1`.
bool load_scenario_from_string(const std::string& text, Scenario& out,
                               std::vector<std::string>& errors);
bool load_scenario_file(const std::string& path, Scenario& out,
                        std::vector<std::string>& errors, bool& io_error);

// Synthesizes the event stream seen by a camera resting at its initial
// pose. One JSON event line per visible person per frame, deterministic
// for a given seed.
std::vector<std::string> synthesize_events(const Scenario& sc);

// Instantaneous ideal: classify/attend/select on the noise-free scripted
// state at time t (rest-frame camera, no temporal filter). nullopt when
// the person is outside the field of view at t.
std::optional<EngagementStrategy> oracle_strategy(const Scenario& sc,
                                                  const PersonScript& person,
                                                  double t,
                                                  const EngineConfig& cfg);

struct TrackReport {
  std::vector<std::pair<double, EngagementStrategy>> strategy_timeline;
  int switch_count = 0;  // changes after the initial strategy
  // Frames of each new oracle regime consumed up to and including the
  // first agreeing decision.
  std::vector<int> reaction_delays_frames;
  double agreement = 1.0;  // share of comparable frames, transitions excluded
  int compared_frames = 0;
};

struct ScenarioReport {
  std::uint64_t seed = 0;
  int frames = 0;
  int events = 0;
  int parse_errors = 0;
  LatencyModel latency;
  std::map<std::uint64_t, TrackReport> tracks;
  std::vector<RobotCommand> commands;
  int speak_count = 0;
  int strategy_switches = 0;  // across all tracks
  double mean_reaction_delay_frames = 0.0;
  int max_reaction_delay_frames = 0;
  double agreement = 1.0;  // weighted across tracks
  // Smallest recomputed target deviation over all AvertGaze commands
  // (infinity when none were emitted).
  double min_avert_deviation_deg = 0.0;

  // Per-frame rows for the optional timeline CSV.
  struct TimelineRow {
    int frame = 0;
    double t = 0.0;
    std::uint64_t track_id = 0;
    double deviation_deg = 0.0;
    Polarity polarity = Polarity::Neutral;
    bool attentive = false;
    EngagementStrategy strategy = EngagementStrategy::Ignore;
    std::optional<EngagementStrategy> oracle;
  };
  std::vector<TimelineRow> timeline;
};

// Runs the scenario through the full pipeline: closed-loop synthesis
// against the simulated camera pose, protocol parse, sentiment filter,
// policy, arbitration, and rate-limited kinematic integration. Command
// timestamps are frame time + the latency model total. Deterministic.
ScenarioReport run_scenario(const Scenario& sc, const EngineConfig& cfg);

// Stable serialization of the report (byte-identical across runs with the
// same scenario, config and seed).
std::string report_to_json(const ScenarioReport& report);

// Comma-separated per-frame timeline for external plotting.
std::string report_timeline_csv(const ScenarioReport& report);

}  // namespace engage
