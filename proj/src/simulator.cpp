#include "engage/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "engage/attention.hpp"
#include "engage/engine.hpp"
#include "engage/protocol.hpp"
#include "engage/rng.hpp"
#include "engage/sentiment.hpp"
#include "json.hpp"

namespace engage {

namespace {

using json = nlohmann::ordered_json;

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

// Piecewise-linear sample; clamps before the first and after the last key.
template <typename Key, typename Get>
double sample_linear(const std::vector<Key>& keys, double t, Get get) {
  if (keys.empty()) return 0.0;
  if (t <= keys.front().t) return get(keys.front());
  if (t >= keys.back().t) return get(keys.back());
  for (size_t i = 1; i < keys.size(); ++i) {
    if (t <= keys[i].t) {
      double span = keys[i].t - keys[i - 1].t;
      if (span <= 0.0) return get(keys[i]);
      double u = (t - keys[i - 1].t) / span;
      return get(keys[i - 1]) + u * (get(keys[i]) - get(keys[i - 1]));
    }
  }
  return get(keys.back());
}

EmotionClass sample_label(const std::vector<LabelKeyframe>& keys, double t) {
  if (keys.empty()) return EmotionClass::Neutral;
  EmotionClass label = keys.front().label;
  for (const auto& k : keys) {
    if (k.t <= t) label = k.label;
    else break;
  }
  return label;
}

struct CameraPose {
  double pan_deg = 0.0;
  double tilt_deg = 0.0;
  double heading_deg = 0.0;
};

struct ScriptSample {
  double alpha_world_deg = 0.0;  // base frame at heading 0
  double beta_world_deg = 0.0;
  double offset_deg = 0.0;
  EmotionClass label = EmotionClass::Neutral;
};

ScriptSample sample_script(const PersonScript& p, double t) {
  ScriptSample s;
  s.alpha_world_deg =
      sample_linear(p.bearing, t, [](const BearingKeyframe& k) { return k.alpha_deg; });
  s.beta_world_deg =
      sample_linear(p.bearing, t, [](const BearingKeyframe& k) { return k.beta_deg; });
  s.offset_deg = sample_linear(
      p.head_offset, t, [](const OffsetKeyframe& k) { return k.offset_deg; });
  s.label = sample_label(p.emotion, t);
  return s;
}

void concentration_distribution(EmotionClass label, double concentration,
                                EmotionDistribution& out) {
  std::array<double, kEmotionCount> weights;
  weights.fill(1.0);
  weights[static_cast<int>(label)] = std::exp(concentration);
  std::string ignored;
  EmotionDistribution::from_raw(weights, out, ignored);
}

// Synthesizes one perception observation of `p` at time `t` as seen from
// `cam`. Returns false (and draws nothing) when the face is out of view.
bool synth_observation(const PersonScript& p, double t, const CameraPose& cam,
                       const NoiseSpec& noise, double hfov_deg,
                       double vfov_deg, Rng& rng, FaceObservation& out) {
  ScriptSample s = sample_script(p, t);
  double alpha_cam = s.alpha_world_deg - cam.heading_deg - cam.pan_deg;
  double beta_cam = s.beta_world_deg - cam.tilt_deg;
  if (std::abs(alpha_cam) > 0.5 * hfov_deg) return false;
  if (std::abs(beta_cam) > 0.5 * vfov_deg) return false;

  EmotionClass label = s.label;
  // The flicker draw happens for every visible frame so the stream is a
  // fixed function of (scenario, seed).
  if (rng.uniform01() < noise.flicker_prob) {
    int k = static_cast<int>(rng.uniform_below(kEmotionCount - 1));
    // k-th class in enum order, skipping the scripted one.
    int idx = k < static_cast<int>(label) ? k : k + 1;
    label = static_cast<EmotionClass>(idx);
  }

  out.timestamp = t;
  out.track_id = p.track_id;
  // Inverse pinhole: place the face center where the camera would see it.
  double half_h = std::tan(0.5 * hfov_deg * kDegToRad);
  double half_v = std::tan(0.5 * vfov_deg * kDegToRad);
  out.bbox.cx =
      std::clamp(0.5 + std::tan(alpha_cam * kDegToRad) / (2.0 * half_h), 0.0, 1.0);
  out.bbox.cy =
      std::clamp(0.5 - std::tan(beta_cam * kDegToRad) / (2.0 * half_v), 0.0, 1.0);
  out.bbox.w = p.bbox_w;
  out.bbox.h = p.bbox_h;

  // Camera-facing pose is yaw = -alpha, pitch = -beta; the scripted offset
  // turns the head away from that in yaw.
  double yaw = -alpha_cam + s.offset_deg;
  double pitch = -beta_cam;
  double roll = 0.0;
  if (noise.angle_sigma_deg > 0.0) {
    yaw += rng.gaussian() * noise.angle_sigma_deg;
    pitch += rng.gaussian() * noise.angle_sigma_deg;
    roll += rng.gaussian() * noise.angle_sigma_deg;
  }
  out.yaw = std::clamp(yaw, -90.0, 90.0);
  out.pitch = std::clamp(pitch, -90.0, 90.0);
  out.roll = std::clamp(roll, -180.0, 180.0);

  concentration_distribution(label, noise.emotion_concentration, out.emotions);
  canonical_va(label, out.valence, out.arousal);
  return true;
}

// Central angle between two (azimuth, elevation) directions, degrees.
double central_angle_deg(double az1_deg, double el1_deg, double az2_deg,
                         double el2_deg) {
  double e1 = el1_deg * kDegToRad;
  double e2 = el2_deg * kDegToRad;
  double da = (az1_deg - az2_deg) * kDegToRad;
  double c = std::sin(e1) * std::sin(e2) +
             std::cos(e1) * std::cos(e2) * std::cos(da);
  return std::acos(std::clamp(c, -1.0, 1.0)) * kRadToDeg;
}

double move_toward(double current, double goal, double max_step) {
  if (goal > current) return std::min(goal, current + max_step);
  return std::max(goal, current - max_step);
}

int frame_count(const Scenario& sc) {
  return static_cast<int>(std::llround(sc.duration_s * sc.frame_rate_hz));
}

json command_json(const RobotCommand& cmd) {
  return json::parse(emit_command(cmd));
}

const char* csv_bool(bool v) { return v ? "1" : "0"; }

std::string csv_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

void canonical_va(EmotionClass label, double& valence, double& arousal) {
  switch (label) {
    case EmotionClass::Neutral: valence = 0.0; arousal = 0.0; return;
    case EmotionClass::Happy: valence = 0.8; arousal = 0.5; return;
    case EmotionClass::Disgust: valence = -0.6; arousal = 0.35; return;
    case EmotionClass::Fear: valence = -0.7; arousal = 0.8; return;
    case EmotionClass::Surprise: valence = 0.4; arousal = 0.85; return;
    case EmotionClass::Anger: valence = -0.75; arousal = 0.7; return;
    case EmotionClass::Sadness: valence = -0.7; arousal = 0.25; return;
  }
  valence = 0.0;
  arousal = 0.0;
}

std::vector<std::string> validate_scenario(const Scenario& sc) {
  std::vector<std::string> problems;
  auto check = [&](bool ok, std::string msg) {
    if (!ok) problems.push_back(std::move(msg));
  };
  check(sc.version == 1, "unsupported schema version");
  check(sc.duration_s > 0.0, "duration must be > 0");
  check(sc.frame_rate_hz > 0.0, "frame_rate must be > 0");
  check(sc.noise.flicker_prob >= 0.0 && sc.noise.flicker_prob <= 1.0,
        "noise.flicker_prob must be in [0,1]");
  check(sc.noise.emotion_concentration > 0.0,
        "noise.emotion_concentration must be > 0");
  check(sc.noise.angle_sigma_deg >= 0.0, "noise.angle_sigma_deg must be >= 0");

  std::map<std::uint64_t, int> seen;
  for (size_t i = 0; i < sc.persons.size(); ++i) {
    const PersonScript& p = sc.persons[i];
    std::string at = "persons[" + std::to_string(i) + "]";
    if (++seen[p.track_id] > 1) {
      problems.push_back(at + ".track_id: duplicate id " +
                         std::to_string(p.track_id));
    }
    check(!p.bearing.empty(), at + ".bearing: at least one keyframe required");
    check(!p.emotion.empty(), at + ".emotion: at least one keyframe required");
    check(p.bbox_w > 0.0 && p.bbox_w <= 1.0, at + ".bbox_size: w must be in (0,1]");
    check(p.bbox_h > 0.0 && p.bbox_h <= 1.0, at + ".bbox_size: h must be in (0,1]");
    auto nondecreasing = [&](const auto& keys, const char* name) {
      for (size_t k = 1; k < keys.size(); ++k) {
        if (keys[k].t < keys[k - 1].t) {
          problems.push_back(at + "." + name +
                             ": keyframe times must be nondecreasing");
          return;
        }
      }
    };
    nondecreasing(p.bearing, "bearing");
    nondecreasing(p.head_offset, "head_offset");
    nondecreasing(p.emotion, "emotion");
  }
  return problems;
}

bool load_scenario_from_string(const std::string& text, Scenario& out,
                               std::vector<std::string>& errors) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    errors.push_back(std::string("malformed scenario document: ") + e.what());
    return false;
  }
  if (!j.is_object()) {
    errors.push_back("malformed scenario document: not an object");
    return false;
  }

  Scenario sc;
  if (!j.contains("version") || !j["version"].is_number_integer()) {
    errors.push_back("missing field version");
    return false;
  }
  sc.version = j["version"].get<int>();
  if (sc.version != 1) {
    errors.push_back("unsupported schema version: " +
                     std::to_string(sc.version));
    return false;
  }

  auto num = [&](const json& o, const char* key, const std::string& at,
                 double& v, bool required) {
    if (!o.contains(key)) {
      if (required) errors.push_back("missing field " + at);
      return !required;
    }
    if (!o[key].is_number()) {
      errors.push_back("invalid type for " + at);
      return false;
    }
    v = o[key].get<double>();
    return true;
  };

  if (!num(j, "duration", "duration", sc.duration_s, true)) return false;
  num(j, "frame_rate", "frame_rate", sc.frame_rate_hz, false);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<double>() < 0) {
      errors.push_back("invalid type for seed");
      return false;
    }
    sc.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("noise")) {
    const json& n = j["noise"];
    if (!n.is_object()) {
      errors.push_back("invalid type for noise");
      return false;
    }
    if (!num(n, "flicker_prob", "noise.flicker_prob", sc.noise.flicker_prob,
             false) ||
        !num(n, "emotion_concentration", "noise.emotion_concentration",
             sc.noise.emotion_concentration, false) ||
        !num(n, "angle_sigma_deg", "noise.angle_sigma_deg",
             sc.noise.angle_sigma_deg, false)) {
      return false;
    }
  }

  if (!j.contains("persons") || !j["persons"].is_array()) {
    errors.push_back("missing field persons");
    return false;
  }
  for (size_t i = 0; i < j["persons"].size(); ++i) {
    const json& pj = j["persons"][i];
    std::string at = "persons[" + std::to_string(i) + "]";
    if (!pj.is_object()) {
      errors.push_back("invalid type for " + at);
      return false;
    }
    PersonScript p;
    if (!pj.contains("track_id") || !pj["track_id"].is_number_integer() ||
        pj["track_id"].get<double>() < 0) {
      errors.push_back("missing or invalid " + at + ".track_id");
      return false;
    }
    p.track_id = pj["track_id"].get<std::uint64_t>();

    if (pj.contains("bbox_size")) {
      const json& bs = pj["bbox_size"];
      if (!bs.is_array() || bs.size() != 2 || !bs[0].is_number() ||
          !bs[1].is_number()) {
        errors.push_back("invalid type for " + at + ".bbox_size");
        return false;
      }
      p.bbox_w = bs[0].get<double>();
      p.bbox_h = bs[1].get<double>();
    }

    auto keyframes = [&](const char* key, size_t arity, auto push) {
      std::string kat = at + "." + key;
      if (!pj.contains(key)) return true;  // optional tracks get defaults
      if (!pj[key].is_array()) {
        errors.push_back("invalid type for " + kat);
        return false;
      }
      for (size_t k = 0; k < pj[key].size(); ++k) {
        const json& row = pj[key][k];
        std::string rat = kat + "[" + std::to_string(k) + "]";
        if (!row.is_array() || row.size() != arity) {
          errors.push_back(rat + ": expected " + std::to_string(arity) +
                           " entries");
          return false;
        }
        if (!push(row, rat)) return false;
      }
      return true;
    };

    bool ok =
        keyframes("bearing", 3,
                  [&](const json& row, const std::string& rat) {
                    if (!row[0].is_number() || !row[1].is_number() ||
                        !row[2].is_number()) {
                      errors.push_back("invalid type for " + rat);
                      return false;
                    }
                    p.bearing.push_back(BearingKeyframe{row[0].get<double>(),
                                                        row[1].get<double>(),
                                                        row[2].get<double>()});
                    return true;
                  }) &&
        keyframes("head_offset", 2,
                  [&](const json& row, const std::string& rat) {
                    if (!row[0].is_number() || !row[1].is_number()) {
                      errors.push_back("invalid type for " + rat);
                      return false;
                    }
                    p.head_offset.push_back(OffsetKeyframe{
                        row[0].get<double>(), row[1].get<double>()});
                    return true;
                  }) &&
        keyframes("emotion", 2, [&](const json& row, const std::string& rat) {
          if (!row[0].is_number() || !row[1].is_string()) {
            errors.push_back("invalid type for " + rat);
            return false;
          }
          auto label = emotion_from_string(row[1].get<std::string>());
          if (!label) {
            errors.push_back(rat + ": unknown emotion class: " +
                             row[1].get<std::string>());
            return false;
          }
          p.emotion.push_back(LabelKeyframe{row[0].get<double>(), *label});
          return true;
        });
    if (!ok) return false;
    if (p.head_offset.empty()) {
      p.head_offset.push_back(OffsetKeyframe{0.0, 0.0});
    }
    sc.persons.push_back(std::move(p));
  }

  for (auto& problem : validate_scenario(sc)) errors.push_back(problem);
  if (!errors.empty()) return false;
  out = std::move(sc);
  return true;
}

bool load_scenario_file(const std::string& path, Scenario& out,
                        std::vector<std::string>& errors, bool& io_error) {
  io_error = false;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    io_error = true;
    errors.push_back("cannot open scenario file: " + path);
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_from_string(buf.str(), out, errors);
}

std::vector<std::string> synthesize_events(const Scenario& sc) {
  std::vector<std::string> lines;
  EngineConfig cfg;  // rest-frame camera with default optics
  CameraPose cam;
  Rng rng(sc.seed);
  int frames = frame_count(sc);
  for (int k = 0; k < frames; ++k) {
    double t = static_cast<double>(k) / sc.frame_rate_hz;
    for (const auto& person : sc.persons) {
      FaceObservation obs;
      if (synth_observation(person, t, cam, sc.noise, cfg.hfov_deg,
                            cfg.vfov_deg, rng, obs)) {
        lines.push_back(emit_event(obs));
      }
    }
  }
  return lines;
}

std::optional<EngagementStrategy> oracle_strategy(const Scenario& sc,
                                                  const PersonScript& person,
                                                  double t,
                                                  const EngineConfig& cfg) {
  (void)sc;
  ScriptSample s = sample_script(person, t);
  if (std::abs(s.alpha_world_deg) > 0.5 * cfg.hfov_deg) return std::nullopt;
  if (std::abs(s.beta_world_deg) > 0.5 * cfg.vfov_deg) return std::nullopt;

  EmotionDistribution dist;
  concentration_distribution(s.label, sc.noise.emotion_concentration, dist);
  double valence, arousal;
  canonical_va(s.label, valence, arousal);
  Polarity polarity = classify_polarity(dist, valence, cfg);

  Bearing bearing{s.alpha_world_deg, s.beta_world_deg};
  AttentionEstimate att =
      attention_score(-s.alpha_world_deg + s.offset_deg, -s.beta_world_deg,
                      bearing, cfg);
  return select_strategy(SentimentState{polarity, att.attentive},
                         cfg.strategy_table);
}

ScenarioReport run_scenario(const Scenario& sc, const EngineConfig& cfg) {
  ScenarioReport report;
  report.seed = sc.seed;
  int frames = frame_count(sc);
  report.frames = frames;
  report.min_avert_deviation_deg = std::numeric_limits<double>::infinity();

  Engine engine(cfg, report.latency.total_s());
  Rng rng(sc.seed);
  double dt = 1.0 / sc.frame_rate_hz;

  CameraPose phys;
  double torso_phys = 0.0;
  double pan_sp = 0.0, tilt_sp = 0.0, heading_sp = 0.0, torso_sp = 0.0;

  // Per person: emitted strategy per frame (engine side) and oracle per
  // frame, for the agreement/reaction metrics.
  size_t np = sc.persons.size();
  std::vector<std::vector<std::optional<EngagementStrategy>>> emitted(np),
      oracle(np);
  for (size_t i = 0; i < np; ++i) {
    emitted[i].resize(frames);
    oracle[i].resize(frames);
  }

  for (int k = 0; k < frames; ++k) {
    double t = static_cast<double>(k) / sc.frame_rate_hz;

    RobotState pose;
    pose.head_pan_deg = phys.pan_deg;
    pose.head_tilt_deg = phys.tilt_deg;
    pose.base_heading_deg = phys.heading_deg;
    pose.torso_height = torso_phys;
    engine.sync_robot_pose(pose);

    // Synthesize, serialize, and re-parse each visible person: the report
    // exercises the full wire path.
    std::map<std::uint64_t, double> frame_deviation;
    for (const auto& person : sc.persons) {
      FaceObservation obs;
      if (!synth_observation(person, t, phys, sc.noise, cfg.hfov_deg,
                             cfg.vfov_deg, rng, obs)) {
        continue;
      }
      std::string line = emit_event(obs);
      ++report.events;
      FaceObservation parsed;
      std::string error;
      if (!parse_event(line, parsed, error) || !engine.observe(parsed)) {
        ++report.parse_errors;
        continue;
      }
      frame_deviation[person.track_id] =
          estimate_attention(parsed, cfg).deviation_deg;
    }

    std::vector<RobotCommand> cmds = engine.decide(t);
    for (const auto& cmd : cmds) {
      if (std::holds_alternative<Speak>(cmd.payload)) ++report.speak_count;
      if (const auto* av = std::get_if<AvertGaze>(&cmd.payload)) {
        // Recompute where the target ends up relative to the commanded
        // optical axis, from the scripted ground truth.
        if (cmd.target) {
          for (const auto& person : sc.persons) {
            if (person.track_id != *cmd.target) continue;
            ScriptSample s = sample_script(person, t);
            double dev = central_angle_deg(
                phys.heading_deg + av->pan_deg, av->tilt_deg,
                s.alpha_world_deg, s.beta_world_deg);
            report.min_avert_deviation_deg =
                std::min(report.min_avert_deviation_deg, dev);
          }
        }
      }
      // Commands are setpoints; the physical pose integrates below.
      if (const auto* hf = std::get_if<HeadFollow>(&cmd.payload)) {
        pan_sp = hf->pan_deg;
        tilt_sp = hf->tilt_deg;
      } else if (const auto* br = std::get_if<BodyRotate>(&cmd.payload)) {
        heading_sp = phys.heading_deg + br->delta_deg;
      } else if (const auto* tl = std::get_if<TorsoLift>(&cmd.payload)) {
        torso_sp = tl->height;
      } else if (const auto* av = std::get_if<AvertGaze>(&cmd.payload)) {
        pan_sp = av->pan_deg;
        tilt_sp = av->tilt_deg;
      }
      report.commands.push_back(cmd);
    }

    // Metrics bookkeeping per person.
    for (size_t i = 0; i < np; ++i) {
      const PersonScript& person = sc.persons[i];
      oracle[i][k] = oracle_strategy(sc, person, t, cfg);
      auto strat = engine.strategies().find(person.track_id);
      if (strat != engine.strategies().end()) {
        emitted[i][k] = strat->second;
        auto track = engine.tracks().find(person.track_id);
        ScenarioReport::TimelineRow row;
        row.frame = k;
        row.t = t;
        row.track_id = person.track_id;
        auto dev = frame_deviation.find(person.track_id);
        row.deviation_deg = dev != frame_deviation.end()
                                ? dev->second
                                : std::numeric_limits<double>::quiet_NaN();
        row.polarity = track->second.filtered().polarity;
        row.attentive = track->second.filtered().attentive;
        row.strategy = strat->second;
        row.oracle = oracle[i][k];
        report.timeline.push_back(row);
      }
    }

    double head_step = cfg.head_pan_rate_dps * dt;
    phys.pan_deg = move_toward(phys.pan_deg, pan_sp, head_step);
    phys.tilt_deg = move_toward(phys.tilt_deg, tilt_sp, head_step);
    phys.heading_deg = move_toward(phys.heading_deg, heading_sp,
                                   cfg.base_rotate_rate_dps * dt);
    torso_phys = torso_sp;
  }

  // Reduce the per-frame strategy records into the per-track report.
  int transition_window =
      std::max(cfg.majority_count(), cfg.dwell_frames) + cfg.window_frames;
  long long agree_total = 0, compare_total = 0;
  std::vector<int> all_delays;
  for (size_t i = 0; i < np; ++i) {
    const PersonScript& person = sc.persons[i];
    TrackReport tr;

    std::optional<EngagementStrategy> prev;
    for (int k = 0; k < frames; ++k) {
      if (emitted[i][k] && emitted[i][k] != prev) {
        if (prev) ++tr.switch_count;
        tr.strategy_timeline.emplace_back(
            static_cast<double>(k) / sc.frame_rate_hz, *emitted[i][k]);
      }
      if (emitted[i][k]) prev = emitted[i][k];
    }

    // Oracle regime changes: scenario onset plus every frame where the
    // oracle strategy differs from the previous frame.
    std::vector<int> changes;
    for (int k = 0; k < frames; ++k) {
      if (k == 0 || oracle[i][k] != oracle[i][k - 1]) changes.push_back(k);
    }

    std::vector<bool> excluded(frames, false);
    for (int k0 : changes) {
      for (int k = k0; k < std::min(frames, k0 + transition_window); ++k) {
        excluded[k] = true;
      }
    }

    int agree = 0, compare = 0;
    for (int k = 0; k < frames; ++k) {
      if (excluded[k] || !oracle[i][k] || !emitted[i][k]) continue;
      ++compare;
      if (*emitted[i][k] == *oracle[i][k]) ++agree;
    }
    tr.compared_frames = compare;
    tr.agreement = compare > 0 ? static_cast<double>(agree) / compare : 1.0;
    agree_total += agree;
    compare_total += compare;

    // Reaction delay: frames of the new oracle regime consumed up to and
    // including the first agreeing decision.
    for (int c0 : changes) {
      if (!oracle[i][c0]) continue;
      for (int k = c0; k < frames && oracle[i][k] == oracle[i][c0]; ++k) {
        if (emitted[i][k] && *emitted[i][k] == *oracle[i][c0]) {
          tr.reaction_delays_frames.push_back(k - c0 + 1);
          break;
        }
      }
    }
    for (int d : tr.reaction_delays_frames) all_delays.push_back(d);

    report.strategy_switches += tr.switch_count;
    report.tracks.emplace(person.track_id, std::move(tr));
  }

  report.agreement =
      compare_total > 0 ? static_cast<double>(agree_total) / compare_total
                        : 1.0;
  if (!all_delays.empty()) {
    long long sum = 0;
    for (int d : all_delays) {
      sum += d;
      report.max_reaction_delay_frames =
          std::max(report.max_reaction_delay_frames, d);
    }
    report.mean_reaction_delay_frames =
        static_cast<double>(sum) / static_cast<double>(all_delays.size());
  }
  return report;
}

std::string report_to_json(const ScenarioReport& report) {
  json j;
  j["seed"] = report.seed;
  j["frames"] = report.frames;
  j["events"] = report.events;
  j["parse_errors"] = report.parse_errors;
  json lat;
  lat["face_detection_ms"] = report.latency.face_detection_ms;
  lat["head_pose_ms"] = report.latency.head_pose_ms;
  lat["emotion_ms"] = report.latency.emotion_ms;
  lat["total_ms"] = report.latency.total_ms();
  j["latency"] = std::move(lat);

  json metrics;
  metrics["strategy_switches"] = report.strategy_switches;
  metrics["speak_count"] = report.speak_count;
  metrics["mean_reaction_delay_frames"] = report.mean_reaction_delay_frames;
  metrics["max_reaction_delay_frames"] = report.max_reaction_delay_frames;
  metrics["agreement"] = report.agreement;
  if (std::isinf(report.min_avert_deviation_deg)) {
    metrics["min_avert_deviation_deg"] = nullptr;
  } else {
    metrics["min_avert_deviation_deg"] = report.min_avert_deviation_deg;
  }
  j["metrics"] = std::move(metrics);

  json tracks = json::object();
  for (const auto& [id, tr] : report.tracks) {
    json tj;
    tj["switch_count"] = tr.switch_count;
    tj["agreement"] = tr.agreement;
    tj["compared_frames"] = tr.compared_frames;
    tj["reaction_delays_frames"] = tr.reaction_delays_frames;
    json timeline = json::array();
    for (const auto& [t, strategy] : tr.strategy_timeline) {
      timeline.push_back(json::array({t, to_string(strategy)}));
    }
    tj["strategy_timeline"] = std::move(timeline);
    tracks[std::to_string(id)] = std::move(tj);
  }
  j["tracks"] = std::move(tracks);

  json cmds = json::array();
  for (const auto& cmd : report.commands) cmds.push_back(command_json(cmd));
  j["commands"] = std::move(cmds);
  return j.dump(2) + "\n";
}

std::string report_timeline_csv(const ScenarioReport& report) {
  std::string out =
      "frame,t,track_id,deviation_deg,polarity,attentive,strategy,oracle\n";
  for (const auto& row : report.timeline) {
    out += std::to_string(row.frame);
    out += ',';
    out += csv_double(row.t);
    out += ',';
    out += std::to_string(row.track_id);
    out += ',';
    out += csv_double(row.deviation_deg);
    out += ',';
    out += to_string(row.polarity);
    out += ',';
    out += csv_bool(row.attentive);
    out += ',';
    out += to_string(row.strategy);
    out += ',';
    if (row.oracle) out += to_string(*row.oracle);
    out += '\n';
  }
  return out;
}

}  // namespace engage
