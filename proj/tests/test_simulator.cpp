#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "engage/attention.hpp"
#include "engage/protocol.hpp"
#include "engage/simulator.hpp"
#include "json.hpp"

using namespace engage;

namespace {

Scenario one_person(double duration_s, EmotionClass label, double alpha_deg,
                    double beta_deg, double offset_deg) {
  Scenario sc;
  sc.duration_s = duration_s;
  sc.persons.resize(1);
  PersonScript& p = sc.persons[0];
  p.track_id = 1;
  p.bearing = {BearingKeyframe{0.0, alpha_deg, beta_deg}};
  p.head_offset = {OffsetKeyframe{0.0, offset_deg}};
  p.emotion = {LabelKeyframe{0.0, label}};
  return sc;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

// Frame index a command was planned at, recovered from its latency stamp.
int command_frame(const RobotCommand& cmd, double frame_rate,
                  double latency_s) {
  return static_cast<int>(std::llround((cmd.t - latency_s) * frame_rate));
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("canonical valence/arousal anchors") {
  double v = 0, a = 0;
  canonical_va(EmotionClass::Neutral, v, a);
  CHECK(v == 0.0);
  CHECK(a == 0.0);
  canonical_va(EmotionClass::Happy, v, a);
  CHECK(v == 0.8);
  CHECK(a == 0.5);
  canonical_va(EmotionClass::Fear, v, a);
  CHECK(v == -0.7);
  CHECK(a == 0.8);
  canonical_va(EmotionClass::Sadness, v, a);
  CHECK(v == -0.7);
  CHECK(a == 0.25);
  canonical_va(EmotionClass::Anger, v, a);
  CHECK(v == -0.75);
  CHECK(a == 0.7);
  canonical_va(EmotionClass::Disgust, v, a);
  CHECK(v == -0.6);
  CHECK(a == 0.35);
  canonical_va(EmotionClass::Surprise, v, a);
  CHECK(v == 0.4);
  CHECK(a == 0.85);
}

TEST_CASE("noiseless synthesis is an exact pass-through of the script") {
  Scenario sc = one_person(1.0, EmotionClass::Happy, 5.0, -2.0, 7.0);
  std::vector<std::string> lines = synthesize_events(sc);
  REQUIRE(lines.size() == 30);

  EngineConfig cfg;  // synthesis rest frame uses the default optics
  for (std::size_t k = 0; k < lines.size(); ++k) {
    FaceObservation obs;
    std::string error;
    REQUIRE_MESSAGE(parse_event(lines[k], obs, error), error);
    CHECK(obs.timestamp ==
          doctest::Approx(static_cast<double>(k) / 30.0).epsilon(1e-12));
    CHECK(obs.track_id == 1);
    // yaw = -alpha + offset, pitch = -beta, exactly (no noise draws).
    CHECK(obs.yaw == 2.0);
    CHECK(obs.pitch == 2.0);
    CHECK(obs.roll == 0.0);
    CHECK(obs.emotions.argmax() == EmotionClass::Happy);
    CHECK(obs.valence == 0.8);
    CHECK(obs.arousal == 0.5);
    // The bbox inverts back to the scripted bearing.
    Bearing b;
    REQUIRE(bearing_from_bbox(obs.bbox, cfg.hfov_deg, cfg.vfov_deg, b, error));
    CHECK(b.alpha_deg == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(b.beta_deg == doctest::Approx(-2.0).epsilon(1e-9));
  }
}

TEST_CASE("a person outside the field of view emits nothing") {
  Scenario sc = one_person(1.0, EmotionClass::Happy, 40.0, 0.0, 0.0);
  CHECK(synthesize_events(sc).empty());  // |40| > HFOV/2 = 30

  ScenarioReport report = run_scenario(sc, EngineConfig{});
  CHECK(report.events == 0);
  // No tracks ever form, so every tick decides Idle.
  REQUIRE(report.commands.size() == 30);
  for (const auto& cmd : report.commands) {
    CHECK(std::string(command_name(cmd.payload)) == "idle");
    CHECK_FALSE(cmd.target.has_value());
  }
}

TEST_CASE("identical seeds give identical bytes, different seeds differ") {
  Scenario sc = one_person(2.0, EmotionClass::Happy, 8.0, 1.0, 3.0);
  sc.noise.flicker_prob = 0.1;
  sc.noise.angle_sigma_deg = 0.5;
  sc.seed = 99;

  CHECK(join(synthesize_events(sc)) == join(synthesize_events(sc)));

  EngineConfig cfg;
  std::string r1 = report_to_json(run_scenario(sc, cfg));
  std::string r2 = report_to_json(run_scenario(sc, cfg));
  CHECK(r1 == r2);

  Scenario other = sc;
  other.seed = 100;
  CHECK(join(synthesize_events(other)) != join(synthesize_events(sc)));
  CHECK(report_to_json(run_scenario(other, cfg)) != r1);
}

TEST_CASE("flicker frequency tracks the configured probability") {
  Scenario sc = one_person(100.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.noise.flicker_prob = 0.1;
  sc.seed = 7;
  std::vector<std::string> lines = synthesize_events(sc);
  REQUIRE(lines.size() == 3000);
  int flipped = 0;
  for (const auto& line : lines) {
    FaceObservation obs;
    std::string error;
    REQUIRE(parse_event(line, obs, error));
    if (obs.emotions.argmax() != EmotionClass::Happy) ++flipped;
  }
  // Binomial(3000, 0.1): mean 300, sigma ~16.4; accept +-4 sigma.
  CHECK(flipped >= 235);
  CHECK(flipped <= 365);
}

TEST_CASE("happy attentive person: ignore until the filter settles, then engage once") {
  Scenario sc = one_person(3.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  EngineConfig cfg;
  ScenarioReport report = run_scenario(sc, cfg);

  CHECK(report.frames == 90);
  CHECK(report.events == 90);
  CHECK(report.parse_errors == 0);
  CHECK(report.speak_count == 1);
  CHECK(report.strategy_switches == 1);

  const TrackReport& tr = report.tracks.at(1);
  REQUIRE(tr.strategy_timeline.size() == 2);
  CHECK(tr.strategy_timeline[0].first == 0.0);
  CHECK(tr.strategy_timeline[0].second == EngagementStrategy::Ignore);
  CHECK(tr.strategy_timeline[1].first == doctest::Approx(8.0 / 30.0));
  CHECK(tr.strategy_timeline[1].second == EngagementStrategy::Engage);

  // The switch lands on the ninth frame of the regime: delay = 9 frames.
  REQUIRE(tr.reaction_delays_frames == std::vector<int>{9});
  CHECK(report.mean_reaction_delay_frames == 9.0);
  CHECK(report.max_reaction_delay_frames == 9);

  // Steady state agrees with the instantaneous oracle everywhere outside
  // the transition window.
  CHECK(report.agreement == 1.0);
  CHECK(tr.compared_frames == 90 - (cfg.majority_count() + cfg.window_frames));

  // Exactly one speak command in the log.
  int speaks = 0;
  for (const auto& cmd : report.commands) {
    if (std::holds_alternative<Speak>(cmd.payload)) ++speaks;
  }
  CHECK(speaks == 1);

  // No averts anywhere: the metric serializes as null.
  nlohmann::json j = nlohmann::json::parse(report_to_json(report));
  CHECK(j["metrics"]["min_avert_deviation_deg"].is_null());
  CHECK(j["latency"]["total_ms"].get<double>() ==
        doctest::Approx(14.4).epsilon(1e-12));
}

TEST_CASE("command timestamps carry the fixed perception latency") {
  Scenario sc = one_person(2.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  EngineConfig cfg;
  ScenarioReport report = run_scenario(sc, cfg);
  LatencyModel lat;
  REQUIRE(lat.total_s() == doctest::Approx(0.0144).epsilon(1e-12));
  REQUIRE(!report.commands.empty());
  for (const auto& cmd : report.commands) {
    int k = command_frame(cmd, 30.0, lat.total_s());
    CHECK(k >= 0);
    CHECK(k < report.frames);
    double frame_t = static_cast<double>(k) / 30.0;
    CHECK(cmd.t == doctest::Approx(frame_t + lat.total_s()).epsilon(1e-9));
  }
}

TEST_CASE("fearful attentive person: avoid, avert, and never speak") {
  Scenario sc = one_person(3.0, EmotionClass::Fear, 0.0, 0.0, 0.0);
  EngineConfig cfg;
  ScenarioReport report = run_scenario(sc, cfg);

  CHECK(report.speak_count == 0);
  const TrackReport& tr = report.tracks.at(1);
  REQUIRE(!tr.strategy_timeline.empty());
  CHECK(tr.strategy_timeline.back().second == EngagementStrategy::Avoid);
  CHECK(report.agreement == 1.0);

  int averts = 0;
  for (const auto& cmd : report.commands) {
    std::string kind = command_name(cmd.payload);
    CHECK(kind != "speak");
    CHECK(kind != "torso_lift");
    if (const auto* av = std::get_if<AvertGaze>(&cmd.payload)) {
      ++averts;
      CHECK(std::abs(av->pan_deg) >= cfg.avert_cone_deg - 1e-9);
      CHECK(std::abs(av->pan_deg) <= cfg.head_yaw_limit_deg + 1e-9);
    }
  }
  CHECK(averts > 0);
  // Every avert left the face at or beyond the cone boundary.
  CHECK(std::isfinite(report.min_avert_deviation_deg));
  CHECK(report.min_avert_deviation_deg >= cfg.avert_cone_deg - 1e-9);
}

TEST_CASE("instantaneous oracle covers the strategy quadrants") {
  EngineConfig cfg;
  auto oracle_for = [&](EmotionClass label, double alpha, double offset) {
    Scenario sc = one_person(1.0, label, alpha, 0.0, offset);
    return oracle_strategy(sc, sc.persons[0], 0.5, cfg);
  };
  CHECK(oracle_for(EmotionClass::Happy, 0.0, 0.0) == EngagementStrategy::Engage);
  CHECK(oracle_for(EmotionClass::Happy, 0.0, 40.0) == EngagementStrategy::Attract);
  CHECK(oracle_for(EmotionClass::Fear, 0.0, 0.0) == EngagementStrategy::Avoid);
  CHECK(oracle_for(EmotionClass::Anger, 0.0, 40.0) == EngagementStrategy::Ignore);
  CHECK(oracle_for(EmotionClass::Neutral, 0.0, 0.0) == EngagementStrategy::Attract);
  CHECK(oracle_for(EmotionClass::Sadness, 0.0, 0.0) == EngagementStrategy::Attract);
  CHECK(oracle_for(EmotionClass::Sadness, 0.0, 40.0) == EngagementStrategy::Ignore);
  // Outside the horizontal FOV there is no ground truth.
  CHECK_FALSE(oracle_for(EmotionClass::Happy, 40.0, 0.0).has_value());
}

TEST_CASE("one-frame emotion flickers never destabilize the strategy") {
  EngineConfig cfg;
  Scenario base = one_person(4.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  ScenarioReport clean = run_scenario(base, cfg);
  REQUIRE(clean.strategy_switches == 1);
  REQUIRE(clean.speak_count == 1);

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Scenario noisy = base;
    noisy.noise.flicker_prob = 0.08;
    noisy.seed = seed;
    ScenarioReport report = run_scenario(noisy, cfg);
    CHECK(report.strategy_switches == clean.strategy_switches);
    CHECK(report.speak_count == clean.speak_count);
    CHECK(report.parse_errors == 0);
    CHECK(report.events == report.frames);
  }
}

TEST_CASE("closed loop: setpoints quote the target's absolute azimuth") {
  // Inattentive neutral person at a fixed 20 degree bearing: the policy
  // holds Ignore, so every command is a HeadFollow whose pan setpoint must
  // equal the absolute azimuth regardless of where the head currently is.
  Scenario sc = one_person(2.0, EmotionClass::Neutral, 20.0, 0.0, 30.0);
  EngineConfig cfg;
  ScenarioReport report = run_scenario(sc, cfg);
  REQUIRE(!report.commands.empty());
  for (const auto& cmd : report.commands) {
    REQUIRE(std::string(command_name(cmd.payload)) == "head_follow");
    const auto& hf = std::get<HeadFollow>(cmd.payload);
    CHECK(hf.pan_deg == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(hf.tilt_deg == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("closed loop: a moving target is followed without drift") {
  Scenario sc = one_person(4.0, EmotionClass::Neutral, 0.0, 0.0, 30.0);
  sc.persons[0].bearing = {BearingKeyframe{0.0, 0.0, 0.0},
                           BearingKeyframe{4.0, 25.0, 0.0}};
  EngineConfig cfg;
  LatencyModel lat;
  ScenarioReport report = run_scenario(sc, cfg);
  REQUIRE(!report.commands.empty());
  for (const auto& cmd : report.commands) {
    REQUIRE(std::string(command_name(cmd.payload)) == "head_follow");
    int k = command_frame(cmd, 30.0, lat.total_s());
    double frame_t = static_cast<double>(k) / 30.0;
    double alpha_world = 25.0 * frame_t / 4.0;
    // The setpoint equals the scripted world azimuth at that frame: the
    // head's own motion cancels out instead of compounding.
    CHECK(std::get<HeadFollow>(cmd.payload).pan_deg ==
          doctest::Approx(alpha_world).epsilon(1e-6));
  }
}

TEST_CASE("scenario documents load with defaults and ignore unknown keys") {
  std::string text = R"({
    "version": 1,
    "duration": 2.5,
    "frame_rate": 25,
    "seed": 11,
    "comment": "ignored",
    "noise": {"flicker_prob": 0.05, "emotion_concentration": 4.0,
              "angle_sigma_deg": 0.25},
    "persons": [
      {"track_id": 6,
       "bbox_size": [0.1, 0.12],
       "bearing": [[0, -5, 1], [2.5, 5, 1]],
       "head_offset": [[0, 0], [1, 0], [1, 30], [2.5, 30]],
       "emotion": [[0, "neutral"], [1.5, "happy"]]}
    ]
  })";
  Scenario sc;
  std::vector<std::string> errors;
  REQUIRE_MESSAGE(load_scenario_from_string(text, sc, errors),
                  (errors.empty() ? std::string{} : errors.front()));
  CHECK(sc.duration_s == 2.5);
  CHECK(sc.frame_rate_hz == 25.0);
  CHECK(sc.seed == 11);
  CHECK(sc.noise.flicker_prob == 0.05);
  CHECK(sc.noise.emotion_concentration == 4.0);
  REQUIRE(sc.persons.size() == 1);
  const PersonScript& p = sc.persons[0];
  CHECK(p.track_id == 6);
  CHECK(p.bbox_w == 0.1);
  CHECK(p.bbox_h == 0.12);
  REQUIRE(p.bearing.size() == 2);
  CHECK(p.bearing[1].alpha_deg == 5.0);
  REQUIRE(p.head_offset.size() == 4);
  CHECK(p.head_offset[2].offset_deg == 30.0);
  REQUIRE(p.emotion.size() == 2);
  CHECK(p.emotion[1].label == EmotionClass::Happy);

  // Omitted optionals fall back to defaults.
  std::string minimal = R"({"version": 1, "duration": 1,
    "persons": [{"track_id": 1, "bearing": [[0, 0, 0]],
                 "emotion": [[0, "happy"]]}]})";
  Scenario m;
  REQUIRE(load_scenario_from_string(minimal, m, errors));
  CHECK(m.frame_rate_hz == 30.0);
  CHECK(m.seed == 0);
  CHECK(m.noise.flicker_prob == 0.0);
  CHECK(m.persons[0].bbox_w == 0.15);
  REQUIRE(m.persons[0].head_offset.size() == 1);
  CHECK(m.persons[0].head_offset[0].offset_deg == 0.0);
}

TEST_CASE("scenario loader rejects bad documents with field paths") {
  Scenario sc;
  std::vector<std::string> errors;

  CHECK_FALSE(load_scenario_from_string(R"({"version": 2, "duration": 1,
      "persons": []})", sc, errors));
  REQUIRE(!errors.empty());
  CHECK(errors.front() == "unsupported schema version: 2");

  errors.clear();
  CHECK_FALSE(load_scenario_from_string(R"({"version": 1, "persons": []})",
                                        sc, errors));
  CHECK(errors.front() == "missing field duration");

  errors.clear();
  CHECK_FALSE(load_scenario_from_string(R"({"version": 1, "duration": 1,
      "persons": [{"track_id": 1, "bearing": [[0, 1]],
                   "emotion": [[0, "happy"]]}]})", sc, errors));
  REQUIRE(!errors.empty());
  CHECK(errors.front().find("persons[0].bearing[0]") != std::string::npos);
  CHECK(errors.front().find("3 entries") != std::string::npos);

  errors.clear();
  CHECK_FALSE(load_scenario_from_string(R"({"version": 1, "duration": 1,
      "persons": [{"track_id": 1, "bearing": [[0, 0, 0]],
                   "emotion": [[0, "bored"]]}]})", sc, errors));
  REQUIRE(!errors.empty());
  CHECK(errors.front().find("persons[0].emotion[0]") != std::string::npos);
  CHECK(errors.front().find("unknown emotion class: bored") != std::string::npos);

  errors.clear();
  CHECK_FALSE(load_scenario_from_string("{maybe", sc, errors));
  CHECK(errors.front().find("malformed scenario document") == 0);
}

TEST_CASE("scenario validation names the offending fields") {
  Scenario sc = one_person(1.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.duration_s = -1.0;
  auto problems = validate_scenario(sc);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("duration") != std::string::npos);

  sc = one_person(1.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.noise.flicker_prob = 1.5;
  problems = validate_scenario(sc);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("noise.flicker_prob") != std::string::npos);

  sc = one_person(1.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.persons[0].bearing.clear();
  problems = validate_scenario(sc);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("persons[0].bearing") != std::string::npos);

  sc = one_person(1.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.persons.push_back(sc.persons[0]);  // duplicate track id
  problems = validate_scenario(sc);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("duplicate id") != std::string::npos);

  sc = one_person(1.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.persons[0].emotion = {LabelKeyframe{1.0, EmotionClass::Happy},
                           LabelKeyframe{0.5, EmotionClass::Fear}};
  problems = validate_scenario(sc);
  REQUIRE(!problems.empty());
  CHECK(problems.front().find("nondecreasing") != std::string::npos);
}

TEST_CASE("timeline CSV has one row per tracked frame") {
  Scenario sc = one_person(1.0, EmotionClass::Happy, 0.0, 0.0, 0.0);
  ScenarioReport report = run_scenario(sc, EngineConfig{});
  std::string csv = report_timeline_csv(report);

  std::size_t newlines = 0;
  for (char c : csv) {
    if (c == '\n') ++newlines;
  }
  CHECK(newlines == report.timeline.size() + 1);
  CHECK(csv.rfind("frame,t,track_id,deviation_deg,polarity,attentive,strategy,oracle\n",
                  0) == 0);
  CHECK(csv.find("\n0,0,1,") != std::string::npos);
  CHECK(csv.find(",ignore,") != std::string::npos);
  CHECK(csv.find(",engage\n") != std::string::npos);
}

TEST_CASE("report JSON is structurally complete") {
  Scenario sc = one_person(1.5, EmotionClass::Happy, 0.0, 0.0, 0.0);
  sc.seed = 5;
  ScenarioReport report = run_scenario(sc, EngineConfig{});
  nlohmann::json j = nlohmann::json::parse(report_to_json(report));

  CHECK(j["seed"] == 5);
  CHECK(j["frames"] == 45);
  CHECK(j["events"] == 45);
  CHECK(j["parse_errors"] == 0);
  CHECK(j["latency"]["face_detection_ms"] == 6.7);
  CHECK(j["latency"]["head_pose_ms"] == 1.4);
  CHECK(j["latency"]["emotion_ms"] == 6.3);
  CHECK(j["metrics"]["speak_count"] == 1);
  CHECK(j["tracks"]["1"]["switch_count"] == 1);
  CHECK(j["tracks"]["1"]["strategy_timeline"].size() == 2);
  CHECK(j["tracks"]["1"]["strategy_timeline"][1][1] == "engage");
  CHECK(j["commands"].is_array());
  CHECK(j["commands"].size() == report.commands.size());
  CHECK(j["commands"][0]["cmd"].is_string());
}

}  // TEST_SUITE
