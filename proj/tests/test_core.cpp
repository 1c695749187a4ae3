#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "doctest.h"
#include "engage/core.hpp"
#include "oracles.hpp"

using namespace engage;

namespace {

FaceObservation valid_obs() {
  FaceObservation obs;
  obs.timestamp = 1.0;
  obs.track_id = 1;
  obs.bbox = BoundingBox{0.5, 0.5, 0.15, 0.2};
  return obs;
}

std::map<std::string, double> full_map(double neutral, double happy,
                                       double disgust, double fear,
                                       double surprise, double anger,
                                       double sadness) {
  return {{"neutral", neutral},   {"happy", happy}, {"disgust", disgust},
          {"fear", fear},         {"surprise", surprise},
          {"anger", anger},       {"sadness", sadness}};
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("emotion names round-trip and unknown names are rejected") {
  for (EmotionClass c : kAllEmotions) {
    auto back = emotion_from_string(to_string(c));
    REQUIRE(back.has_value());
    CHECK(*back == c);
  }
  CHECK_FALSE(emotion_from_string("joy").has_value());
  CHECK_FALSE(emotion_from_string("Happy").has_value());
  CHECK_FALSE(emotion_from_string("").has_value());
}

TEST_CASE("normalize keeps an already normalized distribution") {
  auto raw = full_map(0.0167, 0.9, 0.0167, 0.0167, 0.0166, 0.0167, 0.0166);
  double sum = 0.0;
  for (auto& [k, v] : raw) sum += v;
  REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-9));

  EmotionDistribution dist;
  std::string error;
  REQUIRE(normalize_emotions(raw, dist, error));
  CHECK(dist[EmotionClass::Happy] == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(dist.argmax() == EmotionClass::Happy);
}

TEST_CASE("normalize rescales uniform raw scores to 1/7") {
  auto raw = full_map(2, 2, 2, 2, 2, 2, 2);
  EmotionDistribution dist;
  std::string error;
  REQUIRE(normalize_emotions(raw, dist, error));
  for (EmotionClass c : kAllEmotions) {
    CHECK(dist[c] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }
}

TEST_CASE("normalize matches the divide-by-sum reference") {
  auto raw = full_map(0.45, 0.45, 0, 0, 0, 0, 0);
  EmotionDistribution dist;
  std::string error;
  REQUIRE(normalize_emotions(raw, dist, error));
  CHECK(dist[EmotionClass::Neutral] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dist[EmotionClass::Happy] == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, kEmotionCount> values{};
    for (auto& v : values) v = u(gen);
    EmotionDistribution got;
    REQUIRE(EmotionDistribution::from_raw(values, got, error));
    auto want = oracles::normalize(values);
    for (int i = 0; i < kEmotionCount; ++i) {
      CHECK(got.values()[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalize is idempotent and scale-invariant") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::uniform_real_distribution<double> scale(0.001, 1000.0);
  std::string error;
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, kEmotionCount> values{};
    for (auto& v : values) v = u(gen);
    values[trial % kEmotionCount] += 0.01;  // never all-zero

    EmotionDistribution once, twice;
    REQUIRE(EmotionDistribution::from_raw(values, once, error));
    REQUIRE(EmotionDistribution::from_raw(once.values(), twice, error));
    for (int i = 0; i < kEmotionCount; ++i) {
      CHECK(twice.values()[i] ==
            doctest::Approx(once.values()[i]).epsilon(1e-12));
    }

    double k = scale(gen);
    std::array<double, kEmotionCount> scaled = values;
    for (auto& v : scaled) v *= k;
    EmotionDistribution rescaled;
    REQUIRE(EmotionDistribution::from_raw(scaled, rescaled, error));
    for (int i = 0; i < kEmotionCount; ++i) {
      CHECK(rescaled.values()[i] ==
            doctest::Approx(once.values()[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("normalize failure modes: missing key, negative, degenerate") {
  EmotionDistribution dist;
  std::string error;

  auto missing = full_map(1, 0, 0, 0, 0, 0, 0);
  missing.erase("fear");
  CHECK_FALSE(normalize_emotions(missing, dist, error));
  CHECK(error.find("fear") != std::string::npos);

  auto unknown = full_map(1, 0, 0, 0, 0, 0, 0);
  unknown["boredom"] = 0.5;
  CHECK_FALSE(normalize_emotions(unknown, dist, error));
  CHECK(error.find("boredom") != std::string::npos);

  auto negative = full_map(1, -0.1, 0, 0, 0, 0, 0);
  CHECK_FALSE(normalize_emotions(negative, dist, error));
  CHECK(error.find("negative") != std::string::npos);

  auto zero = full_map(0, 0, 0, 0, 0, 0, 0);
  CHECK_FALSE(normalize_emotions(zero, dist, error));
  CHECK(error.find("1e-6") != std::string::npos);
}

TEST_CASE("argmax breaks ties toward the lowest enum index") {
  std::array<double, kEmotionCount> raw{};
  raw[static_cast<int>(EmotionClass::Disgust)] = 1.0;
  raw[static_cast<int>(EmotionClass::Anger)] = 1.0;
  EmotionDistribution dist;
  std::string error;
  REQUIRE(EmotionDistribution::from_raw(raw, dist, error));
  CHECK(dist.argmax() == EmotionClass::Disgust);

  EmotionDistribution flat;
  std::array<double, kEmotionCount> ones;
  ones.fill(1.0);
  REQUIRE(EmotionDistribution::from_raw(ones, flat, error));
  CHECK(flat.argmax() == EmotionClass::Neutral);
}

TEST_CASE("validation accepts in-bounds observations") {
  CHECK(validate_observation(valid_obs()).empty());
}

TEST_CASE("validation rejects each out-of-range field") {
  // Drive every bounded field out of range one at a time and require a
  // message naming it.
  struct Case {
    const char* field;
    void (*mutate)(FaceObservation&);
  };
  const Case cases[] = {
      {"cx", [](FaceObservation& o) { o.bbox.cx = 1.5; }},
      {"cy", [](FaceObservation& o) { o.bbox.cy = -0.1; }},
      {"w", [](FaceObservation& o) { o.bbox.w = 0.0; }},
      {"h", [](FaceObservation& o) { o.bbox.h = -0.2; }},
      {"yaw", [](FaceObservation& o) { o.yaw = 90.5; }},
      {"pitch", [](FaceObservation& o) { o.pitch = -91.0; }},
      {"roll", [](FaceObservation& o) { o.roll = 200.0; }},
      {"valence", [](FaceObservation& o) { o.valence = 1.2; }},
      {"arousal", [](FaceObservation& o) { o.arousal = -1.01; }},
  };
  for (const auto& c : cases) {
    CAPTURE(c.field);
    FaceObservation obs = valid_obs();
    c.mutate(obs);
    auto problems = validate_observation(obs);
    REQUIRE(problems.size() == 1);
    CHECK(problems.front().find(c.field) != std::string::npos);
  }
}

TEST_CASE("validation rejects randomized out-of-range fields") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_real_distribution<double> excess(0.01, 50.0);
  for (int trial = 0; trial < 500; ++trial) {
    FaceObservation obs = valid_obs();
    double over = excess(gen);
    switch (pick(gen)) {
      case 0: obs.yaw = 90.0 + over; break;
      case 1: obs.pitch = -90.0 - over; break;
      case 2: obs.roll = 180.0 + over; break;
      case 3: obs.valence = 1.0 + over; break;
      case 4: obs.arousal = -1.0 - over; break;
    }
    CHECK_FALSE(validate_observation(obs).empty());
  }
}

TEST_CASE("sentiment state indexing is dense and distinct") {
  bool seen[kSentimentStateCount] = {};
  for (int p = 0; p < kPolarityCount; ++p) {
    for (int a = 0; a < 2; ++a) {
      SentimentState s{static_cast<Polarity>(p), a == 1};
      REQUIRE(s.index() >= 0);
      REQUIRE(s.index() < kSentimentStateCount);
      CHECK_FALSE(seen[s.index()]);
      seen[s.index()] = true;
    }
  }
}

}  // TEST_SUITE
