#include "engage/core.hpp"

#include <algorithm>
#include <cmath>

namespace engage {

namespace {

constexpr const char* kEmotionNames[kEmotionCount] = {
    "neutral", "happy", "disgust", "fear", "surprise", "anger", "sadness",
};

constexpr const char* kPolarityNames[kPolarityCount] = {
    "positive", "negative_strong", "negative_soft", "neutral",
};

}  // namespace

const char* to_string(EmotionClass c) {
  return kEmotionNames[static_cast<int>(c)];
}

std::optional<EmotionClass> emotion_from_string(std::string_view name) {
  for (int i = 0; i < kEmotionCount; ++i) {
    if (name == kEmotionNames[i]) return static_cast<EmotionClass>(i);
  }
  return std::nullopt;
}

const char* to_string(Polarity p) {
  return kPolarityNames[static_cast<int>(p)];
}

std::optional<Polarity> polarity_from_string(std::string_view name) {
  for (int i = 0; i < kPolarityCount; ++i) {
    if (name == kPolarityNames[i]) return static_cast<Polarity>(i);
  }
  return std::nullopt;
}

EmotionDistribution::EmotionDistribution() {
  p_[static_cast<int>(EmotionClass::Neutral)] = 1.0;
}

bool EmotionDistribution::from_raw(const std::array<double, kEmotionCount>& raw,
                                   EmotionDistribution& out,
                                   std::string& error) {
  double sum = 0.0;
  for (int i = 0; i < kEmotionCount; ++i) {
    if (raw[i] < 0.0) {
      error = std::string("negative probability for ") +
              kEmotionNames[i];
      return false;
    }
    sum += raw[i];
  }
  if (sum < 1e-6) {
    error = "degenerate emotion distribution (sum < 1e-6)";
    return false;
  }
  for (int i = 0; i < kEmotionCount; ++i) out.p_[i] = raw[i] / sum;
  return true;
}

EmotionClass EmotionDistribution::argmax() const {
  int best = 0;
  for (int i = 1; i < kEmotionCount; ++i) {
    if (p_[i] > p_[best]) best = i;
  }
  return static_cast<EmotionClass>(best);
}

double EmotionDistribution::max_probability() const {
  return *std::max_element(p_.begin(), p_.end());
}

bool normalize_emotions(const std::map<std::string, double>& raw,
                        EmotionDistribution& out, std::string& error) {
  std::array<double, kEmotionCount> values{};
  for (const auto& [name, value] : raw) {
    auto c = emotion_from_string(name);
    if (!c) {
      error = "unknown emotion class: " + name;
      return false;
    }
    values[static_cast<int>(*c)] = value;
  }
  for (int i = 0; i < kEmotionCount; ++i) {
    if (raw.find(kEmotionNames[i]) == raw.end()) {
      error = std::string("missing emotion class: ") + kEmotionNames[i];
      return false;
    }
  }
  return EmotionDistribution::from_raw(values, out, error);
}

std::vector<std::string> validate_observation(const FaceObservation& obs) {
  std::vector<std::string> problems;
  auto check = [&](bool ok, const char* msg) {
    if (!ok) problems.emplace_back(msg);
  };
  check(std::isfinite(obs.timestamp), "timestamp must be finite");
  check(obs.bbox.cx >= 0.0 && obs.bbox.cx <= 1.0, "bbox cx must be in [0,1]");
  check(obs.bbox.cy >= 0.0 && obs.bbox.cy <= 1.0, "bbox cy must be in [0,1]");
  check(obs.bbox.w > 0.0, "bbox w must be > 0");
  check(obs.bbox.h > 0.0, "bbox h must be > 0");
  check(obs.yaw >= -90.0 && obs.yaw <= 90.0, "yaw must be in [-90,90]");
  check(obs.pitch >= -90.0 && obs.pitch <= 90.0, "pitch must be in [-90,90]");
  check(obs.roll >= -180.0 && obs.roll <= 180.0, "roll must be in [-180,180]");
  check(obs.valence >= -1.0 && obs.valence <= 1.0,
        "valence must be in [-1,1]");
  check(obs.arousal >= -1.0 && obs.arousal <= 1.0,
        "arousal must be in [-1,1]");

  double sum = 0.0;
  bool in_range = true;
  for (double v : obs.emotions.values()) {
    in_range = in_range && v >= 0.0 && v <= 1.0;
    sum += v;
  }
  check(in_range, "emotion probabilities must be in [0,1]");
  check(std::abs(sum - 1.0) <= 1e-6, "emotion probabilities must sum to 1");
  return problems;
}

}  // namespace engage
