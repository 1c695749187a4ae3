// core.hpp — domain types shared by every stage of the engine:
// the 7-class emotion taxonomy, per-face perception observations,
// and the (polarity, attentive) sentiment vocabulary.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace engage {

// Closed taxonomy. Unknown class names in input are a hard error so that
// upstream perception mismatches surface immediately.
enum class EmotionClass : int {
  Neutral = 0,
  Happy,
  Disgust,
  Fear,
  Surprise,
  Anger,
  Sadness,
};

inline constexpr int kEmotionCount = 7;

inline constexpr std::array<EmotionClass, kEmotionCount> kAllEmotions{
    EmotionClass::Neutral, EmotionClass::Happy,    EmotionClass::Disgust,
    EmotionClass::Fear,    EmotionClass::Surprise, EmotionClass::Anger,
    EmotionClass::Sadness,
};

const char* to_string(EmotionClass c);
std::optional<EmotionClass> emotion_from_string(std::string_view name);

// Probabilities over the 7 classes. Always normalized: each value in [0,1],
// sum within 1e-6 of 1.
class EmotionDistribution {
 public:
  // Default: all mass on Neutral.
  EmotionDistribution();

  // Rescales raw non-negative scores to sum 1. Fails on any negative value
  // or a degenerate all-zero input (sum < 1e-6).
  static bool from_raw(const std::array<double, kEmotionCount>& raw,
                       EmotionDistribution& out, std::string& error);

  double operator[](EmotionClass c) const {
    return p_[static_cast<int>(c)];
  }
  const std::array<double, kEmotionCount>& values() const { return p_; }

  // Ties resolve to the lowest enum index, so the result is deterministic.
  EmotionClass argmax() const;
  double max_probability() const;

  bool operator==(const EmotionDistribution&) const = default;

 private:
  std::array<double, kEmotionCount> p_{};
};

// Named-key variant used by the wire protocol. All 7 class keys must be
// present, unknown keys are rejected.
bool normalize_emotions(const std::map<std::string, double>& raw,
                        EmotionDistribution& out, std::string& error);

struct BoundingBox {
  double cx = 0.5;  // center, normalized image coordinates
  double cy = 0.5;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
};

// One timestamped perception sample for one tracked face. Angles are in
// degrees, camera frame: yaw positive = face turned toward image-right,
// pitch positive = up.
struct FaceObservation {
  double timestamp = 0.0;  // seconds, monotonic per track
  std::uint64_t track_id = 0;
  BoundingBox bbox;
  double yaw = 0.0;    // [-90, 90]
  double pitch = 0.0;  // [-90, 90]
  double roll = 0.0;   // [-180, 180]
  EmotionDistribution emotions;
  double valence = 0.0;  // [-1, 1]
  double arousal = 0.0;  // [-1, 1]
};

// Field-bound checks. Returns one message per violated constraint; empty
// means the observation is valid.
std::vector<std::string> validate_observation(const FaceObservation& obs);

// Coarse per-frame emotional category. NegativeStrong covers fear, disgust
// and anger; sadness maps to NegativeSoft.
enum class Polarity : int {
  Positive = 0,
  NegativeStrong,
  NegativeSoft,
  Neutral,
};

inline constexpr int kPolarityCount = 4;

const char* to_string(Polarity p);
std::optional<Polarity> polarity_from_string(std::string_view name);

// Fused (polarity, attentive) pair. All 8 combinations are meaningful.
struct SentimentState {
  Polarity polarity = Polarity::Neutral;
  bool attentive = false;

  bool operator==(const SentimentState&) const = default;

  // Dense index in [0, 8), used by the strategy table.
  int index() const {
    return static_cast<int>(polarity) * 2 + (attentive ? 1 : 0);
  }
};

inline constexpr int kSentimentStateCount = kPolarityCount * 2;

}  // namespace engage
