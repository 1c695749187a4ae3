// sentiment.hpp — per-frame polarity classification and the temporal
// filter that turns a flickering (polarity, attentive) stream into a
// stable per-track sentiment state.
//
// Filter rule: the filtered state switches to a candidate pair iff
//   (a) the candidate differs from the current filtered state,
//   (b) the candidate arrived in >= D consecutive frames (dwell), and
//   (c) the candidate holds >= ceil(m*W) of the last W frames (majority).
// Since m > 0.5 a majority winner is automatically the window mode, and
// any perturbation shorter than D frames can never satisfy (b).
#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>

#include "engage/attention.hpp"
#include "engage/config.hpp"
#include "engage/core.hpp"

namespace engage {

// Maps the dominant emotion class to a polarity when its probability
// reaches p_min; otherwise falls back to valence thresholds.
//   happy -> Positive        fear/disgust/anger -> NegativeStrong
//   sadness -> NegativeSoft  neutral -> Neutral
//   surprise -> Positive if valence >= 0 else NegativeSoft
// Fallback: v >= v_pos -> Positive, v <= v_neg -> NegativeSoft, else Neutral.
Polarity classify_polarity(const EmotionDistribution& emotions, double valence,
                           const EngineConfig& cfg);

class TrackState {
 public:
  explicit TrackState(std::uint64_t track_id) : id_(track_id) {}

  std::uint64_t track_id() const { return id_; }
  double last_timestamp() const { return last_t_; }
  bool has_observation() const { return frames_seen_ > 0; }

  // Fresh tracks report (Neutral, inattentive) until the filter switches.
  const SentimentState& filtered() const { return filtered_; }

  // Streaking candidate and its consecutive-frame count, capped at D.
  const SentimentState& candidate() const { return candidate_; }
  int dwell_count() const { return dwell_; }
  std::size_t window_size() const { return window_.size(); }

  // Pushes one frame. Returns false (state untouched) when t regresses.
  bool push(double t, const SentimentState& frame, const EngineConfig& cfg);

 private:
  std::uint64_t id_;
  std::deque<SentimentState> window_;
  SentimentState filtered_{};   // {Neutral, false}
  SentimentState candidate_{};  // pair of the current input streak
  int dwell_ = 0;
  std::uint64_t frames_seen_ = 0;
  double last_t_ = -std::numeric_limits<double>::infinity();
};

// Classifies the observation, pushes (polarity, attentive) into the track
// window and returns the filtered state. nullopt iff the observation's
// timestamp precedes the track's last one (state untouched).
std::optional<SentimentState> update_track(TrackState& state,
                                           const FaceObservation& obs,
                                           const AttentionEstimate& att,
                                           const EngineConfig& cfg);

bool track_expired(const TrackState& state, double now, double timeout_s);

// Removes tracks not seen for longer than timeout_s.
void expire_tracks(std::map<std::uint64_t, TrackState>& states, double now,
                   double timeout_s);

}  // namespace engage
