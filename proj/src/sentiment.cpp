#include "engage/sentiment.hpp"

#include <algorithm>
#include <limits>

namespace engage {

Polarity classify_polarity(const EmotionDistribution& emotions, double valence,
                           const EngineConfig& cfg) {
  EmotionClass dominant = emotions.argmax();
  if (emotions.max_probability() >= cfg.p_min) {
    switch (dominant) {
      case EmotionClass::Happy:
        return Polarity::Positive;
      case EmotionClass::Fear:
      case EmotionClass::Disgust:
      case EmotionClass::Anger:
        return Polarity::NegativeStrong;
      case EmotionClass::Sadness:
        return Polarity::NegativeSoft;
      case EmotionClass::Neutral:
        return Polarity::Neutral;
      case EmotionClass::Surprise:
        // Surprise is ambiguous on its own; valence decides its sign.
        return valence >= 0.0 ? Polarity::Positive : Polarity::NegativeSoft;
    }
  }
  // No confident class: fall back to the continuous valence axis.
  if (valence >= cfg.v_pos) return Polarity::Positive;
  if (valence <= cfg.v_neg) return Polarity::NegativeSoft;
  return Polarity::Neutral;
}

bool TrackState::push(double t, const SentimentState& state,
                      const EngineConfig& cfg) {
  if (has_observation() && t < last_t_) return false;
  last_t_ = t;
  ++frames_seen_;

  window_.push_back(state);
  while (static_cast<int>(window_.size()) > cfg.window_frames) {
    window_.pop_front();
  }

  if (state == candidate_) {
    if (dwell_ < cfg.dwell_frames) ++dwell_;
  } else {
    candidate_ = state;
    dwell_ = 1;
  }

  // Switch only when the incoming run is long enough (dwell) AND the
  // candidate dominates the recent window (majority).
  if (!(candidate_ == filtered_) && dwell_ >= cfg.dwell_frames) {
    int count = 0;
    for (const auto& s : window_) {
      if (s == candidate_) ++count;
    }
    if (count >= cfg.majority_count()) filtered_ = candidate_;
  }
  return true;
}

std::optional<SentimentState> update_track(TrackState& track,
                                           const FaceObservation& obs,
                                           const AttentionEstimate& attention,
                                           const EngineConfig& cfg) {
  Polarity polarity = classify_polarity(obs.emotions, obs.valence, cfg);
  SentimentState raw{polarity, attention.attentive};
  if (!track.push(obs.timestamp, raw, cfg)) return std::nullopt;
  return track.filtered();
}

bool track_expired(const TrackState& track, double now, double timeout_s) {
  if (!track.has_observation()) return false;
  return (now - track.last_timestamp()) > timeout_s;
}

void expire_tracks(std::map<std::uint64_t, TrackState>& tracks, double now,
                   double timeout_s) {
  for (auto it = tracks.begin(); it != tracks.end();) {
    if (track_expired(it->second, now, timeout_s)) {
      it = tracks.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace engage
