// protocol.hpp — newline-delimited JSON wire format.
//
// Perception events in:
//   {"t":0.0,"track_id":1,"bbox":[0.5,0.5,0.15,0.2],"yaw":0.0,"pitch":0.0,
//    "roll":0.0,"emotions":{"neutral":...,...},"valence":0.0,"arousal":0.0}
// Robot commands out:
//   {"t":1.5,"cmd":"speak","target":3,"params":{"text":"hello"}}
// One record per line, UTF-8, stable key order on output, unknown extra
// keys ignored on input. cmd is one of head_follow | body_rotate |
// torso_lift | speak | avert_gaze | idle.
#pragma once

#include <string>
#include <string_view>

#include "engage/arbiter.hpp"
#include "engage/core.hpp"

namespace engage {

// Parses one event line. On failure returns false with a message naming
// the field ("missing field yaw", "value out of domain: valence", ...);
// the caller adds stream position. Emotions pass through
// normalize_emotions, so slightly off-sum inputs are accepted.
bool parse_event(std::string_view line, FaceObservation& out,
                 std::string& error);

// Serializes an observation to one line (no trailing newline). Inverse of
// parse_event up to emotion renormalization.
std::string emit_event(const FaceObservation& obs);

// Serializes a command to one line (no trailing newline).
std::string emit_command(const RobotCommand& cmd);

// Round-trip counterpart of emit_command, used by tests and log tooling.
bool parse_command(std::string_view line, RobotCommand& out,
                   std::string& error);

}  // namespace engage
