// attention.hpp — head-pose attention geometry.
//
// Convention (camera frame, right-handed): x toward image-right, y up,
// z along the optical axis into the scene. A face at bearing (alpha, beta)
// sits in direction
//   d = (cos(beta) sin(alpha), sin(beta), cos(beta) cos(alpha)),
// and a head with pose (yaw, pitch) faces
//   f = (cos(pitch) sin(yaw), sin(pitch), -cos(pitch) cos(yaw)),
// so yaw = -alpha, pitch = -beta looks exactly into the camera. The
// attention deviation is the angle between f and the face->camera
// direction -d. Roll spins the face about f and cannot change it.
#pragma once

#include <optional>
#include <string>

#include "engage/config.hpp"
#include "engage/core.hpp"

namespace engage {

// Angular position of a face relative to the camera optical axis.
// alpha positive toward image-right, beta positive up, degrees.
struct Bearing {
  double alpha_deg = 0.0;
  double beta_deg = 0.0;
};

struct AttentionEstimate {
  double deviation_deg = 0.0;  // angle between head facing and face->camera
  double score = 0.0;          // clamp(1 - deviation / (2*theta_att), 0, 1)
  bool attentive = false;      // deviation <= theta_att
};

// Pinhole model: alpha = atan((cx - 0.5) * 2 tan(HFOV/2)),
//                beta  = atan((0.5 - cy) * 2 tan(VFOV/2)).
// Fails iff either FOV is outside (0, 180).
bool bearing_from_bbox(const BoundingBox& bbox, double hfov_deg,
                       double vfov_deg, Bearing& out, std::string& error);

// Angle in degrees between the head facing direction and the face->camera
// direction. Total on valid inputs.
double head_deviation_deg(double yaw_deg, double pitch_deg,
                          const Bearing& bearing);

AttentionEstimate attention_score(double yaw_deg, double pitch_deg,
                                  const Bearing& bearing,
                                  const EngineConfig& cfg);

// Full wrapper: bearing from the observation's bbox, then the score.
// Roll is ignored by construction.
AttentionEstimate estimate_attention(const FaceObservation& obs,
                                     const EngineConfig& cfg);

// Bearing of the observation's bbox under the config's FOV.
Bearing observation_bearing(const FaceObservation& obs,
                            const EngineConfig& cfg);

}  // namespace engage
