#include "engage/attention.hpp"

#include <algorithm>
#include <cmath>

namespace engage {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

struct Vec3 {
  double x, y, z;
};

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

}  // namespace

bool bearing_from_bbox(const BoundingBox& bbox, double hfov_deg,
                       double vfov_deg, Bearing& out, std::string& error) {
  if (!(hfov_deg > 0.0 && hfov_deg < 180.0)) {
    error = "hfov_deg out of (0,180)";
    return false;
  }
  if (!(vfov_deg > 0.0 && vfov_deg < 180.0)) {
    error = "vfov_deg out of (0,180)";
    return false;
  }
  // Pinhole model: image x maps to tan(alpha) linearly across the sensor.
  double half_h = std::tan(0.5 * hfov_deg * kDegToRad);
  double half_v = std::tan(0.5 * vfov_deg * kDegToRad);
  out.alpha_deg = std::atan((bbox.cx - 0.5) * 2.0 * half_h) * kRadToDeg;
  out.beta_deg = std::atan((0.5 - bbox.cy) * 2.0 * half_v) * kRadToDeg;
  return true;
}

double head_deviation_deg(double yaw_deg, double pitch_deg,
                          const Bearing& bearing) {
  double a = bearing.alpha_deg * kDegToRad;
  double b = bearing.beta_deg * kDegToRad;
  double y = yaw_deg * kDegToRad;
  double p = pitch_deg * kDegToRad;
  // Unit direction from camera to the face.
  Vec3 d{std::cos(b) * std::sin(a), std::sin(b), std::cos(b) * std::cos(a)};
  // Unit direction the head is facing (zero pose looks at the camera).
  Vec3 f{std::cos(p) * std::sin(y), std::sin(p), -std::cos(p) * std::cos(y)};
  // Angle between facing direction and the face→camera ray (−d).
  Vec3 toward{-d.x, -d.y, -d.z};
  // atan2 form keeps full precision near zero, unlike acos(dot).
  double angle = std::atan2(norm(cross(f, toward)), dot(f, toward));
  return angle * kRadToDeg;
}

AttentionEstimate attention_score(double yaw_deg, double pitch_deg,
                                  const Bearing& bearing,
                                  const EngineConfig& cfg) {
  AttentionEstimate est;
  est.deviation_deg = head_deviation_deg(yaw_deg, pitch_deg, bearing);
  est.attentive = est.deviation_deg <= cfg.theta_att_deg;
  double raw = 1.0 - est.deviation_deg / (2.0 * cfg.theta_att_deg);
  est.score = std::clamp(raw, 0.0, 1.0);
  return est;
}

Bearing observation_bearing(const FaceObservation& obs,
                            const EngineConfig& cfg) {
  Bearing bearing;
  std::string error;
  // Config validation guarantees FOVs are in range; treat failure as center.
  if (!bearing_from_bbox(obs.bbox, cfg.hfov_deg, cfg.vfov_deg, bearing,
                         error)) {
    bearing = Bearing{0.0, 0.0};
  }
  return bearing;
}

AttentionEstimate estimate_attention(const FaceObservation& obs,
                                     const EngineConfig& cfg) {
  return attention_score(obs.yaw, obs.pitch, observation_bearing(obs, cfg),
                         cfg);
}

}  // namespace engage
