// Newline-delimited record format: one structured object per line.
#include "engage/protocol.hpp"

#include <map>

#include "json.hpp"

namespace engage {

namespace {

using json = nlohmann::ordered_json;

// Field accessors that name the offending field in every error path.
bool require_field(const json& j, const char* key, std::string& error) {
  if (!j.contains(key)) {
    error = std::string("missing field ") + key;
    return false;
  }
  return true;
}

bool get_number(const json& j, const char* key, double& out,
                std::string& error) {
  if (!require_field(j, key, error)) return false;
  const json& v = j[key];
  if (!v.is_number()) {
    error = std::string("invalid type for field ") + key;
    return false;
  }
  out = v.get<double>();
  return true;
}

}  // namespace

bool parse_event(std::string_view line, FaceObservation& out,
                 std::string& error) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    error = std::string("malformed structure: ") + e.what();
    return false;
  }
  if (!j.is_object()) {
    error = "malformed structure: record is not an object";
    return false;
  }

  FaceObservation obs;
  if (!get_number(j, "t", obs.timestamp, error)) return false;

  if (!require_field(j, "track_id", error)) return false;
  const json& id = j["track_id"];
  if (!id.is_number_integer() || id.get<double>() < 0) {
    error = "value out of domain: track_id must be an unsigned integer";
    return false;
  }
  obs.track_id = id.get<std::uint64_t>();

  if (!require_field(j, "bbox", error)) return false;
  const json& bbox = j["bbox"];
  if (!bbox.is_array() || bbox.size() != 4 || !bbox[0].is_number() ||
      !bbox[1].is_number() || !bbox[2].is_number() || !bbox[3].is_number()) {
    error = "invalid type for field bbox: expected [cx,cy,w,h]";
    return false;
  }
  obs.bbox = BoundingBox{bbox[0].get<double>(), bbox[1].get<double>(),
                         bbox[2].get<double>(), bbox[3].get<double>()};

  if (!get_number(j, "yaw", obs.yaw, error)) return false;
  if (!get_number(j, "pitch", obs.pitch, error)) return false;
  if (!get_number(j, "roll", obs.roll, error)) return false;

  if (!require_field(j, "emotions", error)) return false;
  const json& emo = j["emotions"];
  if (!emo.is_object()) {
    error = "invalid type for field emotions";
    return false;
  }
  std::map<std::string, double> raw;
  for (const auto& [key, value] : emo.items()) {
    if (!value.is_number()) {
      error = "invalid type for field emotions." + key;
      return false;
    }
    raw[key] = value.get<double>();
  }
  std::string emo_error;
  if (!normalize_emotions(raw, obs.emotions, emo_error)) {
    error = "value out of domain: emotions: " + emo_error;
    return false;
  }

  if (!get_number(j, "valence", obs.valence, error)) return false;
  if (!get_number(j, "arousal", obs.arousal, error)) return false;

  auto problems = validate_observation(obs);
  if (!problems.empty()) {
    error = "value out of domain: " + problems.front();
    return false;
  }
  out = obs;
  return true;
}

std::string emit_event(const FaceObservation& obs) {
  json j;
  j["t"] = obs.timestamp;
  j["track_id"] = obs.track_id;
  j["bbox"] = {obs.bbox.cx, obs.bbox.cy, obs.bbox.w, obs.bbox.h};
  j["yaw"] = obs.yaw;
  j["pitch"] = obs.pitch;
  j["roll"] = obs.roll;
  json emo;
  for (EmotionClass c : kAllEmotions) {
    emo[to_string(c)] = obs.emotions[c];
  }
  j["emotions"] = std::move(emo);
  j["valence"] = obs.valence;
  j["arousal"] = obs.arousal;
  return j.dump();
}

std::string emit_command(const RobotCommand& cmd) {
  json j;
  j["t"] = cmd.t;
  j["cmd"] = command_name(cmd.payload);
  if (cmd.target) {
    j["target"] = *cmd.target;
  } else {
    j["target"] = nullptr;
  }
  json params = json::object();
  if (const auto* hf = std::get_if<HeadFollow>(&cmd.payload)) {
    params["pan"] = hf->pan_deg;
    params["tilt"] = hf->tilt_deg;
  } else if (const auto* br = std::get_if<BodyRotate>(&cmd.payload)) {
    params["delta"] = br->delta_deg;
  } else if (const auto* tl = std::get_if<TorsoLift>(&cmd.payload)) {
    params["height"] = tl->height;
  } else if (const auto* sp = std::get_if<Speak>(&cmd.payload)) {
    params["text"] = sp->text;
  } else if (const auto* av = std::get_if<AvertGaze>(&cmd.payload)) {
    params["pan"] = av->pan_deg;
    params["tilt"] = av->tilt_deg;
  }
  j["params"] = std::move(params);
  return j.dump();
}

bool parse_command(std::string_view line, RobotCommand& out,
                   std::string& error) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    error = std::string("malformed structure: ") + e.what();
    return false;
  }
  if (!j.is_object()) {
    error = "malformed structure: record is not an object";
    return false;
  }
  RobotCommand cmd;
  if (!get_number(j, "t", cmd.t, error)) return false;
  if (!require_field(j, "cmd", error)) return false;
  if (!require_field(j, "target", error)) return false;
  if (!require_field(j, "params", error)) return false;
  if (!j["cmd"].is_string()) {
    error = "invalid type for field cmd";
    return false;
  }
  if (j["target"].is_null()) {
    cmd.target.reset();
  } else if (j["target"].is_number_integer()) {
    cmd.target = j["target"].get<std::uint64_t>();
  } else {
    error = "invalid type for field target";
    return false;
  }
  const json& params = j["params"];
  if (!params.is_object()) {
    error = "invalid type for field params";
    return false;
  }

  std::string name = j["cmd"].get<std::string>();
  auto param = [&](const char* key, double& v) {
    return get_number(params, key, v, error);
  };
  if (name == "head_follow") {
    HeadFollow hf;
    if (!param("pan", hf.pan_deg) || !param("tilt", hf.tilt_deg)) return false;
    cmd.payload = hf;
  } else if (name == "body_rotate") {
    BodyRotate br;
    if (!param("delta", br.delta_deg)) return false;
    cmd.payload = br;
  } else if (name == "torso_lift") {
    TorsoLift tl;
    if (!param("height", tl.height)) return false;
    cmd.payload = tl;
  } else if (name == "speak") {
    if (!params.contains("text") || !params["text"].is_string()) {
      error = "invalid type for field params.text";
      return false;
    }
    Speak sp;
    sp.text = params["text"].get<std::string>();
    if (sp.text.empty()) {
      error = "value out of domain: params.text must be non-empty";
      return false;
    }
    cmd.payload = sp;
  } else if (name == "avert_gaze") {
    AvertGaze av;
    if (!param("pan", av.pan_deg) || !param("tilt", av.tilt_deg)) return false;
    cmd.payload = av;
  } else if (name == "idle") {
    cmd.payload = Idle{};
  } else {
    error = "value out of domain: cmd must name a known command";
    return false;
  }
  out = cmd;
  return true;
}

}  // namespace engage
