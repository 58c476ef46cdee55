#include "jointgaze/report_io.hpp"

#include "json.hpp"
#include "jointgaze/errors.hpp"

namespace jointgaze {

using ojson = nlohmann::ordered_json;

std::string report_to_json(const SceneReport& report) {
  ojson j;
  j["scene_id"] = report.scene_id;
  j["mode"] = std::string(to_string(report.mode));
  j["has_joint_attention"] = report.has_joint_attention;
  ojson faces = ojson::array();
  for (const auto& d : report.detections) {
    ojson f;
    f["face_id"] = d.face_id;
    const auto label = report.agents.find(d.face_id);
    f["participant"] = label != report.agents.end() && label->second == AgentLabel::Participant;
    if (d.has_target()) {
      const Candidate& c = d.target();
      f["outcome"] = "target";
      f["segment_id"] = c.segment_id;
      f["hit_px"] = ojson::array({c.hit_x, c.hit_y});
      f["pixel_distance"] = c.pixel_distance;
      f["ray_depth_m"] = c.ray_depth_m;
      f["region_depth_m"] = c.region_depth_m;
      f["depth_residual_m"] = c.depth_residual_m;
    } else {
      f["outcome"] = "no_target";
      f["reason"] = std::string(to_string(d.reason()));
    }
    faces.push_back(std::move(f));
  }
  j["faces"] = std::move(faces);
  ojson events = ojson::array();
  for (const auto& e : report.events) {
    events.push_back({{"segment_id", e.segment_id}, {"participants", e.participant_face_ids}});
  }
  j["events"] = std::move(events);
  j["captions"] = report.captions;
  ojson overlaps = ojson::array();
  for (const auto& [a, b] : report.overlapping_events) overlaps.push_back(ojson::array({a, b}));
  j["overlapping_events"] = std::move(overlaps);
  return j.dump(2) + "\n";
}

SceneReport report_from_json(std::string_view text) {
  SceneReport r;
  try {
    const ojson j = ojson::parse(text);
    r.scene_id = j.at("scene_id").get<std::string>();
    const auto mode = j.at("mode").get<std::string>();
    if (mode != "3d" && mode != "2d") throw ParseError("mode", "expected 3d or 2d");
    r.mode = mode == "3d" ? DetectionMode::ThreeD : DetectionMode::TwoD;
    r.has_joint_attention = j.at("has_joint_attention").get<bool>();
    for (const auto& f : j.at("faces")) {
      TargetDetection d;
      d.face_id = f.at("face_id").get<int>();
      r.agents[d.face_id] =
          f.at("participant").get<bool>() ? AgentLabel::Participant : AgentLabel::NonParticipant;
      const auto outcome = f.at("outcome").get<std::string>();
      if (outcome == "target") {
        Candidate c;
        c.segment_id = f.at("segment_id").get<int>();
        c.hit_x = f.at("hit_px").at(0).get<int>();
        c.hit_y = f.at("hit_px").at(1).get<int>();
        c.pixel_distance = f.at("pixel_distance").get<double>();
        c.ray_depth_m = f.at("ray_depth_m").get<double>();
        c.region_depth_m = f.at("region_depth_m").get<double>();
        c.depth_residual_m = f.at("depth_residual_m").get<double>();
        d.outcome = c;
      } else if (outcome == "no_target") {
        const auto reason = f.at("reason").get<std::string>();
        if (reason == "degenerate_gaze") {
          d.outcome = NoTargetReason::DegenerateGaze;
        } else if (reason == "no_intersections") {
          d.outcome = NoTargetReason::NoIntersections;
        } else if (reason == "no_depth_match") {
          d.outcome = NoTargetReason::NoDepthMatch;
        } else {
          throw ParseError("faces.reason", "unknown reason " + reason);
        }
      } else {
        throw ParseError("faces.outcome", "unknown outcome " + outcome);
      }
      r.detections.push_back(std::move(d));
    }
    for (const auto& e : j.at("events")) {
      r.events.push_back({e.at("segment_id").get<int>(), e.at("participants").get<std::vector<int>>()});
    }
    r.captions = j.at("captions").get<std::vector<std::string>>();
    for (const auto& p : j.at("overlapping_events")) {
      r.overlapping_events.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report", std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace jointgaze
