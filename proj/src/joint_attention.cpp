#include "jointgaze/joint_attention.hpp"

#include <algorithm>
#include <set>

#include "jointgaze/errors.hpp"

namespace jointgaze {

std::vector<JointAttentionEvent> resolve_events(std::span<const TargetDetection> detections) {
  std::set<int> seen;
  std::map<int, std::vector<int>> groups;
  for (const TargetDetection& d : detections) {
    if (!seen.insert(d.face_id).second) {
      throw PreconditionError("duplicate face id " + std::to_string(d.face_id));
    }
    if (d.has_target()) groups[d.target().segment_id].push_back(d.face_id);
  }
  std::vector<JointAttentionEvent> events;
  for (auto& [segment, faces] : groups) {
    if (faces.size() < 2) continue;
    std::sort(faces.begin(), faces.end());
    events.push_back({segment, std::move(faces)});
  }
  return events;
}

std::map<int, AgentLabel> classify_agents(std::span<const int> face_ids,
                                          std::span<const JointAttentionEvent> events) {
  std::set<int> participants;
  for (const auto& e : events) participants.insert(e.participant_face_ids.begin(), e.participant_face_ids.end());
  std::map<int, AgentLabel> out;
  for (int id : face_ids) {
    out[id] = participants.count(id) ? AgentLabel::Participant : AgentLabel::NonParticipant;
  }
  return out;
}

std::string make_caption(const JointAttentionEvent& event, const std::optional<std::string>& label) {
  if (event.participant_face_ids.size() < 2) {
    throw PreconditionError("a caption needs at least two participants");
  }
  const std::string target =
      label && !label->empty() ? *label : "segment " + std::to_string(event.segment_id);
  return std::to_string(event.participant_face_ids.size()) + " people are looking at " + target;
}

SceneReport analyze_scene(const SceneInput& scene, const DetectorConfig& config) {
  require_valid(scene);
  config.validate();

  SceneReport report;
  report.scene_id = scene.scene_id;
  report.mode = config.mode;

  const SegmentIndex index(scene);
  std::vector<int> face_ids;
  for (const auto& face : scene.faces) {
    report.detections.push_back(detect_target(index, face, config));
    face_ids.push_back(face.face_id);
  }
  std::sort(report.detections.begin(), report.detections.end(),
            [](const TargetDetection& a, const TargetDetection& b) { return a.face_id < b.face_id; });

  report.events = resolve_events(report.detections);
  report.agents = classify_agents(face_ids, report.events);
  report.has_joint_attention = !report.events.empty();
  for (const auto& e : report.events) {
    report.captions.push_back(make_caption(e, scene.find_segment(e.segment_id)->label));
  }
  for (std::size_t i = 0; i < report.events.size(); ++i) {
    for (std::size_t j = i + 1; j < report.events.size(); ++j) {
      const auto& a = scene.find_segment(report.events[i].segment_id)->mask;
      const auto& b = scene.find_segment(report.events[j].segment_id)->mask;
      if (mask_iou(a, b) > 0.5) {
        report.overlapping_events.emplace_back(report.events[i].segment_id, report.events[j].segment_id);
      }
    }
  }
  return report;
}

}  // namespace jointgaze
