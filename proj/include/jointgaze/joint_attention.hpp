#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jointgaze/target_detection.hpp"

namespace jointgaze {

struct JointAttentionEvent {
  int segment_id = 0;
  /// Sorted ascending, at least two entries.
  std::vector<int> participant_face_ids;

  friend bool operator==(const JointAttentionEvent&, const JointAttentionEvent&) = default;
};

enum class AgentLabel { Participant, NonParticipant };

struct SceneReport {
  std::string scene_id;
  DetectionMode mode = DetectionMode::ThreeD;
  /// One per face, sorted by face id.
  std::vector<TargetDetection> detections;
  std::map<int, AgentLabel> agents;
  std::vector<JointAttentionEvent> events;
  bool has_joint_attention = false;
  std::vector<std::string> captions;
  /// Pairs of event segments whose masks overlap with IOU > 0.5.
  std::vector<std::pair<int, int>> overlapping_events;

  friend bool operator==(const SceneReport&, const SceneReport&) = default;
};

/// Groups resolved targets by segment; one event per group of two or more,
/// sorted by segment id. Throws PreconditionError on a repeated face id.
std::vector<JointAttentionEvent> resolve_events(std::span<const TargetDetection> detections);

std::map<int, AgentLabel> classify_agents(std::span<const int> face_ids,
                                          std::span<const JointAttentionEvent> events);

/// "<N> people are looking at <label>", with "segment <id>" when unlabeled.
std::string make_caption(const JointAttentionEvent& event, const std::optional<std::string>& label);

/// Full pipeline on one scene. Throws ValidationError for an invalid scene.
SceneReport analyze_scene(const SceneInput& scene, const DetectorConfig& config);

}  // namespace jointgaze
