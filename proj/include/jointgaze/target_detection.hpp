#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "jointgaze/ray_trace.hpp"
#include "jointgaze/scene.hpp"

namespace jointgaze {

enum class DetectionMode { ThreeD, TwoD };

struct DetectorConfig {
  double depth_tolerance_m = 0.3;
  DetectionMode mode = DetectionMode::ThreeD;
  double face_width_m = kFaceWidthM;

  /// Throws PreconditionError unless both lengths are positive.
  void validate() const;
};

struct Candidate {
  int segment_id = 0;
  int hit_x = 0;
  int hit_y = 0;
  double pixel_distance = 0.0;
  double ray_depth_m = 0.0;
  double region_depth_m = 0.0;
  double depth_residual_m = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

enum class NoTargetReason { DegenerateGaze, NoIntersections, NoDepthMatch };

std::string_view to_string(NoTargetReason r);
std::string_view to_string(DetectionMode m);

struct TargetDetection {
  int face_id = 0;
  std::variant<Candidate, NoTargetReason> outcome = NoTargetReason::NoIntersections;

  bool has_target() const { return std::holds_alternative<Candidate>(outcome); }
  const Candidate& target() const { return std::get<Candidate>(outcome); }
  NoTargetReason reason() const { return std::get<NoTargetReason>(outcome); }
  friend bool operator==(const TargetDetection&, const TargetDetection&) = default;
};

struct CandidateList {
  bool degenerate = false;
  std::vector<Candidate> candidates;
};

/// Every segment crossed by the projected gaze, with the depth predicted along
/// the 3D gaze at the hit pixel and the segment's mean depth.
CandidateList enumerate_candidates(const SegmentIndex& index, const FaceObservation& face,
                                   const DetectorConfig& config);
CandidateList enumerate_candidates(const SceneInput& scene, const FaceObservation& face,
                                   const DetectorConfig& config);

/// Nearest candidate whose residual is within tolerance.
TargetDetection detect_target_3d(const SegmentIndex& index, const FaceObservation& face,
                                 const DetectorConfig& config);
/// Nearest candidate, depth ignored.
TargetDetection detect_target_2d(const SegmentIndex& index, const FaceObservation& face,
                                 const DetectorConfig& config);
/// Dispatches on config.mode.
TargetDetection detect_target(const SegmentIndex& index, const FaceObservation& face,
                              const DetectorConfig& config);
TargetDetection detect_target(const SceneInput& scene, const FaceObservation& face,
                              const DetectorConfig& config);

}  // namespace jointgaze
