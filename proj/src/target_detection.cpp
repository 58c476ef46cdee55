#include "jointgaze/target_detection.hpp"

#include <algorithm>
#include <tuple>

#include "jointgaze/errors.hpp"

namespace jointgaze {

void DetectorConfig::validate() const {
  if (!(depth_tolerance_m > 0.0)) throw PreconditionError("depth tolerance must be positive");
  if (!(face_width_m > 0.0)) throw PreconditionError("face width must be positive");
}

std::string_view to_string(NoTargetReason r) {
  switch (r) {
    case NoTargetReason::DegenerateGaze:
      return "degenerate_gaze";
    case NoTargetReason::NoIntersections:
      return "no_intersections";
    case NoTargetReason::NoDepthMatch:
      return "no_depth_match";
  }
  return "unknown";
}

std::string_view to_string(DetectionMode m) { return m == DetectionMode::ThreeD ? "3d" : "2d"; }

CandidateList enumerate_candidates(const SegmentIndex& index, const FaceObservation& face,
                                   const DetectorConfig& config) {
  config.validate();
  CandidateList out;
  const auto dir = gaze_projection_2d(face.gaze);
  if (!dir) {
    out.degenerate = true;
    return out;
  }
  const SceneInput& scene = index.scene();
  const PixelScale scale = pixel_scale_at_face(face.ear_to_ear_px, config.face_width_m);
  const double z0 = face_depth(scene, face);

  for (const RayHit& hit : trace_ray_hits(index, face.eye_center_px, *dir)) {
    const SegmentProposal* seg = scene.find_segment(hit.segment_id);
    Candidate c;
    c.segment_id = hit.segment_id;
    c.hit_x = hit.hit_x;
    c.hit_y = hit.hit_y;
    c.pixel_distance = hit.pixel_distance;
    c.ray_depth_m = ray_depth_at_pixel(face.eye_center_px, z0, face.gaze, scale, hit.hit_center());
    c.region_depth_m = region_mean_depth(scene.depth, seg->mask);
    c.depth_residual_m = std::abs(c.region_depth_m - c.ray_depth_m);
    out.candidates.push_back(c);
  }
  return out;
}

CandidateList enumerate_candidates(const SceneInput& scene, const FaceObservation& face,
                                   const DetectorConfig& config) {
  const SegmentIndex index(scene);
  return enumerate_candidates(index, face, config);
}

TargetDetection detect_target_3d(const SegmentIndex& index, const FaceObservation& face,
                                 const DetectorConfig& config) {
  if (config.mode != DetectionMode::ThreeD) throw PreconditionError("detector mode is not 3d");
  TargetDetection det{face.face_id, NoTargetReason::NoIntersections};
  const CandidateList list = enumerate_candidates(index, face, config);
  if (list.degenerate) {
    det.outcome = NoTargetReason::DegenerateGaze;
    return det;
  }
  if (list.candidates.empty()) return det;

  const Candidate* best = nullptr;
  auto key = [](const Candidate& c) {
    return std::tie(c.pixel_distance, c.depth_residual_m, c.segment_id);
  };
  for (const Candidate& c : list.candidates) {
    if (!(c.depth_residual_m <= config.depth_tolerance_m)) continue;
    if (!best || key(c) < key(*best)) best = &c;
  }
  if (best) {
    det.outcome = *best;
  } else {
    det.outcome = NoTargetReason::NoDepthMatch;
  }
  return det;
}

TargetDetection detect_target_2d(const SegmentIndex& index, const FaceObservation& face,
                                 const DetectorConfig& config) {
  if (config.mode != DetectionMode::TwoD) throw PreconditionError("detector mode is not 2d");
  TargetDetection det{face.face_id, NoTargetReason::NoIntersections};
  const CandidateList list = enumerate_candidates(index, face, config);
  if (list.degenerate) {
    det.outcome = NoTargetReason::DegenerateGaze;
    return det;
  }
  auto it = std::min_element(list.candidates.begin(), list.candidates.end(),
                             [](const Candidate& a, const Candidate& b) {
                               return std::tie(a.pixel_distance, a.segment_id) <
                                      std::tie(b.pixel_distance, b.segment_id);
                             });
  if (it != list.candidates.end()) det.outcome = *it;
  return det;
}

TargetDetection detect_target(const SegmentIndex& index, const FaceObservation& face,
                              const DetectorConfig& config) {
  return config.mode == DetectionMode::ThreeD ? detect_target_3d(index, face, config)
                                              : detect_target_2d(index, face, config);
}

TargetDetection detect_target(const SceneInput& scene, const FaceObservation& face,
                              const DetectorConfig& config) {
  const SegmentIndex index(scene);
  return detect_target(index, face, config);
}

}  // namespace jointgaze
