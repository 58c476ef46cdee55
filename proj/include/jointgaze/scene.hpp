#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jointgaze/geometry.hpp"
#include "jointgaze/mask.hpp"

namespace jointgaze {

/// Inclusive-exclusive pixel rectangle [x0, x1) x [y0, y1).
struct PixelRect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

struct FaceObservation {
  int face_id = 0;
  Vec2 eye_center_px;
  double ear_to_ear_px = 0.0;
  GazeVector gaze{0.0, 0.0, 1.0};
  std::optional<PixelRect> face_bbox;

  friend bool operator==(const FaceObservation&, const FaceObservation&) = default;
};

/// Row-major metric depth raster, stored as 32-bit floats.
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> values;

  RasterSize size() const { return {width, height}; }
  float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
  friend bool operator==(const DepthMap&, const DepthMap&) = default;
};

struct SegmentProposal {
  int segment_id = 0;
  RleMask mask;
  std::optional<std::string> label;

  friend bool operator==(const SegmentProposal&, const SegmentProposal&) = default;
};

struct SceneInput {
  std::string scene_id;
  CameraModel camera;
  std::vector<FaceObservation> faces;
  DepthMap depth;
  std::vector<SegmentProposal> segments;

  RasterSize size() const { return {camera.width, camera.height}; }
  const SegmentProposal* find_segment(int segment_id) const;
  const FaceObservation* find_face(int face_id) const;
  friend bool operator==(const SceneInput&, const SceneInput&) = default;
};

struct Violation {
  std::string field;
  std::string rule;
};

/// Empty iff every data-model invariant holds.
std::vector<Violation> validate_scene(const SceneInput& scene);

/// Throws ValidationError carrying the first violation, prefixed with the scene id.
void require_valid(const SceneInput& scene);

/// Arithmetic mean (64-bit accumulation) of the depth under the mask.
/// Throws PreconditionError for an empty mask or out-of-range indices.
double region_mean_depth(const DepthMap& depth, const RleMask& mask);

/// Pixel containing a continuous coordinate, i.e. floor of each component.
inline int pixel_index_of(double coord) { return static_cast<int>(std::floor(coord)); }

/// Depth at the eye pixel, falling back to the bbox mean when that value is
/// not a positive finite number. Throws PreconditionError if neither works.
double face_depth(const SceneInput& scene, const FaceObservation& face);

}  // namespace jointgaze
