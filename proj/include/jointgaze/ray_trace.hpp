#pragma once

#include <vector>

#include "jointgaze/scene.hpp"

namespace jointgaze {

/// Half-width, in pixels, of the corridor around the projected gaze line.
inline constexpr double kCorridorHalfWidthPx = 0.75;

struct RayHit {
  int segment_id = 0;
  /// Integer pixel (column, row) of the hit; its center is hit_px + 0.5.
  int hit_x = 0;
  int hit_y = 0;
  /// Euclidean distance from the eye to the hit pixel's center.
  double pixel_distance = 0.0;

  Vec2 hit_center() const { return {hit_x + 0.5, hit_y + 0.5}; }
  friend bool operator==(const RayHit&, const RayHit&) = default;
};

/// Pixel -> segment lookup for one scene (segments may overlap).
class SegmentIndex {
 public:
  explicit SegmentIndex(const SceneInput& scene);

  /// Indices into scene.segments covering `pixel`.
  std::span<const int> at(std::size_t pixel) const {
    return {members_.data() + offsets_[pixel], members_.data() + offsets_[pixel + 1]};
  }
  const SceneInput& scene() const { return *scene_; }

 private:
  const SceneInput* scene_;
  std::vector<std::uint32_t> offsets_;
  std::vector<int> members_;
};

/// Column-stepping DDA along `dir2` from `eye_px`. Each step advances one pixel
/// on the dominant axis and visits every pixel whose center is within the
/// corridor and strictly in front of the eye. Per segment the hit is the
/// visited pixel with the smallest forward projection. Segments whose mask
/// contains the eye pixel are skipped. Sorted by distance, then segment id.
std::vector<RayHit> trace_ray_hits(const SegmentIndex& index, Vec2 eye_px, Vec2 dir2);
std::vector<RayHit> trace_ray_hits(const SceneInput& scene, Vec2 eye_px, Vec2 dir2);

}  // namespace jointgaze
