#pragma once

#include <cstdint>

#include "jointgaze/scene.hpp"

namespace jointgaze {

struct NoiseSpec {
  double gaze_sigma_deg = 0.0;
  double depth_sigma_m = 0.0;
  int mask_jitter_px = 0;
  std::uint64_t seed = 0;
};

/// Rotates a unit vector by `angle_rad` about the axis orthogonal to it at
/// azimuth `phi_rad` in a fixed tangent basis.
GazeVector rotate_gaze(const GazeVector& g, double angle_rad, double phi_rad);

/// Perturbs a scene:
///  - each gaze is rotated by |N(0, gaze_sigma)| about a uniformly random
///    axis orthogonal to it;
///  - each depth value gets i.i.d. N(0, depth_sigma), clamped to stay positive;
///  - each mask is dilated or eroded by a uniform radius in
///    [-mask_jitter_px, mask_jitter_px] (erosions that would empty it are skipped).
/// Gaze, depth and mask draws use independent streams so changing one sigma
/// leaves the others' draws untouched. Zero sigmas leave the scene unchanged.
SceneInput apply_noise(const SceneInput& scene, const NoiseSpec& noise);

}  // namespace jointgaze
