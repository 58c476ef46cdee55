#include "jointgaze/noise.hpp"

#include <cmath>
#include <numbers>

#include "jointgaze/errors.hpp"
#include "jointgaze/random.hpp"

namespace jointgaze {

namespace {
constexpr float kMinDepthM = 1e-3f;
}

GazeVector rotate_gaze(const GazeVector& g, double angle_rad, double phi_rad) {
  const Vec3 v = g.vec();
  // Tangent basis: cross with the least-aligned coordinate axis.
  const Vec3 ref = std::abs(v.x) <= std::abs(v.y) && std::abs(v.x) <= std::abs(v.z) ? Vec3{1, 0, 0}
                   : std::abs(v.y) <= std::abs(v.z)                                  ? Vec3{0, 1, 0}
                                                                                     : Vec3{0, 0, 1};
  const Vec3 u = v.cross(ref).normalized();
  const Vec3 w = v.cross(u);
  const Vec3 axis = std::cos(phi_rad) * u + std::sin(phi_rad) * w;
  // Rodrigues with axis orthogonal to v.
  const Vec3 rotated = std::cos(angle_rad) * v + std::sin(angle_rad) * axis.cross(v);
  return GazeVector::from_direction(rotated);
}

SceneInput apply_noise(const SceneInput& scene, const NoiseSpec& noise) {
  if (!(noise.gaze_sigma_deg >= 0.0) || !(noise.depth_sigma_m >= 0.0) || noise.mask_jitter_px < 0) {
    throw PreconditionError("noise magnitudes must be non-negative");
  }
  SceneInput out = scene;

  if (noise.gaze_sigma_deg > 0.0) {
    Rng rng(derive_seed(noise.seed, 1));
    const double sigma = noise.gaze_sigma_deg * std::numbers::pi / 180.0;
    for (auto& face : out.faces) {
      const double angle = std::abs(rng.normal()) * sigma;
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      face.gaze = rotate_gaze(face.gaze, angle, phi);
    }
  }

  if (noise.depth_sigma_m > 0.0) {
    Rng rng(derive_seed(noise.seed, 2));
    for (float& v : out.depth.values) {
      const double noisy = v + noise.depth_sigma_m * rng.normal();
      v = std::max(kMinDepthM, static_cast<float>(noisy));
    }
  }

  if (noise.mask_jitter_px > 0) {
    Rng rng(derive_seed(noise.seed, 3));
    for (auto& seg : out.segments) {
      const int radius = rng.uniform_int(-noise.mask_jitter_px, noise.mask_jitter_px);
      RleMask m = morph_square(seg.mask, out.size(), radius);
      if (!m.empty()) seg.mask = std::move(m);
    }
  }
  return out;
}

}  // namespace jointgaze
