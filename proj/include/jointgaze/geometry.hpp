#pragma once

#include <array>
#include <cmath>
#include <optional>

namespace jointgaze {

/// Average adult face width used to convert ear-to-ear pixels to meters.
inline constexpr double kFaceWidthM = 0.15;
/// Below this planar norm a gaze vector is treated as pointing along the optical axis.
inline constexpr double kEpsProjection = 1e-3;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
  double dot(Vec3 o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(Vec3 o) const { return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x}; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const;
};

/// Pinhole camera. Frame: X right, Y down, Z forward. Pixel (c, r) covers
/// [c, c+1) x [r, r+1); its center is (c + 0.5, r + 0.5).
struct CameraModel {
  double focal_px = 500.0;
  Vec2 principal_point{320.0, 240.0};
  int width = 640;
  int height = 480;

  friend bool operator==(const CameraModel&, const CameraModel&) = default;
  bool valid() const;
};

/// Unit 3D gaze direction in camera coordinates.
class GazeVector {
 public:
  /// Throws PreconditionError when (x, y, z) is not unit length within 1e-6.
  GazeVector(double x, double y, double z);
  /// Normalizes `v`; throws PreconditionError for a zero vector.
  static GazeVector from_direction(Vec3 v);

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  Vec3 vec() const { return v_; }

  friend bool operator==(const GazeVector&, const GazeVector&) = default;

 private:
  explicit GazeVector(Vec3 v) : v_(v) {}
  Vec3 v_;
};

/// Meters spanned by one pixel at the owning face's depth.
struct PixelScale {
  double meters_per_pixel = 0.0;
};

/// FACE_WIDTH / ear_to_ear_px. Throws InvalidFaceError unless ear_to_ear_px > 0.
PixelScale pixel_scale_at_face(double ear_to_ear_px, double face_width_m = kFaceWidthM);

/// (gx, gy) normalized, or nullopt when the planar norm is below kEpsProjection.
std::optional<Vec2> gaze_projection_2d(const GazeVector& g);

/// Depth along the 3D gaze ray at `point_px`, from the dominant-axis
/// pixel offset to the eye: face_depth + offset_m * (gz / g_axis).
/// Throws PreconditionError for a degenerate gaze or a point not in front of the eye.
double ray_depth_at_pixel(Vec2 eye_px, double face_depth_m, const GazeVector& g, PixelScale scale,
                          Vec2 point_px);

/// Perspective projection. Throws BehindCameraError when p.z <= 0.
Vec2 project_world_point(const CameraModel& cam, Vec3 p);

/// Back-projects a pixel coordinate to the point at depth z.
Vec3 unproject_pixel(const CameraModel& cam, Vec2 px, double z);

/// Angle between two unit vectors in degrees, in [0, 180].
double angular_error_deg(const GazeVector& a, const GazeVector& b);

}  // namespace jointgaze
