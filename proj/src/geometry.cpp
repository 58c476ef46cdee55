#include "jointgaze/geometry.hpp"

#include <algorithm>
#include <numbers>

#include "jointgaze/errors.hpp"

namespace jointgaze {

Vec3 Vec3::normalized() const {
  const double n = norm();
  return {x / n, y / n, z / n};
}

bool CameraModel::valid() const {
  return focal_px > 0.0 && std::isfinite(focal_px) && width >= 1 && height >= 1 &&
         principal_point.x >= 0.0 && principal_point.x < width && principal_point.y >= 0.0 &&
         principal_point.y < height;
}

GazeVector::GazeVector(double x, double y, double z) : v_{x, y, z} {
  if (!(std::abs(v_.norm() - 1.0) <= 1e-6)) {
    throw PreconditionError("gaze vector is not unit length");
  }
}

GazeVector GazeVector::from_direction(Vec3 v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw PreconditionError("gaze direction has zero length");
  }
  return GazeVector(Vec3{v.x / n, v.y / n, v.z / n});
}

PixelScale pixel_scale_at_face(double ear_to_ear_px, double face_width_m) {
  if (!(ear_to_ear_px > 0.0) || !std::isfinite(ear_to_ear_px)) {
    throw InvalidFaceError("ear-to-ear pixel distance must be positive");
  }
  if (!(face_width_m > 0.0)) {
    throw InvalidFaceError("face width must be positive");
  }
  return PixelScale{face_width_m / ear_to_ear_px};
}

std::optional<Vec2> gaze_projection_2d(const GazeVector& g) {
  const double n = std::hypot(g.x(), g.y());
  if (n < kEpsProjection) {
    return std::nullopt;
  }
  return Vec2{g.x() / n, g.y() / n};
}

double ray_depth_at_pixel(Vec2 eye_px, double face_depth_m, const GazeVector& g, PixelScale scale,
                          Vec2 point_px) {
  const auto dir = gaze_projection_2d(g);
  if (!dir) {
    throw PreconditionError("degenerate gaze projection");
  }
  const Vec2 offset = point_px - eye_px;
  if (!(offset.dot(*dir) > 0.0)) {
    throw PreconditionError("point is not in front of the eye along the gaze");
  }
  // Similar triangles on the dominant image axis; the minor axis is ignored.
  const bool use_x = std::abs(g.x()) >= std::abs(g.y());
  const double delta_px = use_x ? offset.x : offset.y;
  const double g_axis = use_x ? g.x() : g.y();
  const double delta_m = delta_px * scale.meters_per_pixel;
  return face_depth_m + delta_m * (g.z() / g_axis);
}

Vec2 project_world_point(const CameraModel& cam, Vec3 p) {
  if (!(p.z > 0.0)) {
    throw BehindCameraError("point is not in front of the camera");
  }
  return {cam.principal_point.x + cam.focal_px * p.x / p.z,
          cam.principal_point.y + cam.focal_px * p.y / p.z};
}

Vec3 unproject_pixel(const CameraModel& cam, Vec2 px, double z) {
  return {(px.x - cam.principal_point.x) * z / cam.focal_px,
          (px.y - cam.principal_point.y) * z / cam.focal_px, z};
}

double angular_error_deg(const GazeVector& a, const GazeVector& b) {
  // atan2 form of arccos(a.b); stays accurate near 0 and 180 degrees.
  const double s = a.vec().cross(b.vec()).norm();
  const double c = std::clamp(a.vec().dot(b.vec()), -1.0, 1.0);
  return std::atan2(s, c) * 180.0 / std::numbers::pi;
}

}  // namespace jointgaze
