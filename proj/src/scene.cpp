#include "jointgaze/scene.hpp"

#include <cmath>
#include <set>

#include "jointgaze/errors.hpp"

namespace jointgaze {

const SegmentProposal* SceneInput::find_segment(int segment_id) const {
  for (const auto& s : segments) {
    if (s.segment_id == segment_id) return &s;
  }
  return nullptr;
}

const FaceObservation* SceneInput::find_face(int face_id) const {
  for (const auto& f : faces) {
    if (f.face_id == face_id) return &f;
  }
  return nullptr;
}

std::vector<Violation> validate_scene(const SceneInput& scene) {
  std::vector<Violation> out;
  const CameraModel& cam = scene.camera;
  if (!(cam.focal_px > 0.0) || !std::isfinite(cam.focal_px)) {
    out.push_back({"camera.focal_px", "must be positive"});
  }
  if (cam.width < 1 || cam.height < 1) {
    out.push_back({"camera.width/height", "must be at least 1"});
  } else if (!(cam.principal_point.x >= 0.0 && cam.principal_point.x < cam.width &&
               cam.principal_point.y >= 0.0 && cam.principal_point.y < cam.height)) {
    out.push_back({"camera.principal_point", "must lie inside the image"});
  }

  if (scene.faces.empty()) {
    out.push_back({"faces", "at least one face required"});
  }
  std::set<int> face_ids;
  for (std::size_t i = 0; i < scene.faces.size(); ++i) {
    const auto& f = scene.faces[i];
    const std::string where = "faces[" + std::to_string(i) + "]";
    if (!face_ids.insert(f.face_id).second) {
      out.push_back({where + ".face_id", "duplicate face id"});
    }
    if (!(f.eye_center_px.x >= 0.0 && f.eye_center_px.x < cam.width &&
          f.eye_center_px.y >= 0.0 && f.eye_center_px.y < cam.height)) {
      out.push_back({where + ".eye_center", "must lie inside the image"});
    }
    if (!(f.ear_to_ear_px > 0.0) || !std::isfinite(f.ear_to_ear_px)) {
      out.push_back({where + ".ear_px", "must be positive"});
    }
    if (!(std::abs(f.gaze.vec().norm() - 1.0) <= 1e-6)) {
      out.push_back({where + ".gaze", "must be unit length"});
    }
  }

  const DepthMap& d = scene.depth;
  if (d.width != cam.width || d.height != cam.height) {
    out.push_back({"depth", "dimensions must match the camera"});
  } else if (d.values.size() != d.size().pixel_count()) {
    out.push_back({"depth", "raster size does not match dimensions"});
  } else {
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      if (!(d.values[i] > 0.0f) || !std::isfinite(d.values[i])) {
        out.push_back({"depth[" + std::to_string(i) + "]", "must be positive and finite"});
        break;
      }
    }
  }

  std::set<int> seg_ids;
  const std::uint64_t n_px = scene.size().pixel_count();
  for (std::size_t i = 0; i < scene.segments.size(); ++i) {
    const auto& s = scene.segments[i];
    const std::string where = "segments[" + std::to_string(i) + "]";
    if (!seg_ids.insert(s.segment_id).second) {
      out.push_back({where + ".segment_id", "duplicate segment id"});
    }
    if (s.mask.empty()) {
      out.push_back({where + ".rle", "mask must be non-empty"});
    } else if (s.mask.extent() > n_px) {
      out.push_back({where + ".rle", "pixel index out of range"});
    }
  }
  return out;
}

void require_valid(const SceneInput& scene) {
  const auto v = validate_scene(scene);
  if (!v.empty()) {
    throw ValidationError("scene " + scene.scene_id + ": " + v.front().field + ": " +
                          v.front().rule);
  }
}

double region_mean_depth(const DepthMap& depth, const RleMask& mask) {
  if (mask.empty()) {
    throw PreconditionError("region mean depth of an empty mask");
  }
  if (mask.extent() > depth.values.size()) {
    throw PreconditionError("mask index outside the depth raster");
  }
  double sum = 0.0;
  for (const Run& r : mask.runs()) {
    for (std::uint64_t i = r.start; i < r.end(); ++i) sum += depth.values[i];
  }
  return sum / static_cast<double>(mask.area());
}

double face_depth(const SceneInput& scene, const FaceObservation& face) {
  const DepthMap& d = scene.depth;
  const int x = pixel_index_of(face.eye_center_px.x);
  const int y = pixel_index_of(face.eye_center_px.y);
  if (x >= 0 && x < d.width && y >= 0 && y < d.height) {
    const double v = d.at(x, y);
    if (v > 0.0 && std::isfinite(v)) return v;
  }
  if (face.face_bbox) {
    const PixelRect& b = *face.face_bbox;
    double sum = 0.0;
    std::size_t n = 0;
    for (int yy = std::max(0, b.y0); yy < std::min(d.height, b.y1); ++yy) {
      for (int xx = std::max(0, b.x0); xx < std::min(d.width, b.x1); ++xx) {
        const double v = d.at(xx, yy);
        if (v > 0.0 && std::isfinite(v)) {
          sum += v;
          ++n;
        }
      }
    }
    if (n > 0) return sum / static_cast<double>(n);
  }
  throw PreconditionError("no usable depth at face " + std::to_string(face.face_id));
}

}  // namespace jointgaze
