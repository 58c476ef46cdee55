#include "jointgaze/ray_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "jointgaze/errors.hpp"

namespace jointgaze {

SegmentIndex::SegmentIndex(const SceneInput& scene) : scene_(&scene) {
  const std::size_t n = scene.size().pixel_count();
  std::vector<std::uint32_t> counts(n + 1, 0);
  for (const auto& seg : scene.segments) {
    for (const Run& r : seg.mask.runs()) {
      const std::uint64_t end = std::min<std::uint64_t>(r.end(), n);
      for (std::uint64_t i = r.start; i < end; ++i) ++counts[i + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];
  offsets_ = counts;
  members_.resize(offsets_[n]);
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t s = 0; s < scene.segments.size(); ++s) {
    for (const Run& r : scene.segments[s].mask.runs()) {
      const std::uint64_t end = std::min<std::uint64_t>(r.end(), n);
      for (std::uint64_t i = r.start; i < end; ++i) members_[cursor[i]++] = static_cast<int>(s);
    }
  }
}

std::vector<RayHit> trace_ray_hits(const SegmentIndex& index, Vec2 eye_px, Vec2 dir2) {
  const SceneInput& scene = index.scene();
  const int w = scene.camera.width;
  const int h = scene.camera.height;
  if (!(std::abs(dir2.norm() - 1.0) <= 1e-6)) {
    throw PreconditionError("ray direction must be unit length");
  }
  const int eye_x = pixel_index_of(eye_px.x);
  const int eye_y = pixel_index_of(eye_px.y);
  if (eye_x < 0 || eye_x >= w || eye_y < 0 || eye_y >= h) {
    throw PreconditionError("eye center outside the image");
  }

  std::vector<char> excluded(scene.segments.size(), 0);
  for (int s : index.at(static_cast<std::size_t>(eye_y) * w + eye_x)) excluded[s] = 1;

  struct Best {
    double t = std::numeric_limits<double>::infinity();
    int x = 0;
    int y = 0;
  };
  std::vector<Best> best(scene.segments.size());

  const bool x_major = std::abs(dir2.x) >= std::abs(dir2.y);
  const double d_major = x_major ? dir2.x : dir2.y;
  const double d_minor = x_major ? dir2.y : dir2.x;
  const double e_major = x_major ? eye_px.x : eye_px.y;
  const double e_minor = x_major ? eye_px.y : eye_px.x;
  const int n_major = x_major ? w : h;
  const int n_minor = x_major ? h : w;
  const int step = d_major > 0 ? 1 : -1;
  // Minor-axis half extent of the corridor measured along a column.
  const double half = kCorridorHalfWidthPx / std::abs(d_major) + 1.0;

  auto visit = [&](int px, int py) {
    const Vec2 off{px + 0.5 - eye_px.x, py + 0.5 - eye_px.y};
    const double t = off.dot(dir2);
    if (!(t > 0.0) || std::abs(off.cross(dir2)) > kCorridorHalfWidthPx) return;
    for (int s : index.at(static_cast<std::size_t>(py) * w + px)) {
      if (excluded[s]) continue;
      Best& b = best[s];
      if (t < b.t) b = {t, px, py};
    }
  };

  // Start one column behind the eye: corridor pixels there can still be in front.
  int col = pixel_index_of(e_major) - step;
  if (col < 0 || col >= n_major) col += step;
  for (; col >= 0 && col < n_major; col += step) {
    const double c = col + 0.5;
    const double line_minor = e_minor + (c - e_major) * d_minor / d_major;
    const int lo = std::max(0, pixel_index_of(line_minor - half));
    const int hi = std::min(n_minor - 1, pixel_index_of(line_minor + half));
    for (int m = lo; m <= hi; ++m) {
      if (x_major) {
        visit(col, m);
      } else {
        visit(m, col);
      }
    }
  }

  std::vector<RayHit> hits;
  for (std::size_t s = 0; s < best.size(); ++s) {
    if (!std::isfinite(best[s].t)) continue;
    RayHit hit;
    hit.segment_id = scene.segments[s].segment_id;
    hit.hit_x = best[s].x;
    hit.hit_y = best[s].y;
    hit.pixel_distance = (hit.hit_center() - eye_px).norm();
    hits.push_back(hit);
  }
  std::sort(hits.begin(), hits.end(), [](const RayHit& a, const RayHit& b) {
    if (a.pixel_distance != b.pixel_distance) return a.pixel_distance < b.pixel_distance;
    return a.segment_id < b.segment_id;
  });
  return hits;
}

std::vector<RayHit> trace_ray_hits(const SceneInput& scene, Vec2 eye_px, Vec2 dir2) {
  const SegmentIndex index(scene);
  return trace_ray_hits(index, eye_px, dir2);
}

}  // namespace jointgaze
