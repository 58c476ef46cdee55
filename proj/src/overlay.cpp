#include "jointgaze/overlay.hpp"

#include <cstdio>
#include <set>

#include "jointgaze/errors.hpp"

namespace jointgaze {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Far end of the ray e + t*d clipped to the image rectangle.
Vec2 ray_exit(Vec2 e, Vec2 d, int w, int h) {
  double t = 1e18;
  if (d.x > 0) t = std::min(t, (w - e.x) / d.x);
  if (d.x < 0) t = std::min(t, -e.x / d.x);
  if (d.y > 0) t = std::min(t, (h - e.y) / d.y);
  if (d.y < 0) t = std::min(t, -e.y / d.y);
  return e + t * d;
}

}  // namespace

std::string mask_outline_path(const RleMask& mask, RasterSize size) {
  const int w = size.width;
  const int h = size.height;
  const auto bits = mask.to_bitmap(size.pixel_count());
  auto on = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < w && y < h && bits[static_cast<std::size_t>(y) * w + x];
  };
  std::string path;
  // Horizontal edges, merged along rows.
  for (int y = 0; y <= h; ++y) {
    int start = -1;
    for (int x = 0; x <= w; ++x) {
      const bool edge = x < w && on(x, y) != on(x, y - 1);
      if (edge && start < 0) start = x;
      if (!edge && start >= 0) {
        path += "M" + std::to_string(start) + " " + std::to_string(y) + "H" + std::to_string(x);
        start = -1;
      }
    }
  }
  // Vertical edges, merged along columns.
  for (int x = 0; x <= w; ++x) {
    int start = -1;
    for (int y = 0; y <= h; ++y) {
      const bool edge = y < h && on(x, y) != on(x - 1, y);
      if (edge && start < 0) start = y;
      if (!edge && start >= 0) {
        path += "M" + std::to_string(x) + " " + std::to_string(start) + "V" + std::to_string(y);
        start = -1;
      }
    }
  }
  return path;
}

std::string render_overlay_svg(const SceneInput& scene, const SceneReport& report) {
  if (report.scene_id != scene.scene_id) {
    throw PreconditionError("report belongs to scene " + report.scene_id + ", not " + scene.scene_id);
  }
  std::set<int> scene_faces;
  for (const auto& f : scene.faces) scene_faces.insert(f.face_id);
  std::set<int> report_faces;
  for (const auto& d : report.detections) report_faces.insert(d.face_id);
  if (scene_faces != report_faces) throw PreconditionError("report faces do not match the scene");
  for (const auto& e : report.events) {
    if (!scene.find_segment(e.segment_id)) {
      throw PreconditionError("report event refers to unknown segment " + std::to_string(e.segment_id));
    }
  }

  const int w = scene.camera.width;
  const int h = scene.camera.height;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) + "\" height=\"" +
         std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) +
         "\" fill=\"white\"/>\n";
  for (const auto& seg : scene.segments) {
    svg += "<path class=\"segment\" data-segment=\"" + std::to_string(seg.segment_id) +
           "\" fill=\"none\" stroke=\"gray\" stroke-width=\"1\" d=\"" + mask_outline_path(seg.mask, scene.size()) +
           "\"/>\n";
  }
  for (const auto& e : report.events) {
    svg += "<path class=\"target\" data-segment=\"" + std::to_string(e.segment_id) +
           "\" fill=\"none\" stroke=\"green\" stroke-width=\"2\" d=\"" +
           mask_outline_path(scene.find_segment(e.segment_id)->mask, scene.size()) + "\"/>\n";
  }
  for (const auto& f : scene.faces) {
    const Vec2 e = f.eye_center_px;
    const auto dir = gaze_projection_2d(f.gaze);
    if (dir) {
      const Vec2 end = ray_exit(e, *dir, w, h);
      svg += "<line class=\"gaze\" data-face=\"" + std::to_string(f.face_id) + "\" x1=\"" + fmt(e.x) +
             "\" y1=\"" + fmt(e.y) + "\" x2=\"" + fmt(end.x) + "\" y2=\"" + fmt(end.y) +
             "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    } else {
      svg += "<circle class=\"gaze-dot\" data-face=\"" + std::to_string(f.face_id) + "\" cx=\"" + fmt(e.x) +
             "\" cy=\"" + fmt(e.y) + "\" r=\"3\" fill=\"red\"/>\n";
    }
  }
  for (std::size_t i = 0; i < report.captions.size(); ++i) {
    svg += "<text class=\"caption\" x=\"8\" y=\"" + std::to_string(20 + 18 * i) +
           "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"black\">" + escape_xml(report.captions[i]) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace jointgaze
