#include "jointgaze/scene_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <set>

#include "json.hpp"
#include "jointgaze/errors.hpp"

namespace jointgaze {

using ojson = nlohmann::ordered_json;

namespace {

constexpr char kDepthMagic[4] = {'D', 'M', 'A', 'P'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[off + i]} << (8 * i);
  return v;
}

// Strict accessor helpers: every manifest key is required and typed.
const ojson& require_key(const ojson& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) {
    throw ParseError(where, "expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + "." + key, "missing key");
  }
  return *it;
}

void reject_unknown_keys(const ojson& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw ParseError(where + "." + it.key(), "unknown key");
  }
}

double get_number(const ojson& obj, const char* key, const std::string& where) {
  const ojson& v = require_key(obj, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key, "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const ojson& obj, const char* key, const std::string& where) {
  const ojson& v = require_key(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

int get_int32(const ojson& obj, const char* key, const std::string& where) {
  const std::int64_t v = get_integer(obj, key, where);
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(where + "." + key, "integer out of range");
  return static_cast<int>(v);
}

ojson rle_to_json(const RleMask& m) {
  ojson runs = ojson::array();
  for (const Run& r : m.runs()) runs.push_back(ojson::array({r.start, r.length}));
  return runs;
}

}  // namespace

std::vector<std::uint8_t> encode_depth(const DepthMap& depth) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + depth.values.size() * 4);
  out.insert(out.end(), std::begin(kDepthMagic), std::end(kDepthMagic));
  put_u32(out, static_cast<std::uint32_t>(depth.width));
  put_u32(out, static_cast<std::uint32_t>(depth.height));
  for (float v : depth.values) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

DepthMap decode_depth(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), kDepthMagic, 4) != 0) {
    throw ParseError("depth_file", "malformed depth header");
  }
  const std::uint32_t w = get_u32(bytes, 4);
  const std::uint32_t h = get_u32(bytes, 8);
  if (w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16)) {
    throw ParseError("depth_file", "malformed depth header");
  }
  const std::uint64_t n = std::uint64_t{w} * h;
  if (bytes.size() < 12 + n * 4) {
    throw ParseError("depth_file", "depth raster short");
  }
  if (bytes.size() > 12 + n * 4) {
    throw ParseError("depth_file", "depth raster has trailing bytes");
  }
  DepthMap d;
  d.width = static_cast<int>(w);
  d.height = static_cast<int>(h);
  d.values.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    d.values[i] = std::bit_cast<float>(get_u32(bytes, 12 + 4 * i));
  }
  return d;
}

SceneBundle serialize_scene(const SceneInput& scene) {
  return serialize_scene(scene, scene.scene_id + ".dmap");
}

SceneBundle serialize_scene(const SceneInput& scene, std::string depth_file) {
  ojson j;
  j["scene_id"] = scene.scene_id;
  j["camera"] = {{"focal_px", scene.camera.focal_px},
                 {"ppx", scene.camera.principal_point.x},
                 {"ppy", scene.camera.principal_point.y},
                 {"width", scene.camera.width},
                 {"height", scene.camera.height}};
  ojson faces = ojson::array();
  for (const auto& f : scene.faces) {
    ojson fj;
    fj["face_id"] = f.face_id;
    fj["eye_x"] = f.eye_center_px.x;
    fj["eye_y"] = f.eye_center_px.y;
    fj["ear_px"] = f.ear_to_ear_px;
    fj["gx"] = f.gaze.x();
    fj["gy"] = f.gaze.y();
    fj["gz"] = f.gaze.z();
    if (f.face_bbox) {
      fj["bbox"] = ojson::array({f.face_bbox->x0, f.face_bbox->y0, f.face_bbox->x1, f.face_bbox->y1});
    }
    faces.push_back(std::move(fj));
  }
  j["faces"] = std::move(faces);
  ojson segs = ojson::array();
  for (const auto& s : scene.segments) {
    ojson sj;
    sj["segment_id"] = s.segment_id;
    if (s.label) sj["label"] = *s.label;
    sj["rle"] = rle_to_json(s.mask);
    segs.push_back(std::move(sj));
  }
  j["segments"] = std::move(segs);
  j["depth_file"] = depth_file;

  SceneBundle b;
  b.manifest = j.dump(1) + "\n";
  b.depth_file = std::move(depth_file);
  b.depth_bytes = encode_depth(scene.depth);
  return b;
}

SceneInput parse_scene(std::string_view manifest, std::span<const std::uint8_t> depth_bytes) {
  ojson j;
  try {
    j = ojson::parse(manifest);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("manifest", std::string("malformed manifest: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("manifest", "malformed header");
  reject_unknown_keys(j, {"scene_id", "camera", "faces", "segments", "depth_file"}, "manifest");

  SceneInput s;
  const ojson& sid = require_key(j, "scene_id", "manifest");
  if (!sid.is_string()) throw ParseError("scene_id", "expected a string");
  s.scene_id = sid.get<std::string>();
  if (!require_key(j, "depth_file", "manifest").is_string()) {
    throw ParseError("depth_file", "expected a string");
  }

  const ojson& cj = require_key(j, "camera", "manifest");
  reject_unknown_keys(cj, {"focal_px", "ppx", "ppy", "width", "height"}, "camera");
  s.camera.focal_px = get_number(cj, "focal_px", "camera");
  s.camera.principal_point = {get_number(cj, "ppx", "camera"), get_number(cj, "ppy", "camera")};
  s.camera.width = get_int32(cj, "width", "camera");
  s.camera.height = get_int32(cj, "height", "camera");
  if (!s.camera.valid()) throw ParseError("camera", "invalid camera");

  const ojson& fj = require_key(j, "faces", "manifest");
  if (!fj.is_array()) throw ParseError("faces", "expected an array");
  std::set<int> face_ids;
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const std::string where = "faces[" + std::to_string(i) + "]";
    const ojson& f = fj[i];
    if (!f.is_object()) throw ParseError(where, "expected an object");
    reject_unknown_keys(f, {"face_id", "eye_x", "eye_y", "ear_px", "gx", "gy", "gz", "bbox"}, where);
    FaceObservation face;
    face.face_id = get_int32(f, "face_id", where);
    if (!face_ids.insert(face.face_id).second) throw ParseError(where + ".face_id", "duplicate face id");
    face.eye_center_px = {get_number(f, "eye_x", where), get_number(f, "eye_y", where)};
    face.ear_to_ear_px = get_number(f, "ear_px", where);
    try {
      face.gaze = GazeVector(get_number(f, "gx", where), get_number(f, "gy", where),
                             get_number(f, "gz", where));
    } catch (const PreconditionError&) {
      throw ParseError(where + ".gaze", "gaze vector not unit length");
    }
    if (f.contains("bbox")) {
      const ojson& b = f["bbox"];
      if (!b.is_array() || b.size() != 4 ||
          !std::all_of(b.begin(), b.end(), [](const ojson& v) { return v.is_number_integer(); })) {
        throw ParseError(where + ".bbox", "expected [x0, y0, x1, y1]");
      }
      face.face_bbox = PixelRect{b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
    }
    s.faces.push_back(std::move(face));
  }

  const ojson& sj = require_key(j, "segments", "manifest");
  if (!sj.is_array()) throw ParseError("segments", "expected an array");
  std::set<int> seg_ids;
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string where = "segments[" + std::to_string(i) + "]";
    const ojson& g = sj[i];
    if (!g.is_object()) throw ParseError(where, "expected an object");
    reject_unknown_keys(g, {"segment_id", "label", "rle"}, where);
    SegmentProposal seg;
    seg.segment_id = get_int32(g, "segment_id", where);
    if (!seg_ids.insert(seg.segment_id).second) {
      throw ParseError(where + ".segment_id", "duplicate segment id");
    }
    if (g.contains("label")) {
      if (!g["label"].is_string()) throw ParseError(where + ".label", "expected a string");
      seg.label = g["label"].get<std::string>();
    }
    const ojson& rj = require_key(g, "rle", where);
    if (!rj.is_array()) throw ParseError(where + ".rle", "expected an array of runs");
    std::vector<Run> runs;
    for (const ojson& r : rj) {
      if (!r.is_array() || r.size() != 2 || !r[0].is_number_unsigned() || !r[1].is_number_unsigned() ||
          r[0].get<std::uint64_t>() > UINT32_MAX || r[1].get<std::uint64_t>() > UINT32_MAX) {
        throw ParseError(where + ".rle", "expected [start, length] runs");
      }
      runs.push_back({r[0].get<std::uint32_t>(), r[1].get<std::uint32_t>()});
    }
    try {
      seg.mask = RleMask::from_runs(std::move(runs));
    } catch (const PreconditionError&) {
      throw ParseError(where + ".rle", "overlapping RLE runs");
    }
    if (seg.mask.empty()) throw ParseError(where + ".rle", "empty mask");
    if (seg.mask.extent() > s.size().pixel_count()) {
      throw ParseError(where + ".rle", "RLE index out of range");
    }
    s.segments.push_back(std::move(seg));
  }

  s.depth = decode_depth(depth_bytes);
  if (s.depth.width != s.camera.width || s.depth.height != s.camera.height) {
    throw ParseError("depth_file", "dimension mismatch");
  }
  for (std::size_t i = 0; i < s.depth.values.size(); ++i) {
    const float v = s.depth.values[i];
    if (!(v > 0.0f) || !std::isfinite(v)) {
      throw ParseError("depth[" + std::to_string(i) + "]", "non-positive depth");
    }
  }

  const auto violations = validate_scene(s);
  if (!violations.empty()) {
    throw ParseError(violations.front().field, violations.front().rule);
  }
  return s;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

std::string read_file_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

SceneInput load_scene_bundle(const std::filesystem::path& manifest_path) {
  const std::string text = read_file_text(manifest_path);
  std::string depth_name;
  try {
    const auto j = ojson::parse(text);
    if (j.is_object() && j.contains("depth_file") && j["depth_file"].is_string()) {
      depth_name = j["depth_file"].get<std::string>();
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("manifest", std::string("malformed manifest: ") + e.what());
  }
  if (depth_name.empty()) throw ParseError("depth_file", "missing key");
  const auto depth = read_file_bytes(manifest_path.parent_path() / depth_name);
  return parse_scene(text, depth);
}

std::filesystem::path save_scene_bundle(const SceneInput& scene, const std::filesystem::path& dir) {
  const SceneBundle b = serialize_scene(scene);
  write_file_atomic(dir / b.depth_file, b.depth_bytes);
  const auto manifest_path = dir / (scene.scene_id + ".json");
  write_file_atomic(manifest_path, b.manifest);
  return manifest_path;
}

}  // namespace jointgaze
