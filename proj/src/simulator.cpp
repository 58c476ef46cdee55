#include "jointgaze/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "jointgaze/errors.hpp"
#include "jointgaze/random.hpp"

namespace jointgaze {

namespace {

// Admissibility slack: pixels added around rectangles and along the gaze line
// to cover rasterization, and meters kept clear of the tolerance boundary.
constexpr double kEdgeSlackPx = 1.5;
constexpr double kAlongSlackPx = 1.0;
constexpr double kDepthMarginM = 0.05;
constexpr double kMinDominantAxis = 0.1;
constexpr double kSamplerMinDominantAxis = 0.3;

struct Rect {
  double x0, y0, x1, y1;

  Rect grown(double m) const { return {x0 - m, y0 - m, x1 + m, y1 + m}; }
  bool overlaps(const Rect& o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
};

struct Board {
  int segment_id = 0;
  std::optional<std::string> label;
  Vec3 center;
  double width_m = 0.0;
  double height_m = 0.0;
  bool is_head = false;
  int owner_id = 0;
  Rect rect{};
};

Rect project_rect(const CameraModel& cam, Vec3 center, double w, double h) {
  const Vec2 c = project_world_point(cam, center);
  const double hw = cam.focal_px * w / (2.0 * center.z);
  const double hh = cam.focal_px * h / (2.0 * center.z);
  return {c.x - hw, c.y - hh, c.x + hw, c.y + hh};
}

bool inside_image(const CameraModel& cam, const Rect& r) {
  return r.x0 >= 0.0 && r.y0 >= 0.0 && r.x1 <= cam.width && r.y1 <= cam.height;
}

std::vector<Board> collect_boards(const WorldSpec& world, const RenderOptions& opt) {
  std::vector<Board> boards;
  for (const auto& o : world.objects) {
    Board b;
    b.segment_id = o.object_id;
    if (!o.label.empty()) b.label = o.label;
    b.center = o.center;
    b.width_m = o.width_m;
    b.height_m = o.height_m;
    b.owner_id = o.object_id;
    boards.push_back(b);
  }
  for (const auto& a : world.agents) {
    Board b;
    b.segment_id = opt.head_segment_base + a.agent_id;
    b.label = "person " + std::to_string(a.agent_id);
    b.center = a.head_center;
    b.width_m = opt.face_width_m;
    b.height_m = opt.face_height_m;
    b.is_head = true;
    b.owner_id = a.agent_id;
    boards.push_back(b);
  }
  return boards;
}

void validate_world(const WorldSpec& world, const RenderOptions& opt, std::vector<Board>& boards) {
  if (!world.camera.valid()) throw PreconditionError("invalid camera");
  if (!(world.background_depth_m > 0.0)) throw PreconditionError("background depth must be positive");
  if (!(opt.face_width_m > 0.0 && opt.face_height_m > 0.0)) {
    throw PreconditionError("face billboard size must be positive");
  }
  std::set<int> seg_ids;
  std::set<int> agent_ids;
  for (const auto& a : world.agents) {
    if (!agent_ids.insert(a.agent_id).second) throw PreconditionError("duplicate agent id");
    if (a.target_object.has_value() == a.free_gaze.has_value()) {
      throw PreconditionError("agent " + std::to_string(a.agent_id) + " needs exactly one target");
    }
    if (a.target_object && !world.find_object(*a.target_object)) {
      throw PreconditionError("agent " + std::to_string(a.agent_id) + " targets an unknown object");
    }
  }
  for (auto& b : boards) {
    if (!seg_ids.insert(b.segment_id).second) throw PreconditionError("duplicate billboard id");
    if (!(b.center.z > 0.0) || !(b.width_m > 0.0) || !(b.height_m > 0.0)) {
      throw PreconditionError("billboards need positive depth and size");
    }
    b.rect = project_rect(world.camera, b.center, b.width_m, b.height_m);
    if (!inside_image(world.camera, b.rect)) {
      throw PreconditionError(std::string(b.is_head ? "agent head " : "object ") +
                              std::to_string(b.owner_id) + " projects outside the image");
    }
  }
}

// Pixel columns [first, last) whose centers fall in [lo, hi).
std::pair<int, int> pixel_span(double lo, double hi, int limit) {
  const int first = std::max(0, static_cast<int>(std::ceil(lo - 0.5)));
  const int last = std::min(limit, static_cast<int>(std::ceil(hi - 0.5)));
  return {first, last};
}

Vec3 gaze_direction(const WorldSpec& world, const WorldAgent& a) {
  if (a.target_object) return world.find_object(*a.target_object)->center - a.head_center;
  return *a.free_gaze;
}

// Whether the open 3D segment head->target passes through billboard b.
bool segment_blocked(Vec3 head, Vec3 target, const Board& b) {
  const double z0 = head.z;
  const double z1 = target.z;
  if (z0 == z1) return false;
  const double t = (b.center.z - z0) / (z1 - z0);
  if (!(t > 0.0 && t < 1.0)) return false;
  const Vec3 p = head + t * (target - head);
  return std::abs(p.x - b.center.x) <= b.width_m / 2 && std::abs(p.y - b.center.y) <= b.height_m / 2;
}

// Parameter interval [s_in, s_out] of the line e + s*d inside rect r.
std::optional<std::pair<double, double>> clip_line(Vec2 e, Vec2 d, const Rect& r) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const std::array<std::array<double, 3>, 2> slabs = {{{e.x, d.x, 0}, {e.y, d.y, 1}}};
  for (const auto& [p, v, axis] : slabs) {
    const double a = axis == 0 ? r.x0 : r.y0;
    const double b = axis == 0 ? r.x1 : r.y1;
    if (std::abs(v) < 1e-15) {
      if (p < a || p > b) return std::nullopt;
      continue;
    }
    double t0 = (a - p) / v;
    double t1 = (b - p) / v;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

// Weak-perspective gaze geometry of one agent, as seen by the detector.
struct GazeLine {
  Vec2 eye;
  Vec2 dir;
  bool use_x = true;
  double z0 = 0.0;
  double depth_per_px = 0.0;

  double depth_at_s(double s) const {
    const double along = use_x ? s * dir.x : s * dir.y;
    return z0 + along * depth_per_px;
  }
  // Residual range of a constant-depth board over s in [s0, s1], padded by
  // kAlongSlackPx in the dominant coordinate.
  std::pair<double, double> residual_range(double z, double s0, double s1) const {
    const double dom = std::abs(use_x ? dir.x : dir.y);
    const double pad = kAlongSlackPx / dom;
    const double r0 = depth_at_s(s0 - pad) - z;
    const double r1 = depth_at_s(s1 + pad) - z;
    const double lo = (r0 > 0) == (r1 > 0) ? std::min(std::abs(r0), std::abs(r1)) : 0.0;
    return {lo, std::max(std::abs(r0), std::abs(r1))};
  }
};

std::optional<GazeLine> make_gaze_line(const WorldSpec& world, const WorldAgent& a,
                                       const RenderOptions& opt) {
  const Vec3 dir3 = gaze_direction(world, a);
  if (!(dir3.norm() > 0.0)) return std::nullopt;
  const GazeVector g = GazeVector::from_direction(dir3);
  if (std::max(std::abs(g.x()), std::abs(g.y())) < kMinDominantAxis) return std::nullopt;
  const auto dir = gaze_projection_2d(g);
  if (!dir) return std::nullopt;
  GazeLine line;
  line.eye = project_world_point(world.camera, a.head_center);
  line.dir = *dir;
  line.use_x = std::abs(g.x()) >= std::abs(g.y());
  line.z0 = a.head_center.z;
  const double ear_px = world.camera.focal_px * opt.face_width_m / line.z0;
  const double mpp = pixel_scale_at_face(ear_px, opt.face_width_m).meters_per_pixel;
  line.depth_per_px = mpp * g.z() / (line.use_x ? g.x() : g.y());
  return line;
}

bool agent_admissible(const WorldSpec& world, const WorldAgent& a, const std::vector<Board>& boards,
                      double tol, const RenderOptions& opt) {
  if (!a.target_object) return true;
  const auto line = make_gaze_line(world, a, opt);
  if (!line) return false;

  const Board* target = nullptr;
  for (const auto& b : boards) {
    if (!b.is_head && b.owner_id == *a.target_object) target = &b;
  }
  const auto strict = clip_line(line->eye, line->dir, target->rect.grown(-kEdgeSlackPx));
  const auto loose = clip_line(line->eye, line->dir, target->rect.grown(kEdgeSlackPx));
  if (!strict || !loose || strict->first <= kEdgeSlackPx) return false;
  const double t_in_early = std::max(loose->first, 0.0);
  const double t_in_late = strict->first;
  if (line->residual_range(target->center.z, t_in_early, t_in_late).second > tol - kDepthMarginM) {
    return false;
  }

  for (const auto& b : boards) {
    if (&b == target || (b.is_head && b.owner_id == a.agent_id)) continue;
    const auto clip = clip_line(line->eye, line->dir, b.rect.grown(kEdgeSlackPx));
    if (!clip || clip->second <= 0.0) continue;
    const double s_in = std::max(clip->first, 0.0);
    if (s_in - kEdgeSlackPx > t_in_late + kEdgeSlackPx) continue;
    if (line->residual_range(b.center.z, s_in, clip->second).first < tol + kDepthMarginM) return false;
  }
  return true;
}

// No billboard other than the agent's own head reaches the projected line
// before the target does.
bool projected_path_clear(const WorldSpec& world, const WorldAgent& a, const std::vector<Board>& boards,
                          const RenderOptions& opt) {
  if (!a.target_object) return true;
  const auto line = make_gaze_line(world, a, opt);
  if (!line) return false;
  const Board* target = nullptr;
  for (const auto& b : boards) {
    if (!b.is_head && b.owner_id == *a.target_object) target = &b;
  }
  const auto strict = clip_line(line->eye, line->dir, target->rect.grown(-kEdgeSlackPx));
  if (!strict) return false;
  for (const auto& b : boards) {
    if (&b == target || (b.is_head && b.owner_id == a.agent_id)) continue;
    const auto clip = clip_line(line->eye, line->dir, b.rect.grown(kEdgeSlackPx));
    if (!clip || clip->second <= 0.0) continue;
    if (std::max(clip->first, 0.0) - kEdgeSlackPx <= strict->first + kEdgeSlackPx) return false;
  }
  return true;
}

}  // namespace

const WorldObject* WorldSpec::find_object(int object_id) const {
  for (const auto& o : objects) {
    if (o.object_id == object_id) return &o;
  }
  return nullptr;
}

std::set<int> GroundTruth::participants() const {
  std::set<int> out;
  for (const auto& e : events) out.insert(e.participants.begin(), e.participants.end());
  return out;
}

RenderedScene render_world(const WorldSpec& world, const RenderOptions& options) {
  std::vector<Board> boards = collect_boards(world, options);
  validate_world(world, options, boards);

  const CameraModel& cam = world.camera;
  const std::size_t n_px = static_cast<std::size_t>(cam.width) * cam.height;
  std::vector<float> depth(n_px, static_cast<float>(world.background_depth_m));
  std::vector<double> zbuf(n_px, world.background_depth_m);
  std::vector<int> owner(n_px, -1);
  for (std::size_t bi = 0; bi < boards.size(); ++bi) {
    const Board& b = boards[bi];
    const auto [cx0, cx1] = pixel_span(b.rect.x0, b.rect.x1, cam.width);
    const auto [cy0, cy1] = pixel_span(b.rect.y0, b.rect.y1, cam.height);
    for (int y = cy0; y < cy1; ++y) {
      for (int x = cx0; x < cx1; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * cam.width + x;
        // Strictly nearer wins; earlier billboards keep ties.
        if (b.center.z < zbuf[i] || (owner[i] < 0 && b.center.z <= zbuf[i])) {
          zbuf[i] = b.center.z;
          owner[i] = static_cast<int>(bi);
          depth[i] = static_cast<float>(b.center.z);
        }
      }
    }
  }

  std::vector<std::vector<std::uint32_t>> visible(boards.size());
  for (std::size_t i = 0; i < n_px; ++i) {
    if (owner[i] >= 0) visible[owner[i]].push_back(static_cast<std::uint32_t>(i));
  }
  auto owner_at = [&](Vec2 p) {
    const int x = pixel_index_of(p.x);
    const int y = pixel_index_of(p.y);
    if (x < 0 || y < 0 || x >= cam.width || y >= cam.height) return -1;
    return owner[static_cast<std::size_t>(y) * cam.width + x];
  };
  auto board_index = [&](bool head, int id) {
    for (std::size_t i = 0; i < boards.size(); ++i) {
      if (boards[i].is_head == head && boards[i].owner_id == id) return static_cast<int>(i);
    }
    return -1;
  };

  RenderedScene out;
  SceneInput& scene = out.scene;
  scene.scene_id = options.scene_id;
  scene.camera = cam;
  scene.depth = DepthMap{cam.width, cam.height, std::move(depth)};
  for (std::size_t bi = 0; bi < boards.size(); ++bi) {
    if (visible[bi].empty()) continue;
    scene.segments.push_back({boards[bi].segment_id, RleMask::from_indices(visible[bi]), boards[bi].label});
  }

  GroundTruth& truth = out.truth;
  truth.scene_id = options.scene_id;
  std::map<int, std::vector<int>> groups;
  for (const auto& a : world.agents) {
    const int head_idx = board_index(true, a.agent_id);
    const Vec2 eye = project_world_point(cam, a.head_center);
    if (owner_at(eye) != head_idx) {
      throw RenderRejected("agent " + std::to_string(a.agent_id) + " head is occluded");
    }
    if (a.target_object) {
      const WorldObject* t = world.find_object(*a.target_object);
      const int t_idx = board_index(false, t->object_id);
      if (owner_at(project_world_point(cam, t->center)) != t_idx) {
        throw RenderRejected("agent " + std::to_string(a.agent_id) + " target is occluded");
      }
      for (std::size_t bi = 0; bi < boards.size(); ++bi) {
        if (static_cast<int>(bi) == head_idx || static_cast<int>(bi) == t_idx) continue;
        if (segment_blocked(a.head_center, t->center, boards[bi])) {
          throw RenderRejected("agent " + std::to_string(a.agent_id) + " line of sight is blocked");
        }
      }
      groups[t->object_id].push_back(a.agent_id);
    }
    truth.targets[a.agent_id] = a.target_object;

    FaceObservation face;
    face.face_id = a.agent_id;
    face.eye_center_px = eye;
    face.ear_to_ear_px = cam.focal_px * options.face_width_m / a.head_center.z;
    face.gaze = GazeVector::from_direction(gaze_direction(world, a));
    const Rect& r = boards[head_idx].rect;
    const auto [bx0, bx1] = pixel_span(r.x0, r.x1, cam.width);
    const auto [by0, by1] = pixel_span(r.y0, r.y1, cam.height);
    face.face_bbox = PixelRect{bx0, by0, bx1, by1};
    scene.faces.push_back(face);
  }
  for (auto& [object_id, agents] : groups) {
    if (agents.size() < 2) continue;
    std::sort(agents.begin(), agents.end());
    const int t_idx = board_index(false, object_id);
    truth.events.push_back({object_id, agents, RleMask::from_indices(visible[t_idx])});
  }
  return out;
}

std::optional<double> analytic_min_residual(const WorldSpec& world, int agent_id, int object_id,
                                            const RenderOptions& options) {
  const WorldAgent* agent = nullptr;
  for (const auto& a : world.agents) {
    if (a.agent_id == agent_id) agent = &a;
  }
  const WorldObject* obj = world.find_object(object_id);
  if (!agent || !obj) throw PreconditionError("unknown agent or object");
  const auto line = make_gaze_line(world, *agent, options);
  if (!line) return std::nullopt;
  const Rect r = project_rect(world.camera, obj->center, obj->width_m, obj->height_m).grown(kEdgeSlackPx);
  const auto clip = clip_line(line->eye, line->dir, r);
  if (!clip || clip->second <= 0.0) return std::nullopt;
  return line->residual_range(obj->center.z, std::max(clip->first, 0.0), clip->second).first;
}

bool world_is_admissible(const WorldSpec& world, double tolerance_m, const RenderOptions& options) {
  std::vector<Board> boards = collect_boards(world, options);
  validate_world(world, options, boards);
  for (const auto& a : world.agents) {
    if (!agent_admissible(world, a, boards, tolerance_m, options)) return false;
  }
  return true;
}

namespace {

constexpr std::array<const char*, 16> kLabels = {
    "cup",   "book",  "ball",  "phone", "laptop", "plant",  "lamp",   "clock",
    "vase",  "bottle", "toy",  "screen", "guitar", "painting", "window", "cake"};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
    std::swap(v[i], v[rng.uniform_int(0, i)]);
  }
}

struct Placer {
  const SampleParams& params;
  Rng& rng;
  RenderOptions render;
  std::vector<Rect> taken;

  static constexpr double kGapPx = 4.0;
  static constexpr int kTries = 200;

  bool free(const Rect& r) const {
    if (!inside_image(params.camera, r.grown(2.0))) return false;
    for (const auto& t : taken) {
      if (r.overlaps(t.grown(kGapPx))) return false;
    }
    return true;
  }

  std::optional<WorldObject> object(int id) {
    const CameraModel& cam = params.camera;
    for (int k = 0; k < kTries; ++k) {
      const double z = rng.uniform(2.0, 4.0);
      const double w = rng.uniform(0.25, 0.5);
      const double h = rng.uniform(0.2, 0.45);
      const Vec2 px{rng.uniform(0.0, cam.width), rng.uniform(0.0, cam.height)};
      const Vec3 c = unproject_pixel(cam, px, z);
      const Rect r = project_rect(cam, c, w, h);
      if (!free(r)) continue;
      taken.push_back(r);
      return WorldObject{id, kLabels[rng.uniform_int(0, static_cast<int>(kLabels.size()) - 1)], c, w, h};
    }
    return std::nullopt;
  }

  std::optional<WorldAgent> agent(int id, const WorldObject& target) {
    const CameraModel& cam = params.camera;
    for (int k = 0; k < kTries; ++k) {
      const double z = std::clamp(target.center.z + rng.uniform(-0.6, 0.6), 1.6, 4.5);
      const Vec2 px{rng.uniform(0.0, cam.width), rng.uniform(0.0, cam.height)};
      const Vec3 head = unproject_pixel(cam, px, z);
      const Rect r = project_rect(cam, head, render.face_width_m, render.face_height_m);
      if (!free(r)) continue;
      const GazeVector g = GazeVector::from_direction(target.center - head);
      if (std::max(std::abs(g.x()), std::abs(g.y())) < kSamplerMinDominantAxis) continue;
      taken.push_back(r);
      return WorldAgent{id, head, target.object_id, std::nullopt};
    }
    return std::nullopt;
  }

  // A billboard on the agent's projected gaze, between the face and its
  // target, at a depth at least 3x the tolerance away from the gaze depth.
  std::optional<WorldObject> distractor(int id, const WorldSpec& world, const WorldAgent& a) {
    const CameraModel& cam = params.camera;
    const auto line = make_gaze_line(world, a, render);
    if (!line) return std::nullopt;
    const WorldObject* t = world.find_object(*a.target_object);
    const auto clip = clip_line(line->eye, line->dir, project_rect(cam, t->center, t->width_m, t->height_m));
    if (!clip) return std::nullopt;
    const Rect head = project_rect(cam, a.head_center, render.face_width_m, render.face_height_m);
    const double head_exit = clip_line(line->eye, line->dir, head)->second;
    for (int k = 0; k < kTries; ++k) {
      const double half_px = rng.uniform(5.0, 11.0);
      const double s_lo = head_exit + half_px * 1.5 + kGapPx + 2.0;
      const double s_hi = clip->first - half_px * 1.5 - kGapPx - 2.0;
      if (s_hi <= s_lo) return std::nullopt;
      const double s = rng.uniform(s_lo, s_hi);
      const Vec2 px = line->eye + s * line->dir;
      const double along_depth = line->depth_at_s(s);
      double offset = rng.uniform(1.5, 2.2) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
      if (along_depth + offset < 1.0 || along_depth + offset > params.background_depth_m - 0.5) offset = -offset;
      const double z = along_depth + offset;
      if (z < 1.0 || z > params.background_depth_m - 0.5) continue;
      const double size = 2.0 * half_px * z / cam.focal_px;
      const Vec3 c = unproject_pixel(cam, px, z);
      const Rect r = project_rect(cam, c, size, size);
      if (!free(r)) continue;
      taken.push_back(r);
      return WorldObject{id, kLabels[rng.uniform_int(0, static_cast<int>(kLabels.size()) - 1)], c, size, size};
    }
    return std::nullopt;
  }
};

std::optional<WorldSpec> try_sample(const SampleParams& params, bool joint, Rng& rng) {
  WorldSpec world;
  world.camera = params.camera;
  world.background_depth_m = params.background_depth_m;
  Placer placer{params, rng, RenderOptions{}, {}};

  for (int i = 0; i < params.n_objects; ++i) {
    auto o = placer.object(i + 1);
    if (!o) return std::nullopt;
    world.objects.push_back(*o);
  }

  // Target assignment: index into world.objects per agent.
  std::vector<int> order(params.n_objects);
  for (int i = 0; i < params.n_objects; ++i) order[i] = i;
  shuffle(order, rng);
  std::vector<int> targets(params.n_agents);
  if (joint) {
    const int group = params.ambiguity ? params.n_agents : rng.uniform_int(2, params.n_agents);
    std::vector<int> agents(params.n_agents);
    for (int i = 0; i < params.n_agents; ++i) agents[i] = i;
    shuffle(agents, rng);
    std::size_t next = 1;
    for (int k = 0; k < params.n_agents; ++k) {
      if (k < group || next >= order.size()) {
        targets[agents[k]] = order[0];
      } else {
        targets[agents[k]] = order[next++];
      }
    }
  } else {
    for (int i = 0; i < params.n_agents; ++i) targets[i] = order[i];
  }

  for (int i = 0; i < params.n_agents; ++i) {
    auto a = placer.agent(i + 1, world.objects[targets[i]]);
    if (!a) return std::nullopt;
    world.agents.push_back(*a);
  }

  if (params.ambiguity) {
    int next_id = params.n_objects + 1;
    for (const auto& a : std::vector<WorldAgent>(world.agents)) {
      auto d = placer.distractor(next_id, world, a);
      if (!d) return std::nullopt;
      world.objects.push_back(*d);
      const auto res = analytic_min_residual(world, a.agent_id, next_id);
      if (!res || *res < 3.0 * params.design_tolerance_m) return std::nullopt;
      ++next_id;
    }
  }

  try {
    render_world(world);
  } catch (const RenderRejected&) {
    return std::nullopt;
  }
  if (!world_is_admissible(world, params.design_tolerance_m)) return std::nullopt;
  if (params.clear_projected_path) {
    std::vector<Board> boards = collect_boards(world, placer.render);
    validate_world(world, placer.render, boards);
    for (const auto& a : world.agents) {
      if (!projected_path_clear(world, a, boards, placer.render)) return std::nullopt;
    }
  }
  return world;
}

}  // namespace

WorldSpec sample_world(std::uint64_t seed, const SampleParams& params) {
  if (params.n_agents < 2) throw PreconditionError("n_agents must be at least 2");
  if (params.n_objects < 1) throw PreconditionError("n_objects must be at least 1");
  if (!(params.p_joint >= 0.0 && params.p_joint <= 1.0)) throw PreconditionError("p_joint must be in [0, 1]");
  if (!params.camera.valid()) throw PreconditionError("invalid camera");
  if (!(params.design_tolerance_m > 0.0)) throw PreconditionError("design tolerance must be positive");
  if (params.ambiguity && params.clear_projected_path) {
    throw PreconditionError("ambiguity and clear_projected_path are exclusive");
  }

  Rng rng(seed);
  const bool joint = params.ambiguity || rng.bernoulli(params.p_joint);
  if (!joint && params.n_objects < params.n_agents) {
    throw PreconditionError("a scene without joint attention needs at least one object per agent");
  }
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    if (auto world = try_sample(params, joint, rng)) return *world;
  }
  throw GenerationError("no admissible world after " + std::to_string(params.max_attempts) + " attempts");
}

}  // namespace jointgaze
