#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jointgaze/scene.hpp"

namespace jointgaze {

/// Fronto-parallel rectangle at constant depth.
struct WorldObject {
  int object_id = 0;
  std::string label;
  Vec3 center;
  double width_m = 0.0;
  double height_m = 0.0;

  friend bool operator==(const WorldObject&, const WorldObject&) = default;
};

struct WorldAgent {
  int agent_id = 0;
  Vec3 head_center;
  /// Exactly one of these is set.
  std::optional<int> target_object;
  std::optional<Vec3> free_gaze;

  friend bool operator==(const WorldAgent&, const WorldAgent&) = default;
};

struct WorldSpec {
  CameraModel camera;
  std::vector<WorldAgent> agents;
  std::vector<WorldObject> objects;
  double background_depth_m = 8.0;

  const WorldObject* find_object(int object_id) const;
  friend bool operator==(const WorldSpec&, const WorldSpec&) = default;
};

struct TruthEvent {
  int object_id = 0;
  std::vector<int> participants;
  /// Visible pixels of the common target.
  RleMask mask;

  friend bool operator==(const TruthEvent&, const TruthEvent&) = default;
};

struct GroundTruth {
  std::string scene_id;
  /// agent id -> target object id (nullopt for free gaze).
  std::map<int, std::optional<int>> targets;
  std::vector<TruthEvent> events;

  bool has_joint_attention() const { return !events.empty(); }
  std::set<int> participants() const;
  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct RenderOptions {
  std::string scene_id = "scene";
  double face_width_m = kFaceWidthM;
  double face_height_m = 0.2;
  /// Head billboards become segments with id head_segment_base + agent_id.
  int head_segment_base = 1000;
};

struct RenderedScene {
  SceneInput scene;
  GroundTruth truth;
};

/// Z-buffered billboard render. Throws PreconditionError for an invalid world
/// and RenderRejected when an agent's head or target is hidden or the 3D
/// segment from head to target passes through another billboard.
RenderedScene render_world(const WorldSpec& world, const RenderOptions& options = {});

struct SampleParams {
  int n_agents = 3;
  int n_objects = 4;
  double p_joint = 0.5;
  /// Adds a depth-mismatched distractor on every agent's projected gaze
  /// between the face and its target; all agents then share one target.
  bool ambiguity = false;
  /// Rejects worlds where any other billboard can be reached on an agent's
  /// projected gaze before its target, so depth never decides. Excludes
  /// `ambiguity`.
  bool clear_projected_path = false;
  /// Detector tolerance the sampled worlds are designed to be unambiguous for.
  double design_tolerance_m = 0.3;
  CameraModel camera;
  double background_depth_m = 8.0;
  int max_attempts = 1000;
};

/// Deterministic per seed. Throws PreconditionError for bad parameters and
/// GenerationError when no admissible world is found within the budget.
WorldSpec sample_world(std::uint64_t seed, const SampleParams& params);

/// True when, for every object-targeting agent, the projected gaze line
/// crosses its target with the weak-perspective depth along the gaze within
/// (tolerance - margin) of the target depth, and every other billboard the
/// line may reach first differs by more than (tolerance + margin).
/// Computed in closed form on the continuous billboard rectangles.
bool world_is_admissible(const WorldSpec& world, double tolerance_m, const RenderOptions& options = {});

/// Minimum weak-perspective depth residual of `object_id` along agent
/// `agent_id`'s projected gaze, nullopt when the line misses it.
std::optional<double> analytic_min_residual(const WorldSpec& world, int agent_id, int object_id,
                                            const RenderOptions& options = {});

}  // namespace jointgaze
