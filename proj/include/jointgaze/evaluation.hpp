#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointgaze/joint_attention.hpp"
#include "jointgaze/simulator.hpp"

namespace jointgaze {

struct LabeledScene {
  SceneInput scene;
  GroundTruth truth;
};

struct SceneRow {
  std::string scene_id;
  DetectionMode mode = DetectionMode::ThreeD;
  /// Set only for scenes with a true common target.
  std::optional<double> iou;
  double agent_accuracy = 0.0;
  int n_faces = 0;
  int n_correct = 0;
  bool predicted_ja = false;
  bool true_ja = false;
  std::vector<int> predicted_event_segments;
};

struct EvalSummary {
  std::size_t n_scenes = 0;
  /// Mean over scenes with a true common target; nullopt when there are none.
  std::optional<double> mean_target_iou;
  /// Scene-weighted mean of per-scene agent accuracy.
  double agent_accuracy = 0.0;
  /// Face-weighted alternative: correct labels over all faces.
  double agent_accuracy_face_weighted = 0.0;
  double ja_classification_accuracy = 0.0;
  /// Sorted by scene id.
  std::vector<SceneRow> rows;
};

struct AblationPair {
  EvalSummary three_d;
  EvalSummary two_d;
};

/// Fraction of faces whose participant label matches the truth. Throws
/// PreconditionError when the face-id sets differ or are empty.
double agent_accuracy(const std::map<int, AgentLabel>& predicted, const std::map<int, AgentLabel>& truth);

std::map<int, AgentLabel> true_agent_labels(const GroundTruth& truth);

/// Per true common target, IOU with the best-matching predicted event (0 when
/// none), averaged over true targets. nullopt for scenes without one.
std::optional<double> scene_target_iou(const SceneReport& report, const SceneInput& scene,
                                       const GroundTruth& truth);

SceneRow evaluate_scene(const LabeledScene& pair, const DetectorConfig& config);
/// Scores an existing report. Throws PreconditionError when it belongs to another scene.
SceneRow evaluate_report(const SceneReport& report, const LabeledScene& pair);

/// Aggregates rows (sorted by scene id first). Throws PreconditionError when empty.
EvalSummary summarize_rows(std::vector<SceneRow> rows);

/// Throws PreconditionError for an empty dataset; validation failures are
/// rethrown as ValidationError naming the scene.
EvalSummary evaluate_dataset(std::span<const LabeledScene> pairs, const DetectorConfig& config,
                             unsigned threads = 1);
AblationPair run_ablation(std::span<const LabeledScene> pairs, const DetectorConfig& config,
                          unsigned threads = 1);

std::string summary_to_json(const EvalSummary& summary);
std::string ablation_to_json(const AblationPair& pair);
/// Header: scene_id,mode,iou,agent_acc,predicted_ja,true_ja,n_faces,n_correct
std::string rows_to_csv(std::span<const SceneRow> rows);

}  // namespace jointgaze
