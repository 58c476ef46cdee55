#include "jointgaze/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "jointgaze/errors.hpp"
#include "jointgaze/parallel.hpp"

namespace jointgaze {

using ojson = nlohmann::ordered_json;

double agent_accuracy(const std::map<int, AgentLabel>& predicted, const std::map<int, AgentLabel>& truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw PreconditionError("face id sets differ");
  }
  std::size_t correct = 0;
  for (const auto& [id, label] : truth) {
    const auto it = predicted.find(id);
    if (it == predicted.end()) throw PreconditionError("face id sets differ");
    correct += it->second == label;
  }
  return static_cast<double>(correct) / static_cast<double>(truth.size());
}

std::map<int, AgentLabel> true_agent_labels(const GroundTruth& truth) {
  const auto participants = truth.participants();
  std::map<int, AgentLabel> out;
  for (const auto& [agent, target] : truth.targets) {
    out[agent] = participants.count(agent) ? AgentLabel::Participant : AgentLabel::NonParticipant;
  }
  return out;
}

std::optional<double> scene_target_iou(const SceneReport& report, const SceneInput& scene,
                                       const GroundTruth& truth) {
  if (!truth.has_joint_attention()) return std::nullopt;
  double sum = 0.0;
  for (const auto& t : truth.events) {
    double best = 0.0;
    for (const auto& e : report.events) {
      const SegmentProposal* seg = scene.find_segment(e.segment_id);
      if (seg) best = std::max(best, mask_iou(seg->mask, t.mask));
    }
    sum += best;
  }
  return sum / static_cast<double>(truth.events.size());
}

SceneRow evaluate_scene(const LabeledScene& pair, const DetectorConfig& config) {
  return evaluate_report(analyze_scene(pair.scene, config), pair);
}

SceneRow evaluate_report(const SceneReport& report, const LabeledScene& pair) {
  if (report.scene_id != pair.scene.scene_id) {
    throw PreconditionError("report " + report.scene_id + " does not belong to scene " + pair.scene.scene_id);
  }
  for (const auto& e : report.events) {
    if (!pair.scene.find_segment(e.segment_id)) {
      throw PreconditionError("report event names unknown segment " + std::to_string(e.segment_id));
    }
  }
  SceneRow row;
  row.scene_id = pair.scene.scene_id;
  row.mode = report.mode;
  row.iou = scene_target_iou(report, pair.scene, pair.truth);
  const auto truth_labels = true_agent_labels(pair.truth);
  row.agent_accuracy = agent_accuracy(report.agents, truth_labels);
  row.n_faces = static_cast<int>(truth_labels.size());
  for (const auto& [id, label] : truth_labels) row.n_correct += report.agents.at(id) == label;
  row.predicted_ja = report.has_joint_attention;
  row.true_ja = pair.truth.has_joint_attention();
  for (const auto& e : report.events) row.predicted_event_segments.push_back(e.segment_id);
  return row;
}

EvalSummary summarize_rows(std::vector<SceneRow> rows) {
  if (rows.empty()) throw PreconditionError("empty dataset");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SceneRow& a, const SceneRow& b) { return a.scene_id < b.scene_id; });

  EvalSummary s;
  s.n_scenes = rows.size();
  double iou_sum = 0.0;
  std::size_t n_pos = 0;
  double acc_sum = 0.0;
  std::size_t faces = 0;
  std::size_t faces_correct = 0;
  std::size_t cls_correct = 0;
  for (const auto& r : rows) {
    if (r.iou) {
      iou_sum += *r.iou;
      ++n_pos;
    }
    acc_sum += r.agent_accuracy;
    faces += r.n_faces;
    faces_correct += r.n_correct;
    cls_correct += r.predicted_ja == r.true_ja;
  }
  if (n_pos > 0) s.mean_target_iou = iou_sum / static_cast<double>(n_pos);
  s.agent_accuracy = acc_sum / static_cast<double>(rows.size());
  s.agent_accuracy_face_weighted = faces ? static_cast<double>(faces_correct) / faces : 0.0;
  s.ja_classification_accuracy = static_cast<double>(cls_correct) / static_cast<double>(rows.size());
  s.rows = std::move(rows);
  return s;
}

EvalSummary evaluate_dataset(std::span<const LabeledScene> pairs, const DetectorConfig& config,
                             unsigned threads) {
  if (pairs.empty()) throw PreconditionError("empty dataset");
  std::vector<SceneRow> rows(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t i) {
    try {
      rows[i] = evaluate_scene(pairs[i], config);
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError("scene " + pairs[i].scene.scene_id + ": " + e.what());
    }
  });
  return summarize_rows(std::move(rows));
}

AblationPair run_ablation(std::span<const LabeledScene> pairs, const DetectorConfig& config,
                          unsigned threads) {
  DetectorConfig c3 = config;
  c3.mode = DetectionMode::ThreeD;
  DetectorConfig c2 = config;
  c2.mode = DetectionMode::TwoD;
  return {evaluate_dataset(pairs, c3, threads), evaluate_dataset(pairs, c2, threads)};
}

namespace {

ojson summary_json(const EvalSummary& s) {
  ojson j;
  j["n_scenes"] = s.n_scenes;
  j["mean_target_iou"] = s.mean_target_iou ? ojson(*s.mean_target_iou) : ojson(nullptr);
  j["agent_accuracy"] = s.agent_accuracy;
  j["agent_accuracy_face_weighted"] = s.agent_accuracy_face_weighted;
  j["ja_classification_accuracy"] = s.ja_classification_accuracy;
  ojson rows = ojson::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"scene_id", r.scene_id},
                    {"mode", std::string(to_string(r.mode))},
                    {"iou", r.iou ? ojson(*r.iou) : ojson(nullptr)},
                    {"agent_acc", r.agent_accuracy},
                    {"n_faces", r.n_faces},
                    {"n_correct", r.n_correct},
                    {"predicted_ja", r.predicted_ja},
                    {"true_ja", r.true_ja},
                    {"predicted_events", r.predicted_event_segments}});
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace

std::string summary_to_json(const EvalSummary& summary) { return summary_json(summary).dump(1) + "\n"; }

std::string ablation_to_json(const AblationPair& pair) {
  ojson j;
  j["three_d"] = summary_json(pair.three_d);
  j["two_d"] = summary_json(pair.two_d);
  return j.dump(1) + "\n";
}

std::string rows_to_csv(std::span<const SceneRow> rows) {
  std::string out = "scene_id,mode,iou,agent_acc,predicted_ja,true_ja,n_faces,n_correct\n";
  char buf[64];
  for (const auto& r : rows) {
    out += r.scene_id;
    out += ',';
    out += to_string(r.mode);
    out += ',';
    if (r.iou) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.iou);
      out += buf;
    } else {
      out += "NA";
    }
    std::snprintf(buf, sizeof buf, ",%.6f,%d,%d,%d,%d\n", r.agent_accuracy, int{r.predicted_ja},
                  int{r.true_ja}, r.n_faces, r.n_correct);
    out += buf;
  }
  return out;
}

}  // namespace jointgaze
