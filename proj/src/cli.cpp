#include "jointgaze/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <ostream>

#include "CLI11.hpp"
#include "jointgaze/dataset.hpp"
#include "jointgaze/errors.hpp"
#include "jointgaze/overlay.hpp"
#include "jointgaze/report_io.hpp"
#include "jointgaze/scene_io.hpp"

namespace jointgaze {

namespace fs = std::filesystem;

unsigned threads_from_env() {
  const char* v = std::getenv("JOINTGAZE_THREADS");
  if (!v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<unsigned>(std::min(n, 256L));
}

namespace {

struct DetectorFlags {
  std::string mode = "3d";
  double tolerance = 0.3;
  double face_width = kFaceWidthM;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "Detector variant")->check(CLI::IsMember({"3d", "2d"}));
    cmd->add_option("--tolerance", tolerance, "Depth tolerance in meters")->check(CLI::PositiveNumber);
    cmd->add_option("--face-width", face_width, "Average face width in meters")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Random seed");
  }
  DetectorConfig config() const {
    return {tolerance, mode == "3d" ? DetectionMode::ThreeD : DetectionMode::TwoD, face_width};
  }
};

std::string fmt3(std::optional<double> v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

void print_headline(std::ostream& out, const EvalSummary& s, DetectionMode mode) {
  out << "mode=" << to_string(mode) << " scenes=" << s.n_scenes << " mean_iou=" << fmt3(s.mean_target_iou)
      << " agent_acc=" << fmt3(s.agent_accuracy) << " ja_acc=" << fmt3(s.ja_classification_accuracy) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint visual attention detection on fused gaze, depth and segment inputs", "jointgaze"};
  app.require_subcommand(1);

  DetectorFlags detect_flags;
  std::string detect_input;
  std::string detect_out;
  bool detect_overlay = false;
  auto* detect = app.add_subcommand("detect", "Analyze one scene bundle");
  detect->add_option("bundle", detect_input, "Scene manifest (.json)")->required();
  detect_flags.add_to(detect);
  detect->add_option("--out", detect_out, "Report path (stdout when omitted)");
  detect->add_flag("--overlay", detect_overlay, "Also write an SVG overlay next to the report");

  DatasetParams sim;
  std::string sim_out;
  long long sim_n = 200;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset with ground truth");
  simulate->add_option("--n", sim_n, "Number of scenes");
  simulate->add_option("--p-joint", sim.sample.p_joint, "Probability of a joint-attention scene")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--agents", sim.sample.n_agents, "Agents per scene");
  simulate->add_option("--objects", sim.sample.n_objects, "Objects per scene");
  simulate->add_option("--gaze-noise-deg", sim.noise.gaze_sigma_deg, "Gaze noise sigma (degrees)");
  simulate->add_option("--depth-noise-m", sim.noise.depth_sigma_m, "Depth noise sigma (meters)");
  simulate->add_option("--mask-jitter-px", sim.noise.mask_jitter_px, "Mask dilation/erosion bound");
  simulate->add_option("--tolerance", sim.sample.design_tolerance_m, "Design depth tolerance (meters)");
  simulate->add_flag("--ambiguity", sim.sample.ambiguity, "Place a depth distractor on every gaze");
  simulate->add_flag("--clear-path", sim.sample.clear_projected_path,
                     "Keep every projected gaze free of other billboards before its target");
  simulate->add_option("--out", sim_out, "Output directory")->required();

  DetectorFlags eval_flags;
  std::string eval_dir;
  std::string eval_out;
  bool eval_ablation = false;
  auto* eval = app.add_subcommand("eval", "Evaluate the detector on a simulated dataset");
  eval->add_option("dataset", eval_dir, "Dataset directory")->required();
  eval_flags.add_to(eval);
  std::string eval_reports;
  auto* ablation_flag = eval->add_flag("--ablation", eval_ablation, "Evaluate both 3d and 2d variants");
  eval->add_option("--reports", eval_reports, "Score existing detect reports (<dir>/<scene_id>.json)")
      ->excludes(ablation_flag);
  eval->add_option("--out", eval_out, "Directory for summary files (default <dataset>/eval)");

  std::string overlay_bundle;
  std::string overlay_report;
  std::string overlay_out;
  auto* overlay = app.add_subcommand("overlay", "Render an SVG overlay for a scene and its report");
  overlay->add_option("bundle", overlay_bundle, "Scene manifest (.json)")->required();
  overlay->add_option("report", overlay_report, "Report (.json)")->required();
  overlay->add_option("--out", overlay_out, "SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const unsigned threads = threads_from_env();
  try {
    if (*detect) {
      const SceneInput scene = load_scene_bundle(detect_input);
      const SceneReport report = analyze_scene(scene, detect_flags.config());
      const std::string text = report_to_json(report);
      if (detect_out.empty()) {
        out << text;
      } else {
        write_file_atomic(detect_out, text);
      }
      if (detect_overlay) {
        fs::path svg = detect_out.empty() ? fs::path(scene.scene_id + ".svg") : fs::path(detect_out);
        svg.replace_extension(".svg");
        write_file_atomic(svg, render_overlay_svg(scene, report));
      }
    } else if (*simulate) {
      if (sim_n <= 0) {
        err << "jointgaze: empty dataset (--n must be positive)\n";
        return kExitInputError;
      }
      sim.n = static_cast<std::size_t>(sim_n);
      sim.threads = threads;
      write_dataset(sim_out, sim);
      out << "wrote " << sim.n << " scenes to " << sim_out << "\n";
    } else if (*eval) {
      const auto pairs = load_dataset(eval_dir);
      const fs::path dest = eval_out.empty() ? fs::path(eval_dir) / "eval" : fs::path(eval_out);
      fs::create_directories(dest);
      const DetectorConfig config = eval_flags.config();
      if (!eval_reports.empty()) {
        std::vector<SceneRow> rows;
        for (const auto& pair : pairs) {
          const fs::path path = fs::path(eval_reports) / (pair.scene.scene_id + ".json");
          const SceneReport report = report_from_json(read_file_text(path));
          if (report.mode != config.mode) {
            throw ValidationError(path.string() + ": report mode " + std::string(to_string(report.mode)) +
                                  " does not match --mode " + std::string(to_string(config.mode)));
          }
          rows.push_back(evaluate_report(report, pair));
        }
        const EvalSummary s = summarize_rows(std::move(rows));
        const std::string tag(to_string(config.mode));
        write_file_atomic(dest / ("summary_" + tag + ".json"), summary_to_json(s));
        write_file_atomic(dest / ("rows_" + tag + ".csv"), rows_to_csv(s.rows));
        print_headline(out, s, config.mode);
      } else if (eval_ablation) {
        const AblationPair pair = run_ablation(pairs, config, threads);
        write_file_atomic(dest / "ablation.json", ablation_to_json(pair));
        write_file_atomic(dest / "rows_3d.csv", rows_to_csv(pair.three_d.rows));
        write_file_atomic(dest / "rows_2d.csv", rows_to_csv(pair.two_d.rows));
        print_headline(out, pair.three_d, DetectionMode::ThreeD);
        print_headline(out, pair.two_d, DetectionMode::TwoD);
      } else {
        const EvalSummary s = evaluate_dataset(pairs, config, threads);
        const std::string tag(to_string(config.mode));
        write_file_atomic(dest / ("summary_" + tag + ".json"), summary_to_json(s));
        write_file_atomic(dest / ("rows_" + tag + ".csv"), rows_to_csv(s.rows));
        print_headline(out, s, config.mode);
      }
    } else if (*overlay) {
      const SceneInput scene = load_scene_bundle(overlay_bundle);
      const SceneReport report = report_from_json(read_file_text(overlay_report));
      write_file_atomic(overlay_out, render_overlay_svg(scene, report));
    }
  } catch (const Error& e) {
    err << "jointgaze: " << e.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "jointgaze: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "jointgaze: internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace jointgaze
