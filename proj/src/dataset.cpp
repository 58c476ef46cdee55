#include "jointgaze/dataset.hpp"

#include <cstdio>

#include "json.hpp"
#include "jointgaze/errors.hpp"
#include "jointgaze/parallel.hpp"
#include "jointgaze/random.hpp"
#include "jointgaze/scene_io.hpp"
#include "jointgaze/world_io.hpp"

namespace jointgaze {

using ojson = nlohmann::ordered_json;

std::string scene_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "scene_%05zu", index);
  return buf;
}

GeneratedScene generate_scene(const DatasetParams& params, std::size_t index) {
  GeneratedScene g;
  g.world = sample_world(derive_seed(params.seed, 2 * index), params.sample);
  RenderOptions opt;
  opt.scene_id = scene_name(index);
  RenderedScene r = render_world(g.world, opt);
  NoiseSpec noise = params.noise;
  noise.seed = derive_seed(params.seed, 2 * index + 1);
  g.labeled.scene = apply_noise(r.scene, noise);
  g.labeled.truth = std::move(r.truth);
  return g;
}

std::vector<GeneratedScene> generate_dataset(const DatasetParams& params) {
  std::vector<GeneratedScene> out(params.n);
  parallel_for(params.n, params.threads, [&](std::size_t i) { out[i] = generate_scene(params, i); });
  return out;
}

EvalSummary evaluate_generated(const DatasetParams& params, const DetectorConfig& config) {
  std::vector<SceneRow> rows(params.n);
  parallel_for(params.n, params.threads,
               [&](std::size_t i) { rows[i] = evaluate_scene(generate_scene(params, i).labeled, config); });
  return summarize_rows(std::move(rows));
}

void write_dataset(const std::filesystem::path& dir, const DatasetParams& params) {
  if (params.n == 0) throw PreconditionError("empty dataset");
  namespace fs = std::filesystem;
  fs::create_directories(dir / "scenes");
  fs::create_directories(dir / "truth");
  fs::create_directories(dir / "worlds");

  std::vector<char> positive(params.n, 0);
  parallel_for(params.n, params.threads, [&](std::size_t i) {
    const GeneratedScene g = generate_scene(params, i);
    const std::string id = g.labeled.scene.scene_id;
    save_scene_bundle(g.labeled.scene, dir / "scenes");
    write_file_atomic(dir / "truth" / (id + ".truth.json"), truth_to_json(g.labeled.truth));
    write_file_atomic(dir / "worlds" / (id + ".world.json"), world_to_json(g.world));
    positive[i] = g.labeled.truth.has_joint_attention();
  });

  std::size_t n_pos = 0;
  ojson scenes = ojson::array();
  for (std::size_t i = 0; i < params.n; ++i) {
    n_pos += positive[i];
    scenes.push_back(scene_name(i));
  }
  ojson m;
  m["n"] = params.n;
  m["n_positive"] = n_pos;
  m["n_negative"] = params.n - n_pos;
  m["seed"] = params.seed;
  m["sample"] = {{"n_agents", params.sample.n_agents},
                 {"n_objects", params.sample.n_objects},
                 {"p_joint", params.sample.p_joint},
                 {"ambiguity", params.sample.ambiguity},
                 {"clear_projected_path", params.sample.clear_projected_path},
                 {"design_tolerance_m", params.sample.design_tolerance_m}};
  m["noise"] = {{"gaze_sigma_deg", params.noise.gaze_sigma_deg},
                {"depth_sigma_m", params.noise.depth_sigma_m},
                {"mask_jitter_px", params.noise.mask_jitter_px}};
  m["scenes"] = std::move(scenes);
  write_file_atomic(dir / "manifest.json", m.dump(1) + "\n");
}

std::vector<LabeledScene> load_dataset(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) {
    throw Error("missing dataset manifest " + manifest_path.string());
  }
  std::vector<std::string> ids;
  try {
    ids = ojson::parse(read_file_text(manifest_path)).at("scenes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest.json", std::string("malformed dataset manifest: ") + e.what());
  }
  std::vector<LabeledScene> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const auto truth_path = dir / "truth" / (id + ".truth.json");
    if (!std::filesystem::exists(truth_path)) throw Error("missing ground truth for " + id);
    LabeledScene s;
    s.scene = load_scene_bundle(dir / "scenes" / (id + ".json"));
    s.truth = truth_from_json(read_file_text(truth_path));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace jointgaze
