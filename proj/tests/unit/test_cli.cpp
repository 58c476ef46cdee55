#include <filesystem>
#include <map>
#include <sstream>

#include "../test_support.hpp"
#include "doctest.h"
#include "jointgaze/cli.hpp"
#include "jointgaze/dataset.hpp"
#include "jointgaze/report_io.hpp"
#include "jointgaze/scene_io.hpp"

using namespace jointgaze;
using namespace jointgaze::testing;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("jointgaze_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& rel) const { return (path / rel).string(); }
};

std::map<std::string, std::vector<std::uint8_t>> read_tree(const fs::path& root) {
  std::map<std::string, std::vector<std::uint8_t>> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = read_file_bytes(e.path());
  }
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("simulate: n=0 fails, reruns are byte-identical") {
  TempDir tmp("simulate");
  CliRun r = cli({"simulate", "--n", "0", "--out", tmp / "a"});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("empty dataset") != std::string::npos);

  r = cli({"simulate", "--n", "12", "--p-joint", "0.49", "--seed", "7", "--gaze-noise-deg", "3", "--out", tmp / "a"});
  REQUIRE(r.code == kExitOk);
  r = cli({"simulate", "--n", "12", "--p-joint", "0.49", "--seed", "7", "--gaze-noise-deg", "3", "--out", tmp / "b"});
  REQUIRE(r.code == kExitOk);
  const auto a = read_tree(tmp.path / "a");
  CHECK(a.size() == 12 * 4 + 1);
  CHECK(a == read_tree(tmp.path / "b"));
  r = cli({"simulate", "--n", "12", "--seed", "8", "--out", tmp / "c"});
  CHECK_FALSE(a == read_tree(tmp.path / "c"));
  CHECK(cli({"simulate", "--n", "3", "--p-joint", "2", "--out", tmp / "d"}).code == kExitInputError);
  CHECK(cli({"bogus"}).code == kExitInputError);
}

TEST_CASE("detect on bundles") {
  TempDir tmp("detect");
  REQUIRE(cli({"simulate", "--n", "6", "--p-joint", "1", "--seed", "2", "--out", tmp / "ds"}).code == 0);
  const std::string bundle = tmp / "ds/scenes/scene_00000.json";

  CliRun r = cli({"detect", bundle});
  REQUIRE(r.code == kExitOk);
  const SceneReport rep = report_from_json(r.out);
  CHECK(rep.has_joint_attention);
  CHECK_FALSE(rep.captions.empty());

  r = cli({"detect", bundle, "--mode", "2d", "--out", tmp / "r.json", "--overlay"});
  REQUIRE(r.code == kExitOk);
  CHECK(report_from_json(read_file_text(tmp / "r.json")).mode == DetectionMode::TwoD);
  CHECK(fs::exists(tmp / "r.svg"));

  // Truncated depth file.
  auto bytes = read_file_bytes(tmp / "ds/scenes/scene_00001.dmap");
  bytes.resize(bytes.size() - 10);
  write_file_atomic(tmp / "ds/scenes/scene_00001.dmap", bytes);
  r = cli({"detect", tmp / "ds/scenes/scene_00001.json"});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("depth raster short") != std::string::npos);

  CHECK(cli({"detect", tmp / "missing.json"}).code == kExitInputError);
  CHECK(cli({"detect", bundle, "--mode", "4d"}).code == kExitInputError);
  CHECK(cli({"detect", bundle, "--tolerance", "-1"}).code == kExitInputError);

  // Single face.
  SceneInput one = blank_scene(64, 48, 3.0f);
  one.scene_id = "solo";
  one.faces.push_back(face_at(1, 10.5, 10.5, 20.0, {1.0, 0.0, 0.2}));
  one.segments.push_back({5, block_mask(64, 40, 5, 50, 15), std::nullopt});
  const fs::path manifest = save_scene_bundle(one, tmp.path);
  r = cli({"detect", manifest.string()});
  REQUIRE(r.code == kExitOk);
  CHECK_FALSE(report_from_json(r.out).has_joint_attention);
}

TEST_CASE("eval: oracle closure, ablation ordering, missing truth") {
  TempDir tmp("eval");
  REQUIRE(cli({"simulate", "--n", "40", "--p-joint", "0.49", "--seed", "7", "--out", tmp / "ds"}).code == 0);
  CliRun r = cli({"eval", tmp / "ds"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out == "mode=3d scenes=40 mean_iou=1.000 agent_acc=1.000 ja_acc=1.000\n");
  CHECK(fs::exists(tmp / "ds/eval/summary_3d.json"));
  CHECK(fs::exists(tmp / "ds/eval/rows_3d.csv"));

  REQUIRE(cli({"simulate", "--n", "10", "--ambiguity", "--seed", "1", "--out", tmp / "amb"}).code == 0);
  r = cli({"eval", tmp / "amb", "--ablation", "--out", tmp / "amb_eval"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("mode=3d scenes=10 mean_iou=1.000") != std::string::npos);
  CHECK(r.out.find("mode=2d scenes=10 mean_iou=0.000") != std::string::npos);
  CHECK(fs::exists(tmp / "amb_eval/ablation.json"));

  fs::remove_all(tmp.path / "amb/truth");
  CHECK(cli({"eval", tmp / "amb"}).code != kExitOk);
  CHECK(cli({"eval", tmp / "nowhere"}).code != kExitOk);
}

TEST_CASE("detect then eval over files equals in-process evaluation") {
  TempDir tmp("pipeline");
  REQUIRE(cli({"simulate", "--n", "20", "--seed", "4", "--gaze-noise-deg", "6", "--depth-noise-m", "0.05", "--out",
               tmp / "ds"})
              .code == 0);
  for (int i = 0; i < 20; ++i) {
    const std::string id = scene_name(i);
    REQUIRE(cli({"detect", tmp / ("ds/scenes/" + id + ".json"), "--out", tmp / ("reports/" + id + ".json")}).code ==
            0);
  }
  const CliRun r = cli({"eval", tmp / "ds", "--reports", tmp / "reports", "--out", tmp / "from_files"});
  REQUIRE(r.code == kExitOk);
  const auto pairs = load_dataset(tmp.path / "ds");
  const EvalSummary in_process = evaluate_dataset(pairs, DetectorConfig{});
  CHECK(read_file_text(tmp / "from_files/summary_3d.json") == summary_to_json(in_process));
  CHECK(read_file_text(tmp / "from_files/rows_3d.csv") == rows_to_csv(in_process.rows));

  // Report mode must agree with --mode.
  CHECK(cli({"eval", tmp / "ds", "--reports", tmp / "reports", "--mode", "2d"}).code == kExitInputError);
  CHECK(cli({"eval", tmp / "ds", "--reports", tmp / "reports", "--ablation"}).code == kExitInputError);
}

TEST_CASE("overlay structure") {
  TempDir tmp("overlay");
  REQUIRE(cli({"simulate", "--n", "4", "--p-joint", "1", "--agents", "4", "--seed", "9", "--out", tmp / "ds"}).code ==
          0);
  const std::string bundle = tmp / "ds/scenes/scene_00000.json";
  REQUIRE(cli({"detect", bundle, "--out", tmp / "r.json"}).code == 0);
  REQUIRE(cli({"overlay", bundle, tmp / "r.json", "--out", tmp / "o.svg"}).code == 0);
  const SceneInput scene = load_scene_bundle(bundle);
  const SceneReport rep = report_from_json(read_file_text(tmp / "r.json"));
  std::string svg = read_file_text(tmp / "o.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "stroke=\"red\"") == scene.faces.size());
  CHECK(count(svg, "<line class=\"gaze\"") == scene.faces.size());
  CHECK(count(svg, "stroke=\"green\"") == rep.events.size());
  CHECK(count(svg, "<text class=\"caption\"") == rep.captions.size());
  CHECK(count(svg, "class=\"segment\"") == scene.segments.size());

  // No events: no green; degenerate gaze: a dot instead of a line.
  SceneReport empty = rep;
  empty.events.clear();
  empty.captions.clear();
  SceneInput edited = scene;
  edited.faces[0].gaze = GazeVector(0, 0, 1);
  const fs::path m = save_scene_bundle(edited, tmp.path / "edited");
  write_file_atomic(tmp.path / "empty.json", report_to_json(empty));
  REQUIRE(cli({"overlay", m.string(), tmp / "empty.json", "--out", tmp / "e.svg"}).code == 0);
  svg = read_file_text(tmp / "e.svg");
  CHECK(count(svg, "stroke=\"green\"") == 0);
  CHECK(count(svg, "<line class=\"gaze\"") == scene.faces.size() - 1);
  CHECK(count(svg, "<circle class=\"gaze-dot\"") == 1);

  // Report from a different scene.
  const std::string other = tmp / "ds/scenes/scene_00001.json";
  CHECK(cli({"overlay", other, tmp / "r.json", "--out", tmp / "x.svg"}).code == kExitInputError);
  CHECK_FALSE(fs::exists(tmp / "x.svg"));
}

TEST_CASE("threads from the environment") {
  ::setenv("JOINTGAZE_THREADS", "3", 1);
  CHECK(threads_from_env() == 3);
  ::setenv("JOINTGAZE_THREADS", "zero", 1);
  CHECK(threads_from_env() == 1);
  ::unsetenv("JOINTGAZE_THREADS");
  CHECK(threads_from_env() == 1);
}
