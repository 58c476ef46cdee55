#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jointgaze/cli.hpp"
#include "jointgaze/dataset.hpp"
#include "jointgaze/errors.hpp"
#include "jointgaze/geometry.hpp"
#include "jointgaze/joint_attention.hpp"
#include "jointgaze/noise.hpp"
#include "jointgaze/report_io.hpp"
#include "jointgaze/scene_io.hpp"
#include "jointgaze/simulator.hpp"
#include "jointgaze/world_io.hpp"

namespace py = pybind11;
namespace jg = jointgaze;

namespace {

py::tuple vec2(jg::Vec2 v) { return py::make_tuple(v.x, v.y); }

py::bytes to_bytes(const std::vector<std::uint8_t>& b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Joint visual attention detection from gaze, depth and segment proposals";

  py::register_exception<jg::Error>(m, "Error", PyExc_RuntimeError);

  py::class_<jg::GazeVector>(m, "GazeVector")
      .def(py::init<double, double, double>())
      .def_static("from_direction", [](double x, double y, double z) {
        return jg::GazeVector::from_direction({x, y, z});
      })
      .def_property_readonly("x", &jg::GazeVector::x)
      .def_property_readonly("y", &jg::GazeVector::y)
      .def_property_readonly("z", &jg::GazeVector::z)
      .def("__repr__", [](const jg::GazeVector& g) {
        return "GazeVector(" + std::to_string(g.x()) + ", " + std::to_string(g.y()) + ", " +
               std::to_string(g.z()) + ")";
      });

  py::class_<jg::CameraModel>(m, "CameraModel")
      .def(py::init([](double focal_px, double ppx, double ppy, int width, int height) {
             return jg::CameraModel{focal_px, {ppx, ppy}, width, height};
           }),
           py::arg("focal_px") = 500.0, py::arg("ppx") = 320.0, py::arg("ppy") = 240.0,
           py::arg("width") = 640, py::arg("height") = 480)
      .def_readwrite("focal_px", &jg::CameraModel::focal_px)
      .def_readwrite("width", &jg::CameraModel::width)
      .def_readwrite("height", &jg::CameraModel::height);

  m.def("pixel_scale_at_face",
        [](double ear_px, double face_width_m) {
          return jg::pixel_scale_at_face(ear_px, face_width_m).meters_per_pixel;
        },
        py::arg("ear_to_ear_px"), py::arg("face_width_m") = jg::kFaceWidthM,
        "Meters per pixel at the face's depth.");
  m.def("gaze_projection_2d", [](const jg::GazeVector& g) -> std::optional<py::tuple> {
    const auto d = jg::gaze_projection_2d(g);
    if (!d) return std::nullopt;
    return vec2(*d);
  });
  m.def("ray_depth_at_pixel",
        [](std::pair<double, double> eye, double face_depth, const jg::GazeVector& g, double mpp,
           std::pair<double, double> point) {
          return jg::ray_depth_at_pixel({eye.first, eye.second}, face_depth, g, jg::PixelScale{mpp},
                                        {point.first, point.second});
        },
        py::arg("eye_px"), py::arg("face_depth_m"), py::arg("gaze"), py::arg("meters_per_pixel"),
        py::arg("point_px"));
  m.def("project_world_point", [](const jg::CameraModel& cam, double x, double y, double z) {
    return vec2(jg::project_world_point(cam, {x, y, z}));
  });
  m.def("angular_error_deg", &jg::angular_error_deg);

  py::enum_<jg::DetectionMode>(m, "DetectionMode")
      .value("THREE_D", jg::DetectionMode::ThreeD)
      .value("TWO_D", jg::DetectionMode::TwoD);

  py::class_<jg::DetectorConfig>(m, "DetectorConfig")
      .def(py::init([](double tol, jg::DetectionMode mode, double fw) { return jg::DetectorConfig{tol, mode, fw}; }),
           py::arg("depth_tolerance_m") = 0.3, py::arg("mode") = jg::DetectionMode::ThreeD,
           py::arg("face_width_m") = jg::kFaceWidthM)
      .def_readwrite("depth_tolerance_m", &jg::DetectorConfig::depth_tolerance_m)
      .def_readwrite("mode", &jg::DetectorConfig::mode)
      .def_readwrite("face_width_m", &jg::DetectorConfig::face_width_m);

  py::class_<jg::SceneInput>(m, "SceneInput")
      .def_readonly("scene_id", &jg::SceneInput::scene_id)
      .def_property_readonly("n_faces", [](const jg::SceneInput& s) { return s.faces.size(); })
      .def_property_readonly("segment_ids", [](const jg::SceneInput& s) {
        std::vector<int> ids;
        for (const auto& seg : s.segments) ids.push_back(seg.segment_id);
        return ids;
      })
      .def_property_readonly("width", [](const jg::SceneInput& s) { return s.camera.width; })
      .def_property_readonly("height", [](const jg::SceneInput& s) { return s.camera.height; })
      .def("__eq__", [](const jg::SceneInput& a, const jg::SceneInput& b) { return a == b; });

  m.def("parse_scene", [](const std::string& manifest, const py::bytes& depth) {
    const std::string d = depth;
    return jg::parse_scene(manifest, std::span(reinterpret_cast<const std::uint8_t*>(d.data()), d.size()));
  });
  m.def("serialize_scene", [](const jg::SceneInput& s) {
    const auto b = jg::serialize_scene(s);
    return py::make_tuple(b.manifest, to_bytes(b.depth_bytes));
  }, "Returns (manifest_text, depth_bytes).");
  m.def("load_scene_bundle", [](const std::string& path) { return jg::load_scene_bundle(path); });
  m.def("validate_scene", [](const jg::SceneInput& s) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& v : jg::validate_scene(s)) out.emplace_back(v.field, v.rule);
    return out;
  });

  py::class_<jg::SceneReport>(m, "SceneReport")
      .def_readonly("scene_id", &jg::SceneReport::scene_id)
      .def_readonly("has_joint_attention", &jg::SceneReport::has_joint_attention)
      .def_readonly("captions", &jg::SceneReport::captions)
      .def_property_readonly("events", [](const jg::SceneReport& r) {
        std::vector<std::pair<int, std::vector<int>>> out;
        for (const auto& e : r.events) out.emplace_back(e.segment_id, e.participant_face_ids);
        return out;
      })
      .def_property_readonly("targets", [](const jg::SceneReport& r) {
        std::map<int, std::optional<int>> out;
        for (const auto& d : r.detections) {
          out[d.face_id] = d.has_target() ? std::optional<int>(d.target().segment_id) : std::nullopt;
        }
        return out;
      })
      .def("to_json", &jg::report_to_json);

  m.def("analyze_scene", &jg::analyze_scene, py::arg("scene"), py::arg("config") = jg::DetectorConfig{});
  m.def("make_caption", [](int count, const std::string& label) {
    jg::JointAttentionEvent e{0, {}};
    for (int i = 0; i < count; ++i) e.participant_face_ids.push_back(i);
    return jg::make_caption(e, label);
  });

  py::class_<jg::SampleParams>(m, "SampleParams")
      .def(py::init<>())
      .def_readwrite("n_agents", &jg::SampleParams::n_agents)
      .def_readwrite("n_objects", &jg::SampleParams::n_objects)
      .def_readwrite("p_joint", &jg::SampleParams::p_joint)
      .def_readwrite("ambiguity", &jg::SampleParams::ambiguity)
      .def_readwrite("clear_projected_path", &jg::SampleParams::clear_projected_path)
      .def_readwrite("design_tolerance_m", &jg::SampleParams::design_tolerance_m);

  py::class_<jg::NoiseSpec>(m, "NoiseSpec")
      .def(py::init([](double g, double d, int j, std::uint64_t seed) { return jg::NoiseSpec{g, d, j, seed}; }),
           py::arg("gaze_sigma_deg") = 0.0, py::arg("depth_sigma_m") = 0.0, py::arg("mask_jitter_px") = 0,
           py::arg("seed") = 0);

  py::class_<jg::GroundTruth>(m, "GroundTruth")
      .def_property_readonly("has_joint_attention", &jg::GroundTruth::has_joint_attention)
      .def_property_readonly("events", [](const jg::GroundTruth& t) {
        std::vector<std::pair<int, std::vector<int>>> out;
        for (const auto& e : t.events) out.emplace_back(e.object_id, e.participants);
        return out;
      })
      .def("to_json", &jg::truth_to_json);

  m.def("simulate_scene", [](std::uint64_t seed, const jg::SampleParams& params, const std::string& scene_id) {
    const auto world = jg::sample_world(seed, params);
    jg::RenderOptions opt;
    opt.scene_id = scene_id;
    auto r = jg::render_world(world, opt);
    return py::make_tuple(r.scene, r.truth);
  }, py::arg("seed"), py::arg("params") = jg::SampleParams{}, py::arg("scene_id") = "scene");
  m.def("apply_noise", &jg::apply_noise);

  py::class_<jg::EvalSummary>(m, "EvalSummary")
      .def_readonly("n_scenes", &jg::EvalSummary::n_scenes)
      .def_readonly("mean_target_iou", &jg::EvalSummary::mean_target_iou)
      .def_readonly("agent_accuracy", &jg::EvalSummary::agent_accuracy)
      .def_readonly("ja_classification_accuracy", &jg::EvalSummary::ja_classification_accuracy)
      .def("to_json", &jg::summary_to_json);

  m.def("evaluate_simulated",
        [](std::size_t n, std::uint64_t seed, const jg::SampleParams& params, const jg::NoiseSpec& noise,
           const jg::DetectorConfig& config) {
          jg::DatasetParams p;
          p.n = n;
          p.seed = seed;
          p.sample = params;
          p.noise = noise;
          p.threads = jg::threads_from_env();
          return jg::evaluate_generated(p, config);
        },
        py::arg("n"), py::arg("seed"), py::arg("params") = jg::SampleParams{},
        py::arg("noise") = jg::NoiseSpec{}, py::arg("config") = jg::DetectorConfig{},
        py::call_guard<py::gil_scoped_release>());

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = jg::run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
