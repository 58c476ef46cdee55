#include "jointgaze/world_io.hpp"

#include "json.hpp"
#include "jointgaze/errors.hpp"

namespace jointgaze {

using ojson = nlohmann::ordered_json;

namespace {

ojson vec_json(Vec3 v) { return ojson::array({v.x, v.y, v.z}); }

Vec3 json_vec(const ojson& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("vector", "expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

std::string world_to_json(const WorldSpec& world) {
  ojson j;
  j["camera"] = {{"focal_px", world.camera.focal_px},
                 {"ppx", world.camera.principal_point.x},
                 {"ppy", world.camera.principal_point.y},
                 {"width", world.camera.width},
                 {"height", world.camera.height}};
  ojson agents = ojson::array();
  for (const auto& a : world.agents) {
    ojson aj;
    aj["agent_id"] = a.agent_id;
    aj["head_center"] = vec_json(a.head_center);
    if (a.target_object) {
      aj["target"] = *a.target_object;
    } else {
      aj["free_gaze"] = vec_json(*a.free_gaze);
    }
    agents.push_back(std::move(aj));
  }
  j["agents"] = std::move(agents);
  ojson objects = ojson::array();
  for (const auto& o : world.objects) {
    objects.push_back({{"object_id", o.object_id},
                       {"label", o.label},
                       {"center", vec_json(o.center)},
                       {"width_m", o.width_m},
                       {"height_m", o.height_m}});
  }
  j["objects"] = std::move(objects);
  j["background_depth_m"] = world.background_depth_m;
  return j.dump(1) + "\n";
}

WorldSpec world_from_json(std::string_view text) {
  WorldSpec w;
  try {
    const ojson j = ojson::parse(text);
    const ojson& c = j.at("camera");
    w.camera.focal_px = c.at("focal_px").get<double>();
    w.camera.principal_point = {c.at("ppx").get<double>(), c.at("ppy").get<double>()};
    w.camera.width = c.at("width").get<int>();
    w.camera.height = c.at("height").get<int>();
    for (const auto& aj : j.at("agents")) {
      WorldAgent a;
      a.agent_id = aj.at("agent_id").get<int>();
      a.head_center = json_vec(aj.at("head_center"));
      if (aj.contains("target")) a.target_object = aj["target"].get<int>();
      if (aj.contains("free_gaze")) a.free_gaze = json_vec(aj["free_gaze"]);
      w.agents.push_back(a);
    }
    for (const auto& oj : j.at("objects")) {
      w.objects.push_back({oj.at("object_id").get<int>(), oj.at("label").get<std::string>(),
                           json_vec(oj.at("center")), oj.at("width_m").get<double>(),
                           oj.at("height_m").get<double>()});
    }
    w.background_depth_m = j.at("background_depth_m").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("world", std::string("malformed world: ") + e.what());
  }
  return w;
}

std::string truth_to_json(const GroundTruth& truth) {
  ojson j;
  j["scene_id"] = truth.scene_id;
  ojson targets = ojson::object();
  for (const auto& [agent, target] : truth.targets) {
    targets[std::to_string(agent)] = target ? ojson(*target) : ojson(nullptr);
  }
  j["targets"] = std::move(targets);
  ojson events = ojson::array();
  for (const auto& e : truth.events) {
    ojson rle = ojson::array();
    for (const Run& r : e.mask.runs()) rle.push_back(ojson::array({r.start, r.length}));
    events.push_back({{"object_id", e.object_id}, {"participants", e.participants}, {"rle", std::move(rle)}});
  }
  j["events"] = std::move(events);
  return j.dump(1) + "\n";
}

GroundTruth truth_from_json(std::string_view text) {
  GroundTruth t;
  try {
    const ojson j = ojson::parse(text);
    t.scene_id = j.at("scene_id").get<std::string>();
    for (auto it = j.at("targets").begin(); it != j.at("targets").end(); ++it) {
      const int agent = std::stoi(it.key());
      t.targets[agent] = it->is_null() ? std::nullopt : std::optional<int>(it->get<int>());
    }
    for (const auto& ej : j.at("events")) {
      TruthEvent e;
      e.object_id = ej.at("object_id").get<int>();
      e.participants = ej.at("participants").get<std::vector<int>>();
      std::vector<Run> runs;
      for (const auto& r : ej.at("rle")) runs.push_back({r.at(0).get<std::uint32_t>(), r.at(1).get<std::uint32_t>()});
      e.mask = RleMask::from_runs(std::move(runs));
      t.events.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("truth", std::string("malformed truth: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("truth.targets", "agent keys must be integers");
  } catch (const PreconditionError&) {
    throw ParseError("truth.events.rle", "overlapping RLE runs");
  }
  return t;
}

}  // namespace jointgaze
