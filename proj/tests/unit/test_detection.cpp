#include <algorithm>
#include <random>
#include <regex>

#include "../test_support.hpp"
#include "doctest.h"
#include "jointgaze/errors.hpp"
#include "jointgaze/joint_attention.hpp"
#include "jointgaze/random.hpp"
#include "jointgaze/report_io.hpp"
#include "jointgaze/simulator.hpp"
#include "jointgaze/target_detection.hpp"

using namespace jointgaze;
using namespace jointgaze::testing;

namespace {

// Eye at (200.5, 100.5) with depth 2.0 and ear width 50 px (3 mm/px).
SceneInput one_candidate_scene(float region_depth) {
  SceneInput s = blank_scene(400, 200, 5.0f);
  s.depth.values[100 * 400 + 200] = 2.0f;
  s.faces.push_back(face_at(1, 200.5, 100.5, 50.0, {0.707, 0.0, 0.707}));
  s.segments.push_back({4, block_mask(400, 300, 95, 310, 106), std::string("box")});
  paint_depth(s, s.segments[0].mask, region_depth);
  return s;
}

DetectorConfig cfg(DetectionMode mode, double tol = 0.3) {
  DetectorConfig c;
  c.mode = mode;
  c.depth_tolerance_m = tol;
  return c;
}

SampleParams ambiguity_params() {
  SampleParams p;
  p.ambiguity = true;
  return p;
}

TargetDetection with_target(int face, int segment) {
  Candidate c;
  c.segment_id = segment;
  return {face, c};
}

}  // namespace

TEST_CASE("candidate composes pixel scale and ray depth") {
  const SceneInput s = one_candidate_scene(2.3f);
  const CandidateList list = enumerate_candidates(s, s.faces[0], cfg(DetectionMode::ThreeD));
  REQUIRE_FALSE(list.degenerate);
  REQUIRE(list.candidates.size() == 1);
  const Candidate& c = list.candidates[0];
  CHECK(c.segment_id == 4);
  CHECK(c.pixel_distance == 100.0);
  CHECK(c.ray_depth_m == doctest::Approx(2.3).epsilon(1e-12));
  CHECK(c.region_depth_m == doctest::Approx(2.3).epsilon(1e-6));
  CHECK(c.depth_residual_m < 1e-6);

  const TargetDetection d = detect_target(s, s.faces[0], cfg(DetectionMode::ThreeD));
  REQUIRE(d.has_target());
  CHECK(d.target() == c);
}

TEST_CASE("no segment on the ray gives no candidates") {
  SceneInput s = one_candidate_scene(2.3f);
  s.faces[0].gaze = GazeVector::from_direction({-0.707, 0.0, 0.707});
  CHECK(enumerate_candidates(s, s.faces[0], cfg(DetectionMode::ThreeD)).candidates.empty());
  const auto d = detect_target(s, s.faces[0], cfg(DetectionMode::ThreeD));
  CHECK(d.reason() == NoTargetReason::NoIntersections);
  CHECK(detect_target(s, s.faces[0], cfg(DetectionMode::TwoD)).reason() == NoTargetReason::NoIntersections);
}

TEST_CASE("depth mismatch and degenerate gaze") {
  SceneInput s = one_candidate_scene(4.0f);
  CHECK(detect_target(s, s.faces[0], cfg(DetectionMode::ThreeD)).reason() == NoTargetReason::NoDepthMatch);
  // The 2D variant ignores depth.
  const auto d2 = detect_target(s, s.faces[0], cfg(DetectionMode::TwoD));
  REQUIRE(d2.has_target());
  CHECK(d2.target().segment_id == 4);

  s.faces[0].gaze = GazeVector(0, 0, 1);
  CHECK(enumerate_candidates(s, s.faces[0], cfg(DetectionMode::ThreeD)).degenerate);
  CHECK(detect_target(s, s.faces[0], cfg(DetectionMode::ThreeD)).reason() == NoTargetReason::DegenerateGaze);
  CHECK(detect_target(s, s.faces[0], cfg(DetectionMode::TwoD)).reason() == NoTargetReason::DegenerateGaze);
}

TEST_CASE("mode mismatch and bad config are rejected") {
  const SceneInput s = one_candidate_scene(2.3f);
  const SegmentIndex index(s);
  CHECK_THROWS_AS(detect_target_3d(index, s.faces[0], cfg(DetectionMode::TwoD)), PreconditionError);
  CHECK_THROWS_AS(detect_target_2d(index, s.faces[0], cfg(DetectionMode::ThreeD)), PreconditionError);
  CHECK_THROWS_AS(detect_target(index, s.faces[0], cfg(DetectionMode::ThreeD, 0.0)), PreconditionError);
  CHECK(to_string(NoTargetReason::NoDepthMatch) == "no_depth_match");
  CHECK(to_string(DetectionMode::TwoD) == "2d");
}

TEST_CASE("nearer depth-matching candidate wins; ties broken by residual") {
  SceneInput s = one_candidate_scene(2.3f);
  // A second matching segment further along the ray.
  s.segments.push_back({2, block_mask(400, 350, 95, 360, 106), std::nullopt});
  paint_depth(s, s.segments[1].mask, 2.45f);
  auto d = detect_target(s, s.faces[0], cfg(DetectionMode::ThreeD));
  CHECK(d.target().segment_id == 4);
  // Make the near one mismatch: the far one (ray depth 2.45) takes over.
  paint_depth(s, s.segments[0].mask, 3.5f);
  d = detect_target(s, s.faces[0], cfg(DetectionMode::ThreeD));
  CHECK(d.target().segment_id == 2);
  CHECK(detect_target(s, s.faces[0], cfg(DetectionMode::TwoD)).target().segment_id == 4);
}

TEST_CASE("ambiguity scenes: 3D takes the far target, 2D the near distractor") {
  const SampleParams p = ambiguity_params();
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WorldSpec world = sample_world(seed, p);
    const RenderedScene r = render_world(world);
    const SegmentIndex index(r.scene);
    for (const auto& face : r.scene.faces) {
      const int truth = *r.truth.targets.at(face.face_id);
      const auto list = enumerate_candidates(index, face, cfg(DetectionMode::ThreeD));
      // Exhaustive scan: nearest candidate within tolerance, and nearest overall.
      const Candidate* near_match = nullptr;
      const Candidate* nearest = nullptr;
      for (const auto& c : list.candidates) {
        if (!nearest || c.pixel_distance < nearest->pixel_distance) nearest = &c;
        if (c.depth_residual_m <= 0.3 && (!near_match || c.pixel_distance < near_match->pixel_distance)) {
          near_match = &c;
        }
      }
      REQUIRE(near_match);
      CHECK(near_match->segment_id == truth);
      CHECK(nearest->segment_id != truth);
      CHECK(nearest->depth_residual_m > 0.3);
      // Distractor residuals respect the closed-form lower bound.
      if (world.find_object(nearest->segment_id)) {
        const auto bound = analytic_min_residual(world, face.face_id, nearest->segment_id);
        REQUIRE(bound);
        CHECK(nearest->depth_residual_m >= *bound - 1e-5);
        CHECK(*bound >= 0.35);
      }
      // Each agent's own distractor (placed in agent order after the regular objects).
      const auto own = analytic_min_residual(world, face.face_id, p.n_objects + face.face_id);
      REQUIRE(own);
      CHECK(*own >= 3 * p.design_tolerance_m);

      const auto d3 = detect_target(index, face, cfg(DetectionMode::ThreeD));
      const auto d2 = detect_target(index, face, cfg(DetectionMode::TwoD));
      CHECK(d3.target() == *near_match);
      CHECK(d2.target() == *nearest);
      ++checked;
    }
  }
  CHECK(checked == 60);
}

TEST_CASE("region depths of rendered billboards equal their world depth") {
  SampleParams p;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const WorldSpec world = sample_world(seed, p);
    const RenderedScene r = render_world(world);
    for (const auto& face : r.scene.faces) {
      for (const auto& c : enumerate_candidates(r.scene, face, cfg(DetectionMode::ThreeD)).candidates) {
        double z = 0.0;
        if (c.segment_id >= 1000) {
          for (const auto& a : world.agents) {
            if (a.agent_id == c.segment_id - 1000) z = a.head_center.z;
          }
        } else {
          z = world.find_object(c.segment_id)->center.z;
        }
        CHECK(c.region_depth_m == static_cast<double>(static_cast<float>(z)));
      }
    }
  }
}

TEST_CASE("tolerance monotonicity and the infinite-tolerance limit") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    SceneInput s = random_scene(rng, 60, 40, 10);
    for (int k = 0; k < 4; ++k) {
      const Vec3 g{u(rng), u(rng), u(rng)};
      if (g.norm() < 0.1) continue;
      s.faces.push_back(face_at(k + 1, 30.0 + 25.0 * u(rng), 20.0 + 15.0 * u(rng), 10.0 + 5.0 * u(rng), g));
    }
    const SegmentIndex index(s);
    for (const auto& f : s.faces) {
      std::optional<double> prev_distance;
      bool had_target = false;
      for (double tol : {0.05, 0.1, 0.3, 1.0, 3.0, 1e9}) {
        const auto d = detect_target(index, f, cfg(DetectionMode::ThreeD, tol));
        if (had_target) {
          REQUIRE(d.has_target());
          CHECK(d.target().pixel_distance <= *prev_distance);
        }
        if (d.has_target()) {
          had_target = true;
          prev_distance = d.target().pixel_distance;
        }
      }
      const auto d2 = detect_target(index, f, cfg(DetectionMode::TwoD));
      const auto dinf = detect_target(index, f, cfg(DetectionMode::ThreeD, 1e9));
      CHECK(d2.has_target() == dinf.has_target());
      if (d2.has_target()) CHECK(d2.target().pixel_distance == dinf.target().pixel_distance);
      CHECK(detect_target(index, f, cfg(DetectionMode::ThreeD)) == detect_target(index, f, cfg(DetectionMode::ThreeD)));
    }
  }
}

TEST_CASE("resolve_events examples") {
  std::vector<TargetDetection> d = {with_target(1, 7), with_target(2, 7), with_target(3, 9)};
  auto ev = resolve_events(d);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0] == JointAttentionEvent{7, {1, 2}});

  d = {with_target(1, 7), with_target(2, 8), with_target(3, 9)};
  CHECK(resolve_events(d).empty());

  d = {with_target(3, 7), with_target(1, 7), with_target(2, 7)};
  ev = resolve_events(d);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0].participant_face_ids == std::vector<int>{1, 2, 3});

  d = {with_target(1, 7), with_target(2, 7), with_target(3, 9), with_target(4, 9),
       TargetDetection{5, NoTargetReason::NoDepthMatch}};
  ev = resolve_events(d);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0].segment_id == 7);
  CHECK(ev[1].segment_id == 9);

  d = {with_target(1, 7), with_target(1, 7)};
  CHECK_THROWS_AS(resolve_events(d), PreconditionError);
}

TEST_CASE("classify_agents examples") {
  const std::vector<int> faces = {1, 2, 3};
  std::vector<JointAttentionEvent> ev = {{7, {1, 2}}};
  auto labels = classify_agents(faces, ev);
  CHECK(labels.at(1) == AgentLabel::Participant);
  CHECK(labels.at(2) == AgentLabel::Participant);
  CHECK(labels.at(3) == AgentLabel::NonParticipant);
  labels = classify_agents(faces, {});
  CHECK(std::all_of(labels.begin(), labels.end(), [](auto& kv) { return kv.second == AgentLabel::NonParticipant; }));
  ev = {{7, {1, 2, 3}}};
  labels = classify_agents(faces, ev);
  CHECK(std::all_of(labels.begin(), labels.end(), [](auto& kv) { return kv.second == AgentLabel::Participant; }));
}

TEST_CASE("caption template") {
  CHECK(make_caption({7, {1, 2, 3}}, std::string("cake")) == "3 people are looking at cake");
  CHECK(make_caption({9, {1, 2}}, std::nullopt) == "2 people are looking at segment 9");
  CHECK(make_caption({9, {1, 2}}, std::string("")) == "2 people are looking at segment 9");
  CHECK_THROWS_AS(make_caption({9, {1}}, std::nullopt), PreconditionError);
}

TEST_CASE("analyze_scene on simulated scenes matches ground truth") {
  const std::regex caption("^[0-9]+ people are looking at .+$");
  SampleParams p;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RenderedScene r = render_world(sample_world(seed, p));
    const SceneReport rep = analyze_scene(r.scene, cfg(DetectionMode::ThreeD));
    CHECK(rep.has_joint_attention == r.truth.has_joint_attention());
    REQUIRE(rep.events.size() == r.truth.events.size());
    for (std::size_t i = 0; i < rep.events.size(); ++i) {
      CHECK(rep.events[i].segment_id == r.truth.events[i].object_id);
      CHECK(rep.events[i].participant_face_ids == r.truth.events[i].participants);
    }
    REQUIRE(rep.captions.size() == rep.events.size());
    for (const auto& c : rep.captions) CHECK(std::regex_match(c, caption));
    CHECK(rep.detections.size() == r.scene.faces.size());
    CHECK(std::is_sorted(rep.detections.begin(), rep.detections.end(),
                         [](auto& a, auto& b) { return a.face_id < b.face_id; }));

    // Face order does not matter.
    SceneInput shuffled = r.scene;
    std::reverse(shuffled.faces.begin(), shuffled.faces.end());
    CHECK(analyze_scene(shuffled, cfg(DetectionMode::ThreeD)) == rep);

    CHECK(report_from_json(report_to_json(rep)) == rep);
  }
}

TEST_CASE("single face never yields an event") {
  SceneInput s = one_candidate_scene(2.3f);
  const SceneReport rep = analyze_scene(s, cfg(DetectionMode::ThreeD));
  CHECK_FALSE(rep.has_joint_attention);
  CHECK(rep.events.empty());
  CHECK(rep.captions.empty());
  CHECK(rep.agents.at(1) == AgentLabel::NonParticipant);
}

TEST_CASE("invalid scene is rejected") {
  SceneInput s = one_candidate_scene(2.3f);
  s.faces[0].eye_center_px = {500, 10};
  CHECK_THROWS_AS(analyze_scene(s, cfg(DetectionMode::ThreeD)), ValidationError);
}

TEST_CASE("overlapping events are flagged") {
  SceneInput s = blank_scene(100, 40, 3.0f);
  s.faces.push_back(face_at(1, 5.5, 10.5, 30.0, {1.0, 0.0, 0.0}));
  s.faces.push_back(face_at(2, 5.5, 12.5, 30.0, {1.0, 0.0, 0.0}));
  s.faces.push_back(face_at(3, 5.5, 30.5, 30.0, {1.0, 0.0, 0.0}));
  s.faces.push_back(face_at(4, 5.5, 32.5, 30.0, {1.0, 0.0, 0.0}));
  // Two large proposals that share most pixels; faces 1,2 reach A first, 3,4 reach B first.
  s.segments.push_back({1, block_mask(100, 50, 5, 90, 35), std::string("a")});
  RleMask b = mask_union(block_mask(100, 52, 5, 90, 35), block_mask(100, 40, 28, 52, 35));
  s.segments.push_back({2, b, std::string("b")});
  const SceneReport rep = analyze_scene(s, cfg(DetectionMode::TwoD));
  REQUIRE(rep.events.size() == 2);
  REQUIRE(rep.overlapping_events.size() == 1);
  CHECK(rep.overlapping_events[0] == std::pair<int, int>{1, 2});
}
