import json
import math
import re

import pytest

import jointgaze as jg


def test_geometry_examples():
    assert jg.pixel_scale_at_face(50) == 0.15 / 50
    assert jg.gaze_projection_2d(jg.GazeVector(0.6, 0, 0.8)) == pytest.approx((1.0, 0.0))
    assert jg.gaze_projection_2d(jg.GazeVector(0, 0, 1)) is None
    g = jg.GazeVector(0, 0.6, 0.8)
    assert jg.ray_depth_at_pixel((200, 100), 2.0, g, 0.003, (200, 150)) == pytest.approx(2.2, abs=1e-9)
    assert jg.project_world_point(jg.CameraModel(), 0.3, 0, 2.0) == pytest.approx((395.0, 240.0))
    assert jg.angular_error_deg(jg.GazeVector(1, 0, 0), jg.GazeVector(0, 1, 0)) == pytest.approx(90.0)
    with pytest.raises(jg.Error):
        jg.pixel_scale_at_face(0)


def test_simulated_scene_round_trip_and_analysis():
    params = jg.SampleParams()
    params.p_joint = 1.0
    scene, truth = jg.simulate_scene(3, params, "demo")
    assert scene.scene_id == "demo"
    assert jg.validate_scene(scene) == []
    manifest, depth = jg.serialize_scene(scene)
    assert isinstance(depth, bytes) and depth[:4] == b"DMAP"
    assert jg.parse_scene(manifest, depth) == scene

    report = jg.analyze_scene(scene, jg.DetectorConfig())
    assert report.has_joint_attention == truth.has_joint_attention
    assert report.events == truth.events
    for caption in report.captions:
        assert re.fullmatch(r"[0-9]+ people are looking at .+", caption)
    assert json.loads(report.to_json())["scene_id"] == "demo"


def test_parse_error_is_reported():
    scene, _ = jg.simulate_scene(1)
    manifest, depth = jg.serialize_scene(scene)
    with pytest.raises(jg.Error, match="depth raster short"):
        jg.parse_scene(manifest, depth[:-4])


def test_noise_and_ablation():
    scene, _ = jg.simulate_scene(2)
    assert jg.apply_noise(scene, jg.NoiseSpec()) == scene
    assert jg.apply_noise(scene, jg.NoiseSpec(gaze_sigma_deg=10, seed=1)) != scene

    amb = jg.SampleParams()
    amb.ambiguity = True
    three = jg.evaluate_simulated(8, 5, amb)
    two = jg.evaluate_simulated(8, 5, amb, config=jg.DetectorConfig(mode=jg.DetectionMode.TWO_D))
    assert three.mean_target_iou == 1.0
    assert two.mean_target_iou == 0.0

    plain = jg.evaluate_simulated(20, 7)
    assert plain.agent_accuracy == 1.0
    assert plain.ja_classification_accuracy == 1.0


def test_caption_and_cli(tmp_path):
    assert jg.make_caption(3, "cake") == "3 people are looking at cake"
    code, out, err = jg.run_cli(["simulate", "--n", "0", "--out", str(tmp_path / "x")])
    assert code == 1 and "empty dataset" in err
    code, out, _ = jg.run_cli(["simulate", "--n", "5", "--seed", "3", "--out", str(tmp_path / "ds")])
    assert code == 0
    code, out, _ = jg.run_cli(["eval", str(tmp_path / "ds")])
    assert code == 0
    assert out.startswith("mode=3d scenes=5 ")
    assert "agent_acc=1.000" in out
    assert not math.isnan(jg.pixel_scale_at_face(150))
