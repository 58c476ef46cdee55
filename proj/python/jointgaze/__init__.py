"""Joint visual attention detection on fused gaze, depth and segment inputs."""

from ._core import (  # noqa: F401
    CameraModel,
    DetectionMode,
    DetectorConfig,
    Error,
    EvalSummary,
    GazeVector,
    GroundTruth,
    NoiseSpec,
    SampleParams,
    SceneInput,
    SceneReport,
    analyze_scene,
    angular_error_deg,
    apply_noise,
    evaluate_simulated,
    gaze_projection_2d,
    load_scene_bundle,
    make_caption,
    parse_scene,
    pixel_scale_at_face,
    project_world_point,
    ray_depth_at_pixel,
    run_cli,
    serialize_scene,
    simulate_scene,
    validate_scene,
)

__version__ = "0.1.0"
