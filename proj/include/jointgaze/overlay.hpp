#pragma once

#include <string>

#include "jointgaze/joint_attention.hpp"

namespace jointgaze {

/// SVG in image pixel coordinates: gray segment outlines, one red gaze line
/// per face (a red dot for degenerate gaze), one green outline per event and
/// the captions. Throws PreconditionError when the report does not belong to
/// the scene.
std::string render_overlay_svg(const SceneInput& scene, const SceneReport& report);

/// Boundary of a mask as an SVG path of axis-aligned pixel edges.
std::string mask_outline_path(const RleMask& mask, RasterSize size);

}  // namespace jointgaze
