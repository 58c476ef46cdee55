#pragma once

#include <string>
#include <string_view>

#include "jointgaze/joint_attention.hpp"

namespace jointgaze {

/// JSON with keys scene_id, mode, has_joint_attention, faces[], events[],
/// captions[], overlapping_events[].
std::string report_to_json(const SceneReport& report);
/// Throws ParseError on malformed input.
SceneReport report_from_json(std::string_view text);

}  // namespace jointgaze
