#pragma once

#include <string>
#include <string_view>

#include "jointgaze/simulator.hpp"

namespace jointgaze {

/// Keys: camera, agents[], objects[], background_depth_m.
std::string world_to_json(const WorldSpec& world);
WorldSpec world_from_json(std::string_view text);

/// Keys: scene_id, targets{}, events[] (each with object_id, participants, rle).
std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(std::string_view text);

}  // namespace jointgaze
