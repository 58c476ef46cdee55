#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jointgaze/scene.hpp"

namespace jointgaze {

/// A scene bundle: JSON manifest text plus the binary depth file it references.
struct SceneBundle {
  std::string manifest;
  std::string depth_file;
  std::vector<std::uint8_t> depth_bytes;
};

/// "DMAP" magic, u32 LE width, u32 LE height, width*height f32 LE values.
std::vector<std::uint8_t> encode_depth(const DepthMap& depth);
DepthMap decode_depth(std::span<const std::uint8_t> bytes);

/// Canonical form: keys in schema order, runs merged and sorted. Equal
/// scenes produce identical bytes.
SceneBundle serialize_scene(const SceneInput& scene);
SceneBundle serialize_scene(const SceneInput& scene, std::string depth_file);

/// Parses and fully validates. Throws ParseError naming the offending field.
SceneInput parse_scene(std::string_view manifest, std::span<const std::uint8_t> depth_bytes);

/// Reads `manifest_path` and the depth file it names (relative to the manifest).
SceneInput load_scene_bundle(const std::filesystem::path& manifest_path);
/// Writes <dir>/<scene_id>.json and <dir>/<scene_id>.dmap; returns the manifest path.
std::filesystem::path save_scene_bundle(const SceneInput& scene, const std::filesystem::path& dir);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::string read_file_text(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it into place, creating parent directories.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace jointgaze
