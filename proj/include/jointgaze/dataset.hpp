#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "jointgaze/evaluation.hpp"
#include "jointgaze/noise.hpp"
#include "jointgaze/simulator.hpp"

namespace jointgaze {

struct DatasetParams {
  std::size_t n = 200;
  std::uint64_t seed = 0;
  SampleParams sample;
  /// `noise.seed` is ignored; each scene derives its own noise seed.
  NoiseSpec noise;
  unsigned threads = 1;
};

struct GeneratedScene {
  WorldSpec world;
  LabeledScene labeled;
};

/// Scene `index` of the dataset; a pure function of (params, index).
GeneratedScene generate_scene(const DatasetParams& params, std::size_t index);
std::vector<GeneratedScene> generate_dataset(const DatasetParams& params);

/// Generates and evaluates scene by scene without keeping rasters around.
EvalSummary evaluate_generated(const DatasetParams& params, const DetectorConfig& config);

/// Layout under `dir`:
///   scenes/<id>.json, scenes/<id>.dmap   scene bundles
///   truth/<id>.truth.json                ground truth
///   worlds/<id>.world.json               world descriptions
///   manifest.json                        written last
/// Throws PreconditionError when n == 0.
void write_dataset(const std::filesystem::path& dir, const DatasetParams& params);

/// Reads every scene listed in manifest.json together with its truth file.
/// Throws Error when the manifest or a truth file is missing.
std::vector<LabeledScene> load_dataset(const std::filesystem::path& dir);

std::string scene_name(std::size_t index);

}  // namespace jointgaze
