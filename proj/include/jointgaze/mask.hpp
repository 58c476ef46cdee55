#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace jointgaze {

struct RasterSize {
  int width = 0;
  int height = 0;

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  friend bool operator==(const RasterSize&, const RasterSize&) = default;
};

struct Run {
  std::uint32_t start = 0;
  std::uint32_t length = 0;

  std::uint64_t end() const { return std::uint64_t{start} + length; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Set of row-major pixel indices stored as sorted, disjoint, non-touching runs.
class RleMask {
 public:
  RleMask() = default;

  /// Accepts sorted, non-overlapping, non-empty runs; merges touching runs.
  /// Throws PreconditionError otherwise.
  static RleMask from_runs(std::vector<Run> runs);
  /// Any order, duplicates allowed.
  static RleMask from_indices(std::vector<std::uint32_t> indices);
  static RleMask from_bitmap(std::span<const std::uint8_t> bitmap);

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  std::uint64_t area() const;
  bool contains(std::uint64_t index) const;
  /// One past the largest index, 0 when empty.
  std::uint64_t extent() const { return runs_.empty() ? 0 : runs_.back().end(); }

  std::vector<std::uint8_t> to_bitmap(std::size_t pixel_count) const;

  template <typename F>
  void for_each_index(F&& f) const {
    for (const Run& r : runs_) {
      for (std::uint64_t i = r.start; i < r.end(); ++i) f(static_cast<std::uint32_t>(i));
    }
  }

  friend bool operator==(const RleMask&, const RleMask&) = default;

 private:
  std::vector<Run> runs_;
};

std::uint64_t intersection_area(const RleMask& a, const RleMask& b);
RleMask mask_union(const RleMask& a, const RleMask& b);

/// |a & b| / |a | b|; 1 when both are empty.
double mask_iou(const RleMask& a, const RleMask& b);
/// Same, after checking both masks live on rasters of equal size (PreconditionError otherwise).
double mask_iou(const RleMask& a, RasterSize size_a, const RleMask& b, RasterSize size_b);

/// Chebyshev dilation (radius > 0) or erosion (radius < 0) on a raster.
RleMask morph_square(const RleMask& m, RasterSize size, int radius);

}  // namespace jointgaze
