#include "jointgaze/mask.hpp"

#include <algorithm>

#include "jointgaze/errors.hpp"

namespace jointgaze {

RleMask RleMask::from_runs(std::vector<Run> runs) {
  RleMask m;
  m.runs_.reserve(runs.size());
  for (const Run& r : runs) {
    if (r.length == 0) {
      throw PreconditionError("empty RLE run");
    }
    if (r.end() > UINT32_MAX) {
      throw PreconditionError("RLE run exceeds index range");
    }
    if (!m.runs_.empty()) {
      Run& last = m.runs_.back();
      if (r.start < last.end()) {
        throw PreconditionError("RLE runs overlap or are unsorted");
      }
      if (r.start == last.end()) {
        last.length += r.length;
        continue;
      }
    }
    m.runs_.push_back(r);
  }
  return m;
}

RleMask RleMask::from_indices(std::vector<std::uint32_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  RleMask m;
  for (std::uint32_t i : indices) {
    if (!m.runs_.empty() && m.runs_.back().end() == i) {
      ++m.runs_.back().length;
    } else {
      m.runs_.push_back({i, 1});
    }
  }
  return m;
}

RleMask RleMask::from_bitmap(std::span<const std::uint8_t> bitmap) {
  RleMask m;
  std::size_t i = 0;
  while (i < bitmap.size()) {
    if (!bitmap[i]) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < bitmap.size() && bitmap[i]) ++i;
    m.runs_.push_back({static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(i - start)});
  }
  return m;
}

std::uint64_t RleMask::area() const {
  std::uint64_t a = 0;
  for (const Run& r : runs_) a += r.length;
  return a;
}

bool RleMask::contains(std::uint64_t index) const {
  auto it = std::upper_bound(runs_.begin(), runs_.end(), index,
                             [](std::uint64_t v, const Run& r) { return v < r.start; });
  if (it == runs_.begin()) return false;
  --it;
  return index < it->end();
}

std::vector<std::uint8_t> RleMask::to_bitmap(std::size_t pixel_count) const {
  std::vector<std::uint8_t> bits(pixel_count, 0);
  for (const Run& r : runs_) {
    const std::size_t end = std::min<std::uint64_t>(r.end(), pixel_count);
    for (std::size_t i = r.start; i < end; ++i) bits[i] = 1;
  }
  return bits;
}

std::uint64_t intersection_area(const RleMask& a, const RleMask& b) {
  std::uint64_t total = 0;
  auto ia = a.runs().begin();
  auto ib = b.runs().begin();
  while (ia != a.runs().end() && ib != b.runs().end()) {
    const std::uint64_t lo = std::max<std::uint64_t>(ia->start, ib->start);
    const std::uint64_t hi = std::min(ia->end(), ib->end());
    if (hi > lo) total += hi - lo;
    if (ia->end() < ib->end()) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return total;
}

RleMask mask_union(const RleMask& a, const RleMask& b) {
  std::vector<Run> merged;
  merged.reserve(a.runs().size() + b.runs().size());
  std::merge(a.runs().begin(), a.runs().end(), b.runs().begin(), b.runs().end(),
             std::back_inserter(merged), [](const Run& x, const Run& y) { return x.start < y.start; });
  std::vector<Run> out;
  for (const Run& r : merged) {
    if (!out.empty() && r.start <= out.back().end()) {
      const std::uint64_t end = std::max(out.back().end(), r.end());
      out.back().length = static_cast<std::uint32_t>(end - out.back().start);
    } else {
      out.push_back(r);
    }
  }
  return RleMask::from_runs(std::move(out));
}

double mask_iou(const RleMask& a, const RleMask& b) {
  const std::uint64_t inter = intersection_area(a, b);
  const std::uint64_t uni = a.area() + b.area() - inter;
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double mask_iou(const RleMask& a, RasterSize size_a, const RleMask& b, RasterSize size_b) {
  if (!(size_a == size_b)) {
    throw PreconditionError("mask raster dimensions differ");
  }
  return mask_iou(a, b);
}

RleMask morph_square(const RleMask& m, RasterSize size, int radius) {
  if (radius == 0 || m.empty()) return m;
  const int w = size.width;
  const int h = size.height;
  const auto src = m.to_bitmap(size.pixel_count());
  const int r = std::abs(radius);
  const bool dilate = radius > 0;
  // Separable: rows then columns. Out-of-raster pixels count as background.
  std::vector<std::uint8_t> tmp(src.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool acc = !dilate;
      for (int dx = -r; dx <= r; ++dx) {
        const int xx = x + dx;
        const bool v = xx >= 0 && xx < w && src[static_cast<std::size_t>(y) * w + xx];
        acc = dilate ? (acc || v) : (acc && v);
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  std::vector<std::uint8_t> out(src.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool acc = !dilate;
      for (int dy = -r; dy <= r; ++dy) {
        const int yy = y + dy;
        const bool v = yy >= 0 && yy < h && tmp[static_cast<std::size_t>(yy) * w + x];
        acc = dilate ? (acc || v) : (acc && v);
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return RleMask::from_bitmap(out);
}

}  // namespace jointgaze
