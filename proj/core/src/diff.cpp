#include "swipekit/diff.hpp"

#include <cmath>
#include <cstdint>

#include "swipekit/errors.hpp"

namespace swipekit {

double changed_ratio(const GrayImage& a, const GrayImage& b, const BBox& roi, double delta) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(Errc::shape_mismatch, "images differ in size");
  }
  if (a.empty()) {
    throw Error(Errc::invalid_image, "empty image");
  }
  if (!roi.valid() || roi.x2 > a.width || roi.y2 > a.height) {
    throw Error(Errc::out_of_bounds, "roi not inside image");
  }
  if (roi.width() == 0 || roi.height() == 0) {
    throw Error(Errc::empty_roi, "roi has no pixels");
  }
  std::uint64_t changed = 0;
  for (int y = roi.y1; y < roi.y2; ++y) {
    const float* ra = a.intensity.data() + static_cast<std::size_t>(y) * a.width;
    const float* rb = b.intensity.data() + static_cast<std::size_t>(y) * b.width;
    for (int x = roi.x1; x < roi.x2; ++x) {
      if (std::fabs(static_cast<double>(ra[x]) - static_cast<double>(rb[x])) > delta) {
        ++changed;
      }
    }
  }
  const std::uint64_t total =
      static_cast<std::uint64_t>(roi.width()) * static_cast<std::uint64_t>(roi.height());
  return static_cast<double>(changed) / static_cast<double>(total);
}

bool is_effective(const GrayImage& a, const GrayImage& b, const BBox& roi,
                  const DiffConfig& cfg) {
  return changed_ratio(a, b, roi, cfg.delta) >= cfg.tau;
}

}  // namespace swipekit
