#include "swipekit/screen_hash.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "swipekit/errors.hpp"

namespace swipekit {

ScreenHash screen_hash(const GrayImage& img) {
  if (img.empty()) {
    throw Error(Errc::invalid_image, "cannot hash an empty image");
  }
  std::array<double, 64> cells{};
  for (int by = 0; by < 8; ++by) {
    // Integer block boundaries; blocks are never empty because the upper
    // bound is forced past the lower one on tiny images.
    int y0 = static_cast<int>(static_cast<std::int64_t>(by) * img.height / 8);
    int y1 = std::max(y0 + 1, static_cast<int>(static_cast<std::int64_t>(by + 1) * img.height / 8));
    y0 = std::min(y0, img.height - 1);
    y1 = std::min(y1, img.height);
    for (int bx = 0; bx < 8; ++bx) {
      int x0 = static_cast<int>(static_cast<std::int64_t>(bx) * img.width / 8);
      int x1 = std::max(x0 + 1, static_cast<int>(static_cast<std::int64_t>(bx + 1) * img.width / 8));
      x0 = std::min(x0, img.width - 1);
      x1 = std::min(x1, img.width);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          sum += img.at(x, y);
        }
      }
      cells[static_cast<std::size_t>(by) * 8 + bx] =
          sum / (static_cast<double>(y1 - y0) * (x1 - x0));
    }
  }
  double mean = 0.0;
  for (double c : cells) mean += c;
  mean /= 64.0;

  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < 64; ++i) {
    bits <<= 1;  // cell (0,0) ends up in the most significant bit
    if (cells[i] > mean) bits |= 1;
  }
  return ScreenHash{bits};
}

int hamming_distance(ScreenHash a, ScreenHash b) {
  return std::popcount(a.bits ^ b.bits);
}

bool is_new_screen(const GrayImage& img, const VisitedScreens& visited, int hamming_max) {
  const ScreenHash h = screen_hash(img);
  for (const auto& v : visited) {
    if (hamming_distance(h, v) <= hamming_max) return false;
  }
  return true;
}

}  // namespace swipekit
