#pragma once

#include <cstdint>
#include <unordered_set>

#include "swipekit/image.hpp"

namespace swipekit {

// 64-bit average hash: 8x8 block-mean downscale, thresholded at the mean of
// the 64 cells, packed row-major MSB-first. Used as visited-screen memory.
struct ScreenHash {
  std::uint64_t bits = 0;

  friend bool operator==(const ScreenHash&, const ScreenHash&) = default;
};

struct ScreenHashHasher {
  std::size_t operator()(const ScreenHash& h) const noexcept {
    return std::hash<std::uint64_t>{}(h.bits);
  }
};

using VisitedScreens = std::unordered_set<ScreenHash, ScreenHashHasher>;

// Cells equal to the mean hash to bit 0 (tie rule pinned).
// Throws Errc::invalid_image on an empty image.
ScreenHash screen_hash(const GrayImage& img);

int hamming_distance(ScreenHash a, ScreenHash b);

// True iff no visited hash lies within Hamming distance hamming_max of the
// image's hash.
bool is_new_screen(const GrayImage& img, const VisitedScreens& visited, int hamming_max = 4);

}  // namespace swipekit
