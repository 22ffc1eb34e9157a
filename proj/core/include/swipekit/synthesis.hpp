#pragma once

#include <vector>

#include "swipekit/geometry.hpp"
#include "swipekit/rng.hpp"
#include "swipekit/swipe.hpp"

namespace swipekit {

inline constexpr int kComponentSwipeMs = 300;
inline constexpr int kFastSwipeMs = 150;
inline constexpr int kSlowSwipeMs = 500;

// One generated swipe before execution. spec holds normalized coordinates
// ready for the dataset; the pixel fields keep the raw geometry so the
// verifier can diff over the detected target and the executor can replay the
// exact gesture without a lossy round-trip.
struct SwipeCandidate {
  SwipeSpec spec;           // normalized; intent empty
  double alpha = 0.0;       // the sampled scale/offset ratio
  Axis axis = Axis::vertical;
  PixelPoint start_px;
  PixelPoint end_px;        // may sit on the screen/region edge (x == w allowed)
  BBox target_bbox_px;      // the detected target, used as the verification roi
};

// Vertical iff strictly taller than wide; equality goes horizontal.
Axis swipe_axis(const BBox& b);

// Two candidates for a scrollable component with pixel bbox b on a w x h
// screen: both start at the box center (integer-division midpoint), one per
// direction of the dominant axis. Each samples its own alpha in (0, 1];
// distance alpha * (screen extent) rounds to pixels, resampled once and then
// clamped to 1 px if it rounds to zero. Ends clamp to the screen. Duration is
// fixed at 300 ms, and spec.bbox is the full frame.
// Throws Errc::degenerate_target on a zero-area box or a center pinned to the
// zero edge, Errc::out_of_bounds when b leaves the screen.
std::vector<SwipeCandidate> component_candidates(const BBox& b, int w, int h, RngHandle& rng);

// Four candidates for a scrollable region: one alpha in [0.2, 0.5) shared by
// the call, two starts offset from the center by +-alpha * (dominant extent)
// (rounded, then clamped to keep the start strictly inside b), direction
// pointing back across the center, end on the region boundary, crossed with
// the fast/slow durations {150, 500}. spec.bbox is b normalized.
// Emission order is pinned: negative-axis direction first, fast before slow.
// Throws Errc::degenerate_target when b is thinner than 2 px or shorter than
// 4 px along the dominant axis.
std::vector<SwipeCandidate> region_candidates(const BBox& b, int w, int h, RngHandle& rng);

// Pinned execution order: negative-axis direction (up/left) before the
// positive one, faster duration first; stable otherwise.
std::vector<SwipeCandidate> candidate_order(std::vector<SwipeCandidate> cands);

}  // namespace swipekit
