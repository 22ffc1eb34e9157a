#pragma once

#include "swipekit/geometry.hpp"
#include "swipekit/image.hpp"

namespace swipekit {

// Thresholds for the execute-and-verify check. delta is the per-pixel
// intensity threshold on absolute grayscale difference; tau is the changed-
// pixel ratio above which a gesture counts as effective; tau_screen is the
// full-screen ratio used to decide that a navigation reached a new state.
struct DiffConfig {
  double delta = 0.02;
  double tau = 0.005;
  double tau_screen = 0.01;

  bool valid() const {
    return delta > 0.0 && delta < 1.0 && tau > 0.0 && tau <= 1.0 && tau_screen > 0.0 &&
           tau_screen <= 1.0;
  }
};

// Ratio of roi pixels whose absolute intensity difference exceeds delta.
// roi is half-open pixel space ([x1,x2) x [y1,y2)) and must lie inside both
// images. Throws Errc::shape_mismatch on dimension mismatch,
// Errc::empty_roi / Errc::out_of_bounds on a bad roi.
double changed_ratio(const GrayImage& a, const GrayImage& b, const BBox& roi, double delta);

// True iff the change inside roi is perceptible: changed_ratio >= cfg.tau
// (boundary counts as effective).
bool is_effective(const GrayImage& a, const GrayImage& b, const BBox& roi,
                  const DiffConfig& cfg);

inline BBox full_roi(const GrayImage& img) { return BBox{0, 0, img.width, img.height}; }

}  // namespace swipekit
