#include "swipekit/synthesis.hpp"

#include <algorithm>

#include "swipekit/errors.hpp"

namespace swipekit {

Axis swipe_axis(const BBox& b) {
  return b.height() > b.width() ? Axis::vertical : Axis::horizontal;
}

namespace {

PixelPoint bbox_center(const BBox& b) {
  return PixelPoint{(b.x1 + b.x2) / 2, (b.y1 + b.y2) / 2};
}

void check_inside_screen(const BBox& b, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw Error(Errc::invalid_dimension, "screen must have positive dimensions");
  }
  if (!b.valid() || b.x2 > w || b.y2 > h) {
    throw Error(Errc::out_of_bounds, "target bbox not inside screen");
  }
}

SwipeCandidate make_candidate(SwipeKind kind, PixelPoint start, PixelPoint end, Direction dir,
                              int duration_ms, const BBox& spec_bbox_px,
                              const BBox& target_bbox_px, double alpha, Axis axis, int w, int h) {
  SwipeCandidate c;
  c.alpha = alpha;
  c.axis = axis;
  c.start_px = start;
  c.end_px = end;
  c.target_bbox_px = target_bbox_px;
  c.spec.kind = kind;
  c.spec.start = normalize_point(start, w, h);
  c.spec.end = normalize_point(end, w, h);
  c.spec.direction = dir;
  c.spec.duration_ms = duration_ms;
  c.spec.bbox = normalize_bbox(spec_bbox_px, w, h);
  return c;
}

int sample_component_distance(double& alpha, int screen_extent, RngHandle& rng) {
  int d = static_cast<int>(round_half_away(alpha * screen_extent));
  if (d == 0) {  // keep start != end: one resample, then a 1 px floor
    alpha = rng.next_open_unit();
    d = static_cast<int>(round_half_away(alpha * screen_extent));
    if (d == 0) d = 1;
  }
  return d;
}

}  // namespace

std::vector<SwipeCandidate> component_candidates(const BBox& b, int w, int h, RngHandle& rng) {
  check_inside_screen(b, w, h);
  if (b.width() == 0 || b.height() == 0) {
    throw Error(Errc::degenerate_target, "component bbox has zero area");
  }
  const Axis axis = swipe_axis(b);
  const PixelPoint start = bbox_center(b);
  if ((axis == Axis::horizontal && start.x == 0) || (axis == Axis::vertical && start.y == 0)) {
    // A center on the zero edge leaves no room for the negative-axis swipe.
    throw Error(Errc::degenerate_target, "component center sits on the screen edge");
  }
  const BBox full_screen{0, 0, w, h};

  const Direction dirs[2] = {axis == Axis::vertical ? Direction::up : Direction::left,
                             axis == Axis::vertical ? Direction::down : Direction::right};

  std::vector<SwipeCandidate> out;
  out.reserve(2);
  for (Direction dir : dirs) {
    double alpha = rng.next_open_unit();
    PixelPoint end = start;
    if (axis == Axis::horizontal) {
      int d = sample_component_distance(alpha, w, rng);
      end.x = dir == Direction::right ? std::min(start.x + d, w) : std::max(start.x - d, 0);
    } else {
      int d = sample_component_distance(alpha, h, rng);
      end.y = dir == Direction::down ? std::min(start.y + d, h) : std::max(start.y - d, 0);
    }
    out.push_back(make_candidate(SwipeKind::component, start, end, dir, kComponentSwipeMs,
                                 full_screen, b, alpha, axis, w, h));
  }
  return out;
}

std::vector<SwipeCandidate> region_candidates(const BBox& b, int w, int h, RngHandle& rng) {
  check_inside_screen(b, w, h);
  const Axis axis = swipe_axis(b);
  const int dominant_extent = axis == Axis::vertical ? b.height() : b.width();
  const int cross_extent = axis == Axis::vertical ? b.width() : b.height();
  if (dominant_extent < 4 || cross_extent < 2) {
    throw Error(Errc::degenerate_target, "region too small to hold interior start points");
  }
  const PixelPoint center = bbox_center(b);
  const int lo = axis == Axis::vertical ? b.y1 : b.x1;
  const int hi = axis == Axis::vertical ? b.y2 : b.x2;
  const int c = axis == Axis::vertical ? center.y : center.x;

  const double alpha = rng.next_in(0.2, 0.5);  // one draw shared by both starts
  int offset = static_cast<int>(round_half_away(alpha * dominant_extent));
  // Rounding may touch the boundary; pull the offset back so both starts stay
  // strictly inside the region.
  offset = std::clamp(offset, 1, std::min(c - lo, hi - c) - 1);

  // Start offset toward the high boundary swipes back to the low edge and
  // vice versa; the high-offset start is emitted first (pinned order).
  struct Leg {
    int start_axis;
    int end_axis;
    Direction dir;
  };
  const Leg legs[2] = {
      {c + offset, lo, axis == Axis::vertical ? Direction::up : Direction::left},
      {c - offset, hi, axis == Axis::vertical ? Direction::down : Direction::right},
  };

  std::vector<SwipeCandidate> out;
  out.reserve(4);
  for (const Leg& leg : legs) {
    PixelPoint start = center;
    PixelPoint end = center;
    if (axis == Axis::vertical) {
      start.y = leg.start_axis;
      end.y = leg.end_axis;
    } else {
      start.x = leg.start_axis;
      end.x = leg.end_axis;
    }
    for (int duration : {kFastSwipeMs, kSlowSwipeMs}) {
      out.push_back(make_candidate(SwipeKind::region, start, end, leg.dir, duration, b, b,
                                   alpha, axis, w, h));
    }
  }
  return out;
}

std::vector<SwipeCandidate> candidate_order(std::vector<SwipeCandidate> cands) {
  auto direction_rank = [](Direction d) {
    return (d == Direction::up || d == Direction::left) ? 0 : 1;
  };
  std::stable_sort(cands.begin(), cands.end(),
                   [&](const SwipeCandidate& a, const SwipeCandidate& b) {
                     const int ra = direction_rank(a.spec.direction);
                     const int rb = direction_rank(b.spec.direction);
                     if (ra != rb) return ra < rb;
                     return a.spec.duration_ms < b.spec.duration_ms;
                   });
  return cands;
}

}  // namespace swipekit
