#include "swipekit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "swipekit/errors.hpp"

namespace swipekit {

Direction opposite(Direction d) {
  switch (d) {
    case Direction::up: return Direction::down;
    case Direction::down: return Direction::up;
    case Direction::left: return Direction::right;
    case Direction::right: return Direction::left;
  }
  return Direction::up;
}

bool is_horizontal(Direction d) { return d == Direction::left || d == Direction::right; }

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::up: return "up";
    case Direction::down: return "down";
    case Direction::left: return "left";
    case Direction::right: return "right";
  }
  return "up";
}

Direction direction_from_name(std::string_view name) {
  if (name == "up") return Direction::up;
  if (name == "down") return Direction::down;
  if (name == "left") return Direction::left;
  if (name == "right") return Direction::right;
  throw Error(Errc::unparseable_json, "unknown direction '" + std::string(name) + "'");
}

long round_half_away(double v) {
  return std::lround(v);  // lround rounds halfway cases away from zero
}

namespace {

int scale_coord(int v, int from_extent, int to_extent) {
  return static_cast<int>(
      round_half_away(static_cast<double>(v) * to_extent / from_extent));
}

}  // namespace

NormPoint normalize_point(PixelPoint p, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw Error(Errc::invalid_dimension, "screen must have positive dimensions");
  }
  NormPoint n{scale_coord(p.x, w, kNormMax), scale_coord(p.y, h, kNormMax)};
  n.x = std::clamp(n.x, 0, kNormMax);
  n.y = std::clamp(n.y, 0, kNormMax);
  return n;
}

PixelPoint denormalize_point(NormPoint p, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw Error(Errc::invalid_dimension, "screen must have positive dimensions");
  }
  PixelPoint out{scale_coord(p.x, kNormMax, w), scale_coord(p.y, kNormMax, h)};
  out.x = std::clamp(out.x, 0, w - 1);
  out.y = std::clamp(out.y, 0, h - 1);
  return out;
}

BBox normalize_bbox(const BBox& b, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw Error(Errc::invalid_dimension, "screen must have positive dimensions");
  }
  BBox out{scale_coord(b.x1, w, kNormMax), scale_coord(b.y1, h, kNormMax),
           scale_coord(b.x2, w, kNormMax), scale_coord(b.y2, h, kNormMax)};
  out.x1 = std::clamp(out.x1, 0, kNormMax);
  out.y1 = std::clamp(out.y1, 0, kNormMax);
  out.x2 = std::clamp(out.x2, 0, kNormMax);
  out.y2 = std::clamp(out.y2, 0, kNormMax);
  return out;
}

BBox denormalize_bbox(const BBox& b, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw Error(Errc::invalid_dimension, "screen must have positive dimensions");
  }
  BBox out{scale_coord(b.x1, kNormMax, w), scale_coord(b.y1, kNormMax, h),
           scale_coord(b.x2, kNormMax, w), scale_coord(b.y2, kNormMax, h)};
  out.x1 = std::clamp(out.x1, 0, w);
  out.y1 = std::clamp(out.y1, 0, h);
  out.x2 = std::clamp(out.x2, 0, w);
  out.y2 = std::clamp(out.y2, 0, h);
  return out;
}

namespace {

Direction direction_of_deltas(long dx, long dy) {
  if (dx == 0 && dy == 0) {
    throw Error(Errc::degenerate_gesture, "start equals end");
  }
  if (std::labs(dx) >= std::labs(dy)) {  // ties resolve to the horizontal axis
    return dx > 0 ? Direction::right : Direction::left;
  }
  return dy > 0 ? Direction::down : Direction::up;
}

}  // namespace

Direction direction_of(NormPoint start, NormPoint end) {
  return direction_of_deltas(end.x - start.x, end.y - start.y);
}

Direction direction_of(PixelPoint start, PixelPoint end) {
  return direction_of_deltas(end.x - start.x, end.y - start.y);
}

}  // namespace swipekit
