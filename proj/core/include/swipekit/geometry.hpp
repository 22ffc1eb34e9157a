#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace swipekit {

inline constexpr int kNormMax = 1000;  // storage frame is (0,0,1000,1000)

// Resolution-normalized point, both coordinates in [0, 1000].
struct NormPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const NormPoint&, const NormPoint&) = default;
};

// Device-pixel point, non-negative.
struct PixelPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Axis-aligned box; x1 <= x2, y1 <= y2. The coordinate space (pixels or
// normalized) is the caller's context. Pixel-space boxes are half-open when
// used as raster regions: pixel (x, y) is inside iff x1 <= x < x2, y1 <= y < y2.
struct BBox {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;

  int width() const { return x2 - x1; }
  int height() const { return y2 - y1; }
  bool valid() const { return x1 >= 0 && y1 >= 0 && x1 <= x2 && y1 <= y2; }
  bool contains(int x, int y) const { return x >= x1 && x <= x2 && y >= y1 && y <= y2; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

enum class Direction { up, down, left, right };

enum class Axis { horizontal, vertical };

Direction opposite(Direction d);
bool is_horizontal(Direction d);
std::string_view direction_name(Direction d);
// Throws Errc::unparseable_json on unknown names.
Direction direction_from_name(std::string_view name);

// Half-away-from-zero rounding, pinned for cross-language determinism.
long round_half_away(double v);

// Rescales p from a w x h screen into the [0,1000]^2 frame. Rounds
// half-away-from-zero and clamps to [0,1000]. Throws Errc::invalid_dimension
// when w or h is not positive.
NormPoint normalize_point(PixelPoint p, int w, int h);

// Inverse of normalize_point; result is clamped to [0, w-1] x [0, h-1] so it
// is always a valid on-screen pixel.
PixelPoint denormalize_point(NormPoint p, int w, int h);

// Normalizes each corner of a pixel-space box (x2/y2 may equal w/h).
BBox normalize_bbox(const BBox& b, int w, int h);

// Maps a normalized box back to pixels. Edges land on [0, w] x [0, h]; the
// right/bottom edges are exclusive when the box is used as a raster region.
BBox denormalize_bbox(const BBox& b, int w, int h);

// Dominant-axis direction of the segment start -> end. Diagonal ties resolve
// to the horizontal variant. Throws Errc::degenerate_gesture when start == end.
Direction direction_of(NormPoint start, NormPoint end);
Direction direction_of(PixelPoint start, PixelPoint end);

}  // namespace swipekit
