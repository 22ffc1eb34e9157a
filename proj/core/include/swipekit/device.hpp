#pragma once

#include <memory>
#include <optional>
#include <string>

#include "swipekit/geometry.hpp"
#include "swipekit/image.hpp"

namespace swipekit {

struct DeviceInfo {
  std::string id;
  int width = 0;   // pixels, current orientation
  int height = 0;
  std::optional<int> density_dpi;
};

enum class GestureKind { tap, swipe, long_press, text };

// A concrete on-device gesture in pixel coordinates.
struct GestureCommand {
  GestureKind kind = GestureKind::tap;
  PixelPoint start;
  std::optional<PixelPoint> end;      // required for swipe
  std::optional<int> duration_ms;     // required for swipe and long_press
  std::optional<std::string> text;    // required for text

  static GestureCommand make_tap(PixelPoint at);
  static GestureCommand make_swipe(PixelPoint from, PixelPoint to, int duration_ms);
  static GestureCommand make_long_press(PixelPoint at, int duration_ms);
  static GestureCommand make_text(PixelPoint at, std::string text);
};

// Renders the exact shell command for a swipe:
//   input swipe {x1} {y1} {x2} {y2} {duration}
// Throws Errc::kind_mismatch for non-swipe gestures.
std::string render_adb_swipe(const GestureCommand& g);

// Shell command for any gesture kind. long_press uses the zero-distance
// swipe idiom; text is shell-escaped.
std::string render_adb_command(const GestureCommand& g);

// Uniform device surface. One logical owner per session; operations on a
// session are serialized by the caller.
class Device {
 public:
  virtual ~Device() = default;

  virtual DeviceInfo info() = 0;
  // Throws Errc::device_unreachable / decode_failure.
  virtual ImageRgb screenshot() = 0;
  // Executes the gesture and returns after the configured settle delay.
  // Throws Errc::out_of_bounds when a coordinate leaves the screen.
  virtual void gesture(const GestureCommand& g) = 0;
  // Throws Errc::unsupported when the backend cannot produce dumps.
  virtual std::string dump_hierarchy() = 0;
  virtual void back() = 0;
};

// Validates that every coordinate of g lies inside a w x h screen
// (0 <= x < w, 0 <= y < h). Throws Errc::out_of_bounds otherwise.
void check_gesture_bounds(const GestureCommand& g, int w, int h);

struct AdbConfig {
  std::string serial;          // empty = default device
  std::string adb_path = "adb";
  int settle_ms = 800;         // post-gesture delay before the next screenshot
};

// Drives a device through the platform adb tool via subprocess invocation.
// The rendered command strings are the tested contract; this wrapper stays
// deliberately thin.
std::unique_ptr<Device> make_adb_device(const AdbConfig& cfg);

}  // namespace swipekit
