#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swipekit/device.hpp"
#include "swipekit/geometry.hpp"
#include "swipekit/image.hpp"

namespace swipekit {

// Two-class inertia: a swipe whose velocity reaches v_threshold scrolls
// k_fast times its on-screen distance, slower swipes k_slow times. Mirrors
// the fast/slow duration discretization and keeps expected offsets
// hand-computable.
struct InertiaModel {
  double k_fast = 2.5;
  double k_slow = 1.0;
  double v_threshold = 1.2;  // px per ms
};

enum class WidgetKind { vertical_list, horizontal_carousel, slider, button };

struct SimWidget {
  WidgetKind kind = WidgetKind::vertical_list;
  BBox bbox;                  // pixels
  int items = 0;              // lists and carousels
  int item_extent = 0;        // item height (vertical) or width (horizontal)
  int offset_px = 0;          // scroll offset, clamped to [0, max_scroll()]
  double slider_value = 0.5;  // sliders, in [0, 1]
  std::string target;         // buttons: destination screen id

  bool scrollable() const { return kind != WidgetKind::button; }
  int viewport_extent() const;
  int max_scroll() const;
  bool contains(PixelPoint p) const {  // half-open, matching raster regions
    return p.x >= bbox.x1 && p.x < bbox.x2 && p.y >= bbox.y1 && p.y < bbox.y2;
  }
};

struct SimScreen {
  std::string id;
  std::vector<SimWidget> widgets;
};

// A whole simulated app. Plain value type: sim_step returns the successor
// state, so snapshots are ordinary copies.
struct SimApp {
  int width = 1080;
  int height = 1920;
  std::map<std::string, SimScreen> screens;
  std::string current;
  std::vector<std::string> nav_stack;
  std::uint64_t seed = 0;
  InertiaModel inertia;

  const SimScreen& screen() const;
  SimScreen& screen();
};

// Distance actually scrolled for a gesture covering distance_px in
// duration_ms. Throws Errc::invalid_dimension on a nonpositive duration.
double scroll_displacement(double distance_px, double duration_ms, const InertiaModel& m);

// Band intensity for item id, in [0.1, 0.9]. Fibonacci hashing keeps
// consecutive ids at least 0.3 apart, so single-item scrolls always clear the
// pixel-diff threshold.
double band_intensity(std::uint64_t id);

std::uint64_t fnv1a64(std::string_view s);

// Applies one gesture: taps navigate through buttons, swipes drag sliders or
// scroll lists/carousels (velocity-dependent, offsets clamped), anything else
// is a no-op. Throws Errc::out_of_bounds for gestures outside the screen.
SimApp sim_step(const SimApp& app, const GestureCommand& g);

// Deterministic raster of the current screen: identical state, identical bytes.
ImageRgb render(const SimApp& app);

// uiautomator-style XML for the current screen; lists, carousels and sliders
// carry scrollable="true", buttons clickable="true".
std::string emit_hierarchy(const SimApp& app);

// Pops one navigation level; no-op at the root.
SimApp pop_screen(SimApp app);

// Declarative scene files (see docs/scene-format.md). Throws
// Errc::config_error on schema violations.
SimApp load_scene(const std::string& json_text);
SimApp load_scene_file(const std::string& path);

// Device adapter over a SimApp. Gestures mutate the owned state atomically,
// so no settle delay is needed.
class SimDevice : public Device {
 public:
  explicit SimDevice(SimApp app) : app_(std::move(app)) {}

  DeviceInfo info() override;
  ImageRgb screenshot() override { return render(app_); }
  void gesture(const GestureCommand& g) override { app_ = sim_step(app_, g); }
  std::string dump_hierarchy() override { return emit_hierarchy(app_); }
  void back() override { app_ = pop_screen(std::move(app_)); }

  const SimApp& app() const { return app_; }

 protected:
  SimApp app_;
};

}  // namespace swipekit
