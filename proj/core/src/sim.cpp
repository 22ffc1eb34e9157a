#include "swipekit/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swipekit/errors.hpp"

namespace swipekit {

int SimWidget::viewport_extent() const {
  return kind == WidgetKind::horizontal_carousel ? bbox.width() : bbox.height();
}

int SimWidget::max_scroll() const {
  if (kind != WidgetKind::vertical_list && kind != WidgetKind::horizontal_carousel) return 0;
  return std::max(0, items * item_extent - viewport_extent());
}

const SimScreen& SimApp::screen() const {
  auto it = screens.find(current);
  if (it == screens.end()) {
    throw Error(Errc::config_error, "current screen '" + current + "' does not exist");
  }
  return it->second;
}

SimScreen& SimApp::screen() {
  return const_cast<SimScreen&>(std::as_const(*this).screen());
}

double scroll_displacement(double distance_px, double duration_ms, const InertiaModel& m) {
  if (duration_ms <= 0.0) {
    throw Error(Errc::invalid_dimension, "duration must be positive");
  }
  if (distance_px <= 0.0) return 0.0;
  const double velocity = distance_px / duration_ms;
  return distance_px * (velocity >= m.v_threshold ? m.k_fast : m.k_slow);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double band_intensity(std::uint64_t id) {
  const std::uint64_t mixed = id * 11400714819323198485ull;  // 2^64 / golden ratio
  const double unit = static_cast<double>(mixed >> 11) * 0x1.0p-53;
  return 0.1 + 0.8 * unit;
}

namespace {

std::uint64_t widget_salt(const std::string& screen_id, std::size_t widget_index) {
  return fnv1a64(screen_id) ^ (0x9e3779b97f4a7c15ull * (widget_index + 1));
}

Axis widget_axis(const SimWidget& w) {
  switch (w.kind) {
    case WidgetKind::horizontal_carousel: return Axis::horizontal;
    case WidgetKind::vertical_list: return Axis::vertical;
    default: return w.bbox.height() > w.bbox.width() ? Axis::vertical : Axis::horizontal;
  }
}

void apply_scroll(SimWidget& w, PixelPoint start, PixelPoint end, int duration_ms,
                  const InertiaModel& inertia) {
  const Axis axis = widget_axis(w);
  const int delta = axis == Axis::vertical ? end.y - start.y : end.x - start.x;
  if (delta == 0) return;  // gesture orthogonal to the scroll axis
  const double disp =
      scroll_displacement(std::abs(static_cast<double>(delta)), duration_ms, inertia);
  const long moved = std::lround(disp);
  // Dragging content toward the negative axis (finger up/left) reveals later
  // items, i.e. increases the offset.
  const long next = delta < 0 ? w.offset_px + moved : w.offset_px - moved;
  w.offset_px = static_cast<int>(std::clamp<long>(next, 0, w.max_scroll()));
}

void apply_slider(SimWidget& w, PixelPoint end) {
  const Axis axis = widget_axis(w);
  const int lo = axis == Axis::vertical ? w.bbox.y1 : w.bbox.x1;
  const int extent = (axis == Axis::vertical ? w.bbox.height() : w.bbox.width()) - 1;
  if (extent <= 0) return;
  const int pos = axis == Axis::vertical ? end.y : end.x;
  w.slider_value = std::clamp(static_cast<double>(pos - lo) / extent, 0.0, 1.0);
}

}  // namespace

SimApp sim_step(const SimApp& app, const GestureCommand& g) {
  check_gesture_bounds(g, app.width, app.height);
  SimApp next = app;
  SimScreen& screen = next.screen();

  SimWidget* hit = nullptr;
  for (auto& w : screen.widgets) {
    if (w.contains(g.start)) {
      hit = &w;
      break;
    }
  }
  if (!hit) return next;  // swipes over empty background are no-ops

  switch (g.kind) {
    case GestureKind::tap:
      if (hit->kind == WidgetKind::button) {
        next.nav_stack.push_back(next.current);
        next.current = hit->target;
      }
      break;
    case GestureKind::swipe: {
      if (!g.end || !g.duration_ms) {
        throw Error(Errc::kind_mismatch, "swipe gesture missing end or duration");
      }
      if (hit->kind == WidgetKind::slider) {
        apply_slider(*hit, *g.end);
      } else if (hit->scrollable()) {
        apply_scroll(*hit, g.start, *g.end, *g.duration_ms, next.inertia);
      }
      break;
    }
    case GestureKind::long_press:
    case GestureKind::text:
      break;  // no sim widget reacts to these
  }
  return next;
}

namespace {

std::uint8_t to_u8(double intensity) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(intensity, 0.0, 1.0) * 255.0));
}

void fill_rect(ImageRgb& img, const BBox& r, std::uint8_t v) {
  const int x1 = std::clamp(r.x1, 0, img.width);
  const int x2 = std::clamp(r.x2, 0, img.width);
  const int y1 = std::clamp(r.y1, 0, img.height);
  const int y2 = std::clamp(r.y2, 0, img.height);
  for (int y = y1; y < y2; ++y) {
    std::uint8_t* row = img.at(x1, y);
    for (int x = x1; x < x2; ++x, row += 3) {
      row[0] = row[1] = row[2] = v;
    }
  }
}

constexpr double kBackground = 0.85;
constexpr double kEmptyContent = 0.95;
constexpr double kSliderTrack = 0.55;
constexpr double kSliderThumb = 0.10;
constexpr int kThumbHalfWidth = 12;

void render_list(ImageRgb& img, const SimWidget& w, std::uint64_t salt) {
  const bool vertical = w.kind == WidgetKind::vertical_list;
  const int lo = vertical ? w.bbox.y1 : w.bbox.x1;
  const int hi = vertical ? w.bbox.y2 : w.bbox.x2;
  int pos = lo;
  while (pos < hi) {
    const int content = pos - lo + w.offset_px;
    const int idx = content / w.item_extent;
    // Run until the end of this item's band.
    const int band_end = std::min(hi, pos + (w.item_extent - content % w.item_extent));
    const double intensity =
        idx < w.items ? band_intensity(salt + static_cast<std::uint64_t>(idx)) : kEmptyContent;
    BBox r = vertical ? BBox{w.bbox.x1, pos, w.bbox.x2, band_end}
                      : BBox{pos, w.bbox.y1, band_end, w.bbox.y2};
    fill_rect(img, r, to_u8(intensity));
    pos = band_end;
  }
}

void render_slider(ImageRgb& img, const SimWidget& w) {
  fill_rect(img, w.bbox, to_u8(kSliderTrack));
  const Axis axis = w.bbox.height() > w.bbox.width() ? Axis::vertical : Axis::horizontal;
  if (axis == Axis::horizontal) {
    const int cx = w.bbox.x1 + static_cast<int>(std::lround(w.slider_value * (w.bbox.width() - 1)));
    BBox thumb{std::max(w.bbox.x1, cx - kThumbHalfWidth), w.bbox.y1,
               std::min(w.bbox.x2, cx + kThumbHalfWidth), w.bbox.y2};
    fill_rect(img, thumb, to_u8(kSliderThumb));
  } else {
    const int cy = w.bbox.y1 + static_cast<int>(std::lround(w.slider_value * (w.bbox.height() - 1)));
    BBox thumb{w.bbox.x1, std::max(w.bbox.y1, cy - kThumbHalfWidth), w.bbox.x2,
               std::min(w.bbox.y2, cy + kThumbHalfWidth)};
    fill_rect(img, thumb, to_u8(kSliderThumb));
  }
}

}  // namespace

ImageRgb render(const SimApp& app) {
  ImageRgb img = ImageRgb::solid(app.width, app.height, to_u8(kBackground), to_u8(kBackground),
                                 to_u8(kBackground));
  const SimScreen& screen = app.screen();
  for (std::size_t i = 0; i < screen.widgets.size(); ++i) {
    const SimWidget& w = screen.widgets[i];
    switch (w.kind) {
      case WidgetKind::vertical_list:
      case WidgetKind::horizontal_carousel:
        render_list(img, w, widget_salt(screen.id, i));
        break;
      case WidgetKind::slider:
        render_slider(img, w);
        break;
      case WidgetKind::button:
        fill_rect(img, w.bbox, to_u8(band_intensity(fnv1a64(w.target))));
        break;
    }
  }
  return img;
}

std::string emit_hierarchy(const SimApp& app) {
  const SimScreen& screen = app.screen();
  std::ostringstream xml;
  xml << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  xml << "<hierarchy rotation=\"0\">\n";
  for (std::size_t i = 0; i < screen.widgets.size(); ++i) {
    const SimWidget& w = screen.widgets[i];
    const char* cls = nullptr;
    switch (w.kind) {
      case WidgetKind::vertical_list: cls = "android.widget.ListView"; break;
      case WidgetKind::horizontal_carousel: cls = "android.widget.HorizontalScrollView"; break;
      case WidgetKind::slider: cls = "android.widget.SeekBar"; break;
      case WidgetKind::button: cls = "android.widget.Button"; break;
    }
    xml << "  <node index=\"" << i << "\" class=\"" << cls << "\" scrollable=\""
        << (w.scrollable() ? "true" : "false") << "\" clickable=\""
        << (w.kind == WidgetKind::button ? "true" : "false") << "\" bounds=\"[" << w.bbox.x1
        << "," << w.bbox.y1 << "][" << w.bbox.x2 << "," << w.bbox.y2 << "]\" />\n";
  }
  xml << "</hierarchy>\n";
  return xml.str();
}

SimApp pop_screen(SimApp app) {
  if (!app.nav_stack.empty()) {
    app.current = app.nav_stack.back();
    app.nav_stack.pop_back();
  }
  return app;
}

namespace {

[[noreturn]] void scene_fail(const std::string& why) {
  throw Error(Errc::config_error, "scene: " + why);
}

BBox scene_bbox(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) scene_fail("bbox must be a 4-array");
  BBox b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
  if (!b.valid()) scene_fail("bbox corners must be ordered and non-negative");
  return b;
}

}  // namespace

SimApp load_scene(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) scene_fail("not a JSON object");

  SimApp app;
  app.width = j.value("width", 1080);
  app.height = j.value("height", 1920);
  if (app.width <= 0 || app.height <= 0) scene_fail("screen dimensions must be positive");
  app.seed = j.value("seed", 0ull);
  if (j.contains("inertia")) {
    const auto& in = j.at("inertia");
    app.inertia.k_fast = in.value("k_fast", app.inertia.k_fast);
    app.inertia.k_slow = in.value("k_slow", app.inertia.k_slow);
    app.inertia.v_threshold = in.value("v_threshold", app.inertia.v_threshold);
    if (!(app.inertia.k_fast > app.inertia.k_slow && app.inertia.k_slow > 0)) {
      scene_fail("inertia must satisfy k_fast > k_slow > 0");
    }
  }
  if (!j.contains("screens") || !j.at("screens").is_array() || j.at("screens").empty()) {
    scene_fail("needs a non-empty screens array");
  }
  for (const auto& js : j.at("screens")) {
    SimScreen screen;
    screen.id = js.value("id", std::string{});
    if (screen.id.empty()) scene_fail("every screen needs an id");
    if (app.screens.count(screen.id)) scene_fail("duplicate screen id '" + screen.id + "'");
    for (const auto& jw : js.value("widgets", nlohmann::json::array())) {
      SimWidget w;
      const std::string kind = jw.value("kind", std::string{});
      if (kind == "vertical_list") {
        w.kind = WidgetKind::vertical_list;
      } else if (kind == "horizontal_carousel") {
        w.kind = WidgetKind::horizontal_carousel;
      } else if (kind == "slider") {
        w.kind = WidgetKind::slider;
      } else if (kind == "button") {
        w.kind = WidgetKind::button;
      } else {
        scene_fail("unknown widget kind '" + kind + "'");
      }
      w.bbox = scene_bbox(jw.at("bbox"));
      if (w.bbox.x2 > app.width || w.bbox.y2 > app.height) {
        scene_fail("widget bbox leaves the screen");
      }
      if (w.kind == WidgetKind::vertical_list || w.kind == WidgetKind::horizontal_carousel) {
        w.items = jw.value("items", 0);
        w.item_extent = jw.value("item_extent", 0);
        if (w.items <= 0 || w.item_extent <= 0) {
          scene_fail("lists need positive items and item_extent");
        }
        w.offset_px = std::clamp(jw.value("offset", 0), 0, w.max_scroll());
      } else if (w.kind == WidgetKind::slider) {
        w.slider_value = std::clamp(jw.value("value", 0.5), 0.0, 1.0);
      } else {
        w.target = jw.value("target", std::string{});
        if (w.target.empty()) scene_fail("buttons need a target screen id");
      }
      screen.widgets.push_back(std::move(w));
    }
    app.screens.emplace(screen.id, std::move(screen));
  }
  app.current = j.value("start", std::string{});
  if (!app.screens.count(app.current)) scene_fail("start screen '" + app.current + "' not defined");
  for (const auto& [id, screen] : app.screens) {
    for (const auto& w : screen.widgets) {
      if (w.kind == WidgetKind::button && !app.screens.count(w.target)) {
        scene_fail("button on '" + id + "' targets unknown screen '" + w.target + "'");
      }
    }
  }
  return app;
}

SimApp load_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::config_error, "cannot open scene file " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scene(ss.str());
}

DeviceInfo SimDevice::info() {
  DeviceInfo di;
  di.id = "sim";
  di.width = app_.width;
  di.height = app_.height;
  return di;
}

}  // namespace swipekit
