#include "swipekit/device.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <regex>
#include <thread>

#include "swipekit/errors.hpp"

namespace swipekit {

GestureCommand GestureCommand::make_tap(PixelPoint at) {
  GestureCommand g;
  g.kind = GestureKind::tap;
  g.start = at;
  return g;
}

GestureCommand GestureCommand::make_swipe(PixelPoint from, PixelPoint to, int duration_ms) {
  GestureCommand g;
  g.kind = GestureKind::swipe;
  g.start = from;
  g.end = to;
  g.duration_ms = duration_ms;
  return g;
}

GestureCommand GestureCommand::make_long_press(PixelPoint at, int duration_ms) {
  GestureCommand g;
  g.kind = GestureKind::long_press;
  g.start = at;
  g.duration_ms = duration_ms;
  return g;
}

GestureCommand GestureCommand::make_text(PixelPoint at, std::string text) {
  GestureCommand g;
  g.kind = GestureKind::text;
  g.start = at;
  g.text = std::move(text);
  return g;
}

std::string render_adb_swipe(const GestureCommand& g) {
  if (g.kind != GestureKind::swipe) {
    throw Error(Errc::kind_mismatch, "render_adb_swipe needs a swipe gesture");
  }
  if (!g.end || !g.duration_ms) {
    throw Error(Errc::kind_mismatch, "swipe gesture missing end or duration");
  }
  return "input swipe " + std::to_string(g.start.x) + " " + std::to_string(g.start.y) + " " +
         std::to_string(g.end->x) + " " + std::to_string(g.end->y) + " " +
         std::to_string(*g.duration_ms);
}

namespace {

std::string escape_shell_text(const std::string& text) {
  // `input text` treats %s as space; spaces themselves must be encoded.
  std::string out;
  for (char c : text) {
    if (c == ' ') {
      out += "%s";
    } else if (c == '\'' || c == '"' || c == '\\' || c == '&' || c == '|' || c == ';' ||
               c == '(' || c == ')' || c == '<' || c == '>') {
      out.push_back('\\');
      out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_adb_command(const GestureCommand& g) {
  switch (g.kind) {
    case GestureKind::swipe:
      return render_adb_swipe(g);
    case GestureKind::tap:
      return "input tap " + std::to_string(g.start.x) + " " + std::to_string(g.start.y);
    case GestureKind::long_press: {
      if (!g.duration_ms) {
        throw Error(Errc::kind_mismatch, "long_press gesture missing duration");
      }
      // Standard idiom: a zero-distance swipe held for the duration.
      const std::string x = std::to_string(g.start.x);
      const std::string y = std::to_string(g.start.y);
      return "input swipe " + x + " " + y + " " + x + " " + y + " " +
             std::to_string(*g.duration_ms);
    }
    case GestureKind::text:
      if (!g.text) {
        throw Error(Errc::kind_mismatch, "text gesture missing text");
      }
      return "input text " + escape_shell_text(*g.text);
  }
  throw Error(Errc::kind_mismatch, "unknown gesture kind");
}

void check_gesture_bounds(const GestureCommand& g, int w, int h) {
  auto check = [&](PixelPoint p) {
    if (p.x < 0 || p.y < 0 || p.x >= w || p.y >= h) {
      throw Error(Errc::out_of_bounds, "gesture coordinate (" + std::to_string(p.x) + "," +
                                           std::to_string(p.y) + ") outside " +
                                           std::to_string(w) + "x" + std::to_string(h));
    }
  };
  check(g.start);
  if (g.end) check(*g.end);
}

namespace {

class AdbDevice final : public Device {
 public:
  explicit AdbDevice(AdbConfig cfg) : cfg_(std::move(cfg)) {}

  DeviceInfo info() override {
    if (!info_) {
      const std::string out = run_capture(base_cmd() + " shell wm size");
      std::smatch m;
      static const std::regex size_re(R"((\d+)x(\d+))");
      if (!std::regex_search(out, m, size_re)) {
        throw Error(Errc::device_unreachable, "could not read screen size: " + out);
      }
      DeviceInfo di;
      di.id = cfg_.serial.empty() ? "default" : cfg_.serial;
      di.width = std::stoi(m[1]);
      di.height = std::stoi(m[2]);
      info_ = di;
    }
    return *info_;
  }

  ImageRgb screenshot() override {
    const std::string raw = run_capture(base_cmd() + " exec-out screencap -p", true);
    std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
    try {
      return decode_png(bytes);
    } catch (const Error&) {
      throw Error(Errc::decode_failure, "screencap did not return a decodable PNG");
    }
  }

  void gesture(const GestureCommand& g) override {
    const DeviceInfo di = info();
    check_gesture_bounds(g, di.width, di.height);
    run_capture(base_cmd() + " shell " + render_adb_command(g));
    std::this_thread::sleep_for(std::chrono::milliseconds(cfg_.settle_ms));
  }

  std::string dump_hierarchy() override {
    const std::string out =
        run_capture(base_cmd() + " exec-out uiautomator dump /dev/tty", true);
    const std::size_t start = out.find("<?xml");
    if (start == std::string::npos) {
      throw Error(Errc::dump_failure, "uiautomator produced no XML");
    }
    std::size_t end = out.rfind('>');
    return out.substr(start, end == std::string::npos ? std::string::npos : end - start + 1);
  }

  void back() override {
    run_capture(base_cmd() + " shell input keyevent KEYCODE_BACK");
    std::this_thread::sleep_for(std::chrono::milliseconds(cfg_.settle_ms));
  }

 private:
  std::string base_cmd() const {
    return cfg_.serial.empty() ? cfg_.adb_path : cfg_.adb_path + " -s " + cfg_.serial;
  }

  std::string run_capture(const std::string& cmd, bool binary = false) const {
    FILE* pipe = popen((cmd + (binary ? "" : " 2>/dev/null")).c_str(), "r");
    if (!pipe) {
      throw Error(Errc::device_unreachable, "cannot spawn: " + cmd);
    }
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
      out.append(buf.data(), n);
    }
    const int rc = pclose(pipe);
    if (rc != 0) {
      throw Error(Errc::device_unreachable, "command failed (" + std::to_string(rc) + "): " + cmd);
    }
    return out;
  }

  AdbConfig cfg_;
  std::optional<DeviceInfo> info_;
};

}  // namespace

std::unique_ptr<Device> make_adb_device(const AdbConfig& cfg) {
  return std::make_unique<AdbDevice>(cfg);
}

}  // namespace swipekit
