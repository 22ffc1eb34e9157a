#include "swipekit/detectors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swipekit/errors.hpp"

namespace swipekit {

std::string_view scroll_axes_name(ScrollAxes a) {
  switch (a) {
    case ScrollAxes::horizontal: return "horizontal";
    case ScrollAxes::vertical: return "vertical";
    case ScrollAxes::both: return "both";
  }
  return "vertical";
}

std::string_view detector_source_name(DetectorSource s) {
  switch (s) {
    case DetectorSource::hierarchy: return "hierarchy";
    case DetectorSource::vlm: return "vlm";
    case DetectorSource::parser: return "parser";
  }
  return "hierarchy";
}

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::config_error, "cannot open prompt asset " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

PromptLibrary PromptLibrary::load(const std::string& dir) {
  PromptLibrary lib;
  lib.region_detect = read_text_file(dir + "/region_detect.txt");
  lib.describe_swipe = read_text_file(dir + "/describe_swipe.txt");
  return lib;
}

std::string strip_code_fence(const std::string& text) {
  std::string t = trim(text);
  if (t.rfind("```", 0) != 0) return t;
  // Drop the opening fence line (``` or ```json) and a trailing fence.
  std::size_t nl = t.find('\n');
  if (nl == std::string::npos) return t;
  std::string body = t.substr(nl + 1);
  std::size_t close = body.rfind("```");
  if (close != std::string::npos) {
    body = body.substr(0, close);
  }
  return trim(body);
}

namespace {

nlohmann::json parse_model_json(const std::string& raw) {
  nlohmann::json j = nlohmann::json::parse(raw, nullptr, false);
  if (!j.is_discarded()) return j;
  // One stripped-code-fence retry pass before giving up.
  j = nlohmann::json::parse(strip_code_fence(raw), nullptr, false);
  if (!j.is_discarded()) return j;
  throw Error(Errc::unparseable_json, "model reply is not JSON");
}

int clamp_norm(double v) {
  return std::clamp(static_cast<int>(round_half_away(v)), 0, kNormMax);
}

}  // namespace

std::vector<ScrollableTarget> detect_regions(Transport& transport, const VisionEndpoint& endpoint,
                                             const std::vector<std::uint8_t>& screenshot_png,
                                             const PromptLibrary& prompts) {
  VisionRequest req;
  req.images.push_back(screenshot_png);
  req.prompt = prompts.region_detect;
  const VisionResponse res = chat_vision(transport, req, endpoint);

  nlohmann::json j = parse_model_json(res.text);
  if (!j.is_array()) {
    throw Error(Errc::unparseable_json, "expected a JSON array of regions");
  }
  std::vector<ScrollableTarget> out;
  for (const auto& entry : j) {
    if (out.size() >= kMaxRegionsPerScreen) break;
    if (!entry.is_object() || !entry.contains("direction") || !entry.contains("bbox")) continue;
    const auto& dir = entry.at("direction");
    const auto& box = entry.at("bbox");
    if (!dir.is_string() || !box.is_array() || box.size() != 4) continue;

    ScrollAxes axes;
    const std::string d = dir.get<std::string>();
    if (d == "horizontal") {
      axes = ScrollAxes::horizontal;
    } else if (d == "vertical") {
      axes = ScrollAxes::vertical;
    } else if (d == "both") {
      axes = ScrollAxes::both;
    } else {
      continue;  // invalid entries are dropped, not repaired
    }
    bool numeric = true;
    for (const auto& v : box) numeric = numeric && v.is_number();
    if (!numeric) continue;

    BBox bbox{clamp_norm(box[0].get<double>()), clamp_norm(box[1].get<double>()),
              clamp_norm(box[2].get<double>()), clamp_norm(box[3].get<double>())};
    if (bbox.x1 > bbox.x2 || bbox.y1 > bbox.y2) continue;

    ScrollableTarget t;
    t.kind = SwipeKind::region;
    t.bbox = bbox;
    t.axes = axes;
    std::string type = entry.value("type", std::string{});
    std::string desc = entry.value("description", std::string{});
    t.label = desc.empty() ? type : (type.empty() ? desc : type + ": " + desc);
    t.source = DetectorSource::vlm;
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

struct XmlAttr {
  std::string name;
  std::string value;
};

// Minimal scanner for flat uiautomator-style dumps: start/empty/end tags with
// double-quoted attributes, plus declarations and comments. No entities, no
// nesting semantics beyond balance checking.
class XmlScanner {
 public:
  explicit XmlScanner(const std::string& text) : text_(text) {}

  // Calls fn(tag_name, attrs) for every start or empty-element tag.
  template <typename Fn>
  void scan(Fn&& fn) {
    std::size_t i = 0;
    int depth = 0;
    while (i < text_.size()) {
      std::size_t lt = text_.find('<', i);
      if (lt == std::string::npos) break;
      if (text_.compare(lt, 4, "<!--") == 0) {
        std::size_t end = text_.find("-->", lt);
        if (end == std::string::npos) fail("unterminated comment");
        i = end + 3;
        continue;
      }
      if (text_.compare(lt, 2, "<?") == 0) {
        std::size_t end = text_.find("?>", lt);
        if (end == std::string::npos) fail("unterminated declaration");
        i = end + 2;
        continue;
      }
      std::size_t gt = find_tag_end(lt);
      if (text_[lt + 1] == '/') {
        if (--depth < 0) fail("unbalanced closing tag");
        i = gt + 1;
        continue;
      }
      const bool self_closing = text_[gt - 1] == '/';
      std::size_t body_end = self_closing ? gt - 1 : gt;
      std::size_t p = lt + 1;
      std::string name;
      while (p < body_end && !std::isspace(static_cast<unsigned char>(text_[p]))) {
        name.push_back(text_[p++]);
      }
      if (name.empty()) fail("tag without a name");
      std::vector<XmlAttr> attrs = parse_attrs(p, body_end);
      fn(name, attrs);
      if (!self_closing) ++depth;
      i = gt + 1;
    }
    if (depth != 0) fail("unclosed element");
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::malformed_document, why);
  }

  std::size_t find_tag_end(std::size_t lt) const {
    bool in_quote = false;
    for (std::size_t i = lt + 1; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '"') in_quote = !in_quote;
      else if (c == '>' && !in_quote) return i;
    }
    fail("unterminated tag");
  }

  std::vector<XmlAttr> parse_attrs(std::size_t p, std::size_t end) const {
    std::vector<XmlAttr> attrs;
    while (p < end) {
      while (p < end && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
      if (p >= end) break;
      std::string name;
      while (p < end && text_[p] != '=' &&
             !std::isspace(static_cast<unsigned char>(text_[p]))) {
        name.push_back(text_[p++]);
      }
      while (p < end && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
      if (p >= end || text_[p] != '=') fail("attribute '" + name + "' missing value");
      ++p;
      while (p < end && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
      if (p >= end || text_[p] != '"') fail("attribute '" + name + "' value not quoted");
      std::size_t close = text_.find('"', p + 1);
      if (close == std::string::npos || close > end) fail("unterminated attribute value");
      attrs.push_back({std::move(name), text_.substr(p + 1, close - p - 1)});
      p = close + 1;
    }
    return attrs;
  }

  const std::string& text_;
};

// Parses the standard "[x1,y1][x2,y2]" bounds attribute.
bool parse_bounds(const std::string& s, BBox& out) {
  int vals[4];
  std::size_t p = 0;
  for (int corner = 0; corner < 2; ++corner) {
    if (p >= s.size() || s[p] != '[') return false;
    ++p;
    for (int k = 0; k < 2; ++k) {
      std::size_t end;
      try {
        vals[corner * 2 + k] = std::stoi(s.substr(p), &end);
      } catch (...) {
        return false;
      }
      p += end;
      const char expect = k == 0 ? ',' : ']';
      if (p >= s.size() || s[p] != expect) return false;
      ++p;
    }
  }
  if (p != s.size()) return false;
  out = BBox{vals[0], vals[1], vals[2], vals[3]};
  return true;
}

bool attr_is_true(const std::vector<XmlAttr>& attrs, std::string_view name) {
  for (const auto& a : attrs) {
    if (a.name == name) return a.value == "true";
  }
  return false;
}

const std::string* attr_value(const std::vector<XmlAttr>& attrs, std::string_view name) {
  for (const auto& a : attrs) {
    if (a.name == name) return &a.value;
  }
  return nullptr;
}

}  // namespace

HierarchyParse parse_hierarchy_full(const std::string& xml, int screen_w, int screen_h) {
  if (screen_w <= 0 || screen_h <= 0) {
    throw Error(Errc::invalid_dimension, "screen must have positive dimensions");
  }
  HierarchyParse result;
  XmlScanner scanner(xml);
  scanner.scan([&](const std::string&, const std::vector<XmlAttr>& attrs) {
    const bool scrollable = attr_is_true(attrs, "scrollable") || attr_is_true(attrs, "is_scrollable");
    const bool clickable = attr_is_true(attrs, "clickable");
    if (!scrollable && !clickable) return;

    const std::string* bounds = attr_value(attrs, "bounds");
    BBox px;
    if (!bounds || !parse_bounds(*bounds, px) || !px.valid()) {
      if (scrollable) ++result.skipped_nodes;
      return;
    }
    const BBox norm = normalize_bbox(px, screen_w, screen_h);
    const std::string* cls = attr_value(attrs, "class");
    const std::string label = cls ? *cls : std::string{};
    if (scrollable) {
      ScrollableTarget t;
      t.kind = SwipeKind::component;
      t.bbox = norm;
      t.axes = px.height() > px.width() ? ScrollAxes::vertical : ScrollAxes::horizontal;
      t.label = label;
      t.source = DetectorSource::hierarchy;
      result.targets.push_back(std::move(t));
    }
    if (clickable) {
      result.clickables.push_back({norm, label});
    }
  });
  return result;
}

std::vector<ScrollableTarget> parse_hierarchy(const std::string& xml, int screen_w, int screen_h) {
  return parse_hierarchy_full(xml, screen_w, screen_h).targets;
}

ParsedElements detect_components(Transport& transport,
                                 const std::vector<std::uint8_t>& screenshot_png) {
  nlohmann::ordered_json body;
  body["image"] = base64_encode(screenshot_png.data(), screenshot_png.size());
  const HttpResponse res = transport.post("/parse", body.dump(), {});
  if (res.status < 200 || res.status >= 300) {
    throw Error(Errc::transport_failure, "parser returned " + std::to_string(res.status));
  }
  nlohmann::json j = nlohmann::json::parse(res.body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("elements") ||
      !j.at("elements").is_array()) {
    throw Error(Errc::schema_mismatch, "parser reply missing an elements array");
  }
  ParsedElements out;
  for (const auto& e : j.at("elements")) {
    if (!e.is_object() || !e.contains("bbox") || !e.at("bbox").is_array() ||
        e.at("bbox").size() != 4) {
      throw Error(Errc::schema_mismatch, "element missing a 4-array bbox");
    }
    const auto& box = e.at("bbox");
    BBox bbox{clamp_norm(box[0].get<double>()), clamp_norm(box[1].get<double>()),
              clamp_norm(box[2].get<double>()), clamp_norm(box[3].get<double>())};
    if (bbox.x1 > bbox.x2 || bbox.y1 > bbox.y2) continue;
    const std::string kind = e.value("kind", std::string{});
    const std::string label = e.value("label", std::string{});
    if (kind == "scrollable") {
      ScrollableTarget t;
      t.kind = SwipeKind::component;
      t.bbox = bbox;
      t.axes = bbox.height() > bbox.width() ? ScrollAxes::vertical : ScrollAxes::horizontal;
      t.label = label;
      t.source = DetectorSource::parser;
      out.scrollables.push_back(std::move(t));
    } else if (kind == "clickable") {
      out.clickables.push_back({bbox, label});
    }
    // unknown kinds are skipped; verification filters false positives anyway
  }
  return out;
}

std::string swipe_prompt_block(const SwipeSpec& spec) {
  nlohmann::ordered_json j;
  j["type"] = swipe_kind_name(spec.kind);
  j["start"] = {spec.start.x, spec.start.y};
  j["end"] = {spec.end.x, spec.end.y};
  j["direction"] = direction_name(spec.direction);
  j["duration"] = spec.duration_ms;
  j["bbox"] = {spec.bbox.x1, spec.bbox.y1, spec.bbox.x2, spec.bbox.y2};
  return j.dump(2);
}

SwipeDescription describe_swipe(Transport& transport, const VisionEndpoint& endpoint,
                                const std::vector<std::uint8_t>& before_png,
                                const std::vector<std::uint8_t>& after_png, const SwipeSpec& spec,
                                const PromptLibrary& prompts) {
  std::string prompt = prompts.describe_swipe;
  const std::string slot = "<swipe>";
  std::size_t pos = prompt.find(slot);
  if (pos == std::string::npos) {
    throw Error(Errc::config_error, "description template is missing the <swipe> slot");
  }
  prompt.replace(pos, slot.size(), swipe_prompt_block(spec));

  VisionRequest req;
  req.images.push_back(before_png);
  req.images.push_back(after_png);
  req.prompt = std::move(prompt);
  const VisionResponse res = chat_vision(transport, req, endpoint);

  nlohmann::json j = parse_model_json(res.text);
  if (!j.is_object() || !j.contains("command") || !j.contains("reason") ||
      !j.at("command").is_string() || !j.at("reason").is_string()) {
    throw Error(Errc::unparseable_json, "expected {\"command\", \"reason\"}");
  }
  SwipeDescription out{j.at("command").get<std::string>(), j.at("reason").get<std::string>()};
  if (out.command.empty()) {
    throw Error(Errc::empty_command, "model produced an empty command");
  }
  return out;
}

}  // namespace swipekit
