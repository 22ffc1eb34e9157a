#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swipekit/gateway.hpp"
#include "swipekit/geometry.hpp"
#include "swipekit/swipe.hpp"

namespace swipekit {

enum class ScrollAxes { horizontal, vertical, both };
enum class DetectorSource { hierarchy, vlm, parser };

std::string_view scroll_axes_name(ScrollAxes a);
std::string_view detector_source_name(DetectorSource s);

// A detected swipe target. bbox is normalized to [0,1000].
struct ScrollableTarget {
  SwipeKind kind = SwipeKind::region;
  BBox bbox;
  ScrollAxes axes = ScrollAxes::vertical;
  std::string label;
  DetectorSource source = DetectorSource::hierarchy;
};

struct ClickableElement {
  BBox bbox;  // normalized
  std::string label;
};

inline constexpr int kMaxRegionsPerScreen = 6;

// Prompt templates loaded from versioned text assets.
struct PromptLibrary {
  std::string region_detect;   // single-image scrollable-region prompt
  std::string describe_swipe;  // two-image description prompt with a <swipe> slot

  // Loads region_detect.txt and describe_swipe.txt from dir.
  static PromptLibrary load(const std::string& dir);
};

// Asks the vision model for scrollable regions on one screenshot. The model
// reply must be a JSON array of {type, direction, bbox, description}; one
// code-fence-stripping pass is applied before parsing. bbox values are
// clamped to [0,1000]; entries with an unknown direction or an inverted box
// are dropped, and at most 6 regions are kept.
// Throws Errc::unparseable_json when no JSON array can be recovered.
std::vector<ScrollableTarget> detect_regions(Transport& transport, const VisionEndpoint& endpoint,
                                             const std::vector<std::uint8_t>& screenshot_png,
                                             const PromptLibrary& prompts);

struct HierarchyParse {
  std::vector<ScrollableTarget> targets;     // nodes with scrollable/is_scrollable = true
  std::vector<ClickableElement> clickables;  // nodes with clickable = true
  int skipped_nodes = 0;                     // scrollable nodes without usable bounds
};

// Parses a UI-hierarchy dump (uiautomator-style XML). Bounds come from the
// standard "[x1,y1][x2,y2]" attribute and are normalized against the given
// screen size. Attribute order and whitespace are irrelevant.
// Throws Errc::malformed_document on broken XML.
HierarchyParse parse_hierarchy_full(const std::string& xml, int screen_w, int screen_h);

// The scrollable-component view of parse_hierarchy_full.
std::vector<ScrollableTarget> parse_hierarchy(const std::string& xml, int screen_w, int screen_h);

struct ParserEndpoint {
  std::string url;  // base of an element-parsing service
};

struct ParsedElements {
  std::vector<ScrollableTarget> scrollables;
  std::vector<ClickableElement> clickables;
};

// Posts the screenshot to the element-parser service (POST /parse with a
// base64 image; reply {"elements": [{bbox, kind, label}]}, bbox normalized).
// Overlapping boxes are all kept; downstream verification dedupes by effect.
// Throws Errc::schema_mismatch when the reply shape is wrong.
ParsedElements detect_components(Transport& transport,
                                 const std::vector<std::uint8_t>& screenshot_png);

struct SwipeDescription {
  std::string command;
  std::string reason;
};

// Builds the two-image description prompt (before/after plus the serialized
// swipe in the <swipe> slot) and parses the {command, reason} reply. Strict:
// a missing key is unparseable, an empty command is Errc::empty_command.
SwipeDescription describe_swipe(Transport& transport, const VisionEndpoint& endpoint,
                                const std::vector<std::uint8_t>& before_png,
                                const std::vector<std::uint8_t>& after_png, const SwipeSpec& spec,
                                const PromptLibrary& prompts);

// The serialized swipe block injected into the description prompt.
std::string swipe_prompt_block(const SwipeSpec& spec);

// Strips one leading/trailing markdown code fence pair, if present.
std::string strip_code_fence(const std::string& text);

}  // namespace swipekit
