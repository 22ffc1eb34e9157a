#include <doctest.h>

#include <json.hpp>

#include "swipekit/detectors.hpp"
#include "swipekit/errors.hpp"

#include "support/test_util.hpp"

using namespace swipekit;
using swipekit::testing::MockTransport;

namespace {

VisionEndpoint mock_endpoint() {
  VisionEndpoint e;
  e.url = "http://mock";
  e.model = "m";
  e.retry_backoff_ms = 0;
  return e;
}

PromptLibrary load_prompts() {
  return PromptLibrary::load(swipekit::testing::source_root() + "/assets/prompts");
}

const std::vector<std::uint8_t> kPng = {0x89, 0x50, 0x4E, 0x47};

}  // namespace

TEST_CASE("detect_regions parses the documented sample reply") {
  MockTransport mock;
  mock.default_body = MockTransport::chat_reply(R"([
    {
      "type": "content feed",
      "direction": "vertical",
      "bbox": [0, 0, 1000, 1000],
      "description": "Swipe up or down to view more content in the feed"
    }
  ])");
  const auto prompts = load_prompts();
  const auto regions = detect_regions(mock, mock_endpoint(), kPng, prompts);
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].kind == SwipeKind::region);
  CHECK(regions[0].axes == ScrollAxes::vertical);
  CHECK(regions[0].bbox == BBox{0, 0, 1000, 1000});
  CHECK(regions[0].source == DetectorSource::vlm);
  CHECK(regions[0].label.find("content feed") != std::string::npos);

  // The outbound prompt is the template, verbatim.
  const auto body = nlohmann::json::parse(mock.calls.at(0).body);
  CHECK(body["messages"][0]["content"][1]["text"] == prompts.region_detect);
}

TEST_CASE("detect_regions truncates to six and drops invalid entries") {
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i < 8; ++i) {
    arr.push_back({{"type", "list"},
                   {"direction", i % 2 ? "horizontal" : "vertical"},
                   {"bbox", {0, i * 10, 500, i * 10 + 100}},
                   {"description", "d"}});
  }
  arr.push_back({{"type", "x"}, {"direction", "diagonal"}, {"bbox", {0, 0, 10, 10}}});
  arr.push_back({{"type", "x"}, {"direction", "vertical"}, {"bbox", {900, 0, 100, 10}}});

  MockTransport mock;
  mock.default_body = MockTransport::chat_reply(arr.dump());
  const auto regions = detect_regions(mock, mock_endpoint(), kPng, load_prompts());
  CHECK(regions.size() == 6);
}

TEST_CASE("detect_regions clamps out-of-frame boxes") {
  MockTransport mock;
  mock.default_body = MockTransport::chat_reply(
      R"([{"type":"list","direction":"both","bbox":[-50, 20, 1400, 900],"description":"d"}])");
  const auto regions = detect_regions(mock, mock_endpoint(), kPng, load_prompts());
  REQUIRE(regions.size() == 1);
  CHECK(regions[0].bbox == BBox{0, 20, 1000, 900});
  CHECK(regions[0].axes == ScrollAxes::both);
}

TEST_CASE("detect_regions strips one code fence, then fails on prose") {
  MockTransport fenced;
  fenced.default_body = MockTransport::chat_reply(
      "```json\n[{\"type\":\"list\",\"direction\":\"vertical\",\"bbox\":[0,0,500,900],"
      "\"description\":\"d\"}]\n```");
  CHECK(detect_regions(fenced, mock_endpoint(), kPng, load_prompts()).size() == 1);

  MockTransport prose;
  prose.default_body = MockTransport::chat_reply("I cannot find any scrollable regions, sorry.");
  try {
    detect_regions(prose, mock_endpoint(), kPng, load_prompts());
    FAIL("expected unparseable-json");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unparseable_json);
  }

  MockTransport empty;
  empty.default_body = MockTransport::chat_reply("[]");
  CHECK(detect_regions(empty, mock_endpoint(), kPng, load_prompts()).empty());
}

TEST_CASE("parse_hierarchy normalizes the standard bounds attribute") {
  const std::string xml =
      "<?xml version=\"1.0\"?>\n<hierarchy>"
      "<node class=\"android.widget.ListView\" scrollable=\"true\" bounds=\"[0,210][1080,1850]\"/>"
      "</hierarchy>";
  const auto targets = parse_hierarchy(xml, 1080, 1920);
  REQUIRE(targets.size() == 1);
  CHECK(targets[0].kind == SwipeKind::component);
  CHECK(targets[0].bbox == BBox{0, 109, 1000, 964});
  CHECK(targets[0].source == DetectorSource::hierarchy);
  CHECK(targets[0].axes == ScrollAxes::vertical);
}

TEST_CASE("parse_hierarchy accepts is_scrollable and attribute reordering") {
  const std::string a =
      "<hierarchy><node bounds=\"[0,0][100,400]\" is_scrollable=\"true\"/></hierarchy>";
  const std::string b =
      "<hierarchy><node   is_scrollable = \"true\"\n bounds=\"[0,0][100,400]\" /></hierarchy>";
  const auto ta = parse_hierarchy(a, 1080, 1920);
  const auto tb = parse_hierarchy(b, 1080, 1920);
  REQUIRE(ta.size() == 1);
  REQUIRE(tb.size() == 1);
  CHECK(ta[0].bbox == tb[0].bbox);
}

TEST_CASE("parse_hierarchy: no scrollable nodes, skipped nodes, malformed documents") {
  CHECK(parse_hierarchy("<hierarchy><node clickable=\"false\"/></hierarchy>", 100, 100).empty());

  const auto parsed = parse_hierarchy_full(
      "<hierarchy><node scrollable=\"true\"/>"
      "<node scrollable=\"true\" bounds=\"oops\"/></hierarchy>",
      100, 100);
  CHECK(parsed.targets.empty());
  CHECK(parsed.skipped_nodes == 2);

  CHECK_THROWS_AS(parse_hierarchy("<hierarchy><node scrollable=\"true\"", 100, 100), Error);
  try {
    parse_hierarchy("<a><b></b>", 100, 100);
    FAIL("expected malformed-document");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::malformed_document);
  }
}

TEST_CASE("parse_hierarchy_full collects clickables for the crawler") {
  const std::string xml =
      "<hierarchy>"
      "<node class=\"b\" clickable=\"true\" bounds=\"[0,0][200,100]\"/>"
      "<node class=\"l\" scrollable=\"true\" bounds=\"[0,100][1000,2000]\"/>"
      "</hierarchy>";
  const auto parsed = parse_hierarchy_full(xml, 1000, 2000);
  REQUIRE(parsed.clickables.size() == 1);
  CHECK(parsed.clickables[0].bbox == BBox{0, 0, 200, 50});
  REQUIRE(parsed.targets.size() == 1);
}

TEST_CASE("detect_components maps parser elements and tolerates overlap") {
  MockTransport mock;
  mock.default_body = nlohmann::json{
      {"elements",
       {{{"bbox", {100, 800, 900, 860}}, {"kind", "scrollable"}, {"label", "slider"}},
        {{"bbox", {120, 800, 880, 860}}, {"kind", "scrollable"}, {"label", "slider-dup"}},
        {{"bbox", {10, 10, 200, 80}}, {"kind", "clickable"}, {"label", "btn"}},
        {{"bbox", {0, 0, 50, 50}}, {"kind", "decoration"}, {"label", "ignored"}}}}}
                          .dump();
  const auto parsed = detect_components(mock, kPng);
  CHECK(parsed.scrollables.size() == 2);  // overlapping boxes are both kept
  CHECK(parsed.clickables.size() == 1);
  CHECK(parsed.scrollables[0].kind == SwipeKind::component);
  CHECK(parsed.scrollables[0].source == DetectorSource::parser);

  MockTransport empty;
  empty.default_body = R"({"elements": []})";
  const auto none = detect_components(empty, kPng);
  CHECK(none.scrollables.empty());
  CHECK(none.clickables.empty());

  MockTransport broken;
  broken.default_body = R"({"stuff": 1})";
  try {
    detect_components(broken, kPng);
    FAIL("expected schema-mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::schema_mismatch);
  }
}

TEST_CASE("describe_swipe builds the two-image prompt and parses the reply") {
  MockTransport mock;
  mock.default_body = MockTransport::chat_reply(R"({
    "command": "Swipe up on the main feed to view more content.",
    "reason": "The swipe moves upward within the main content area."
  })");
  SwipeSpec spec;
  spec.kind = SwipeKind::region;
  spec.start = {500, 700};
  spec.end = {500, 100};
  spec.direction = Direction::up;
  spec.duration_ms = 150;
  spec.bbox = {0, 100, 1000, 900};

  const auto prompts = load_prompts();
  const auto desc =
      describe_swipe(mock, mock_endpoint(), kPng, {0x02}, spec, prompts);
  CHECK(desc.command == "Swipe up on the main feed to view more content.");
  CHECK_FALSE(desc.reason.empty());

  const auto body = nlohmann::json::parse(mock.calls.at(0).body);
  const auto& content = body["messages"][0]["content"];
  REQUIRE(content.size() == 3);  // before image, after image, prompt text
  const std::string prompt = content[2]["text"];
  CHECK(prompt.find("<swipe>") == std::string::npos);       // slot replaced
  CHECK(prompt.find("\"duration\": 150") != std::string::npos);
  CHECK(prompt.find("<image1> <image2>") != std::string::npos);
}

TEST_CASE("describe_swipe rejects incomplete replies") {
  SwipeSpec spec;
  spec.start = {1, 1};
  spec.end = {1, 2};
  spec.direction = Direction::down;
  spec.duration_ms = 300;
  spec.bbox = {0, 0, 1000, 1000};
  const auto prompts = load_prompts();

  MockTransport missing_reason;
  missing_reason.default_body = MockTransport::chat_reply(R"({"command": "Swipe."})");
  try {
    describe_swipe(missing_reason, mock_endpoint(), kPng, kPng, spec, prompts);
    FAIL("expected unparseable-json");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unparseable_json);
  }

  MockTransport empty_cmd;
  empty_cmd.default_body = MockTransport::chat_reply(R"({"command": "", "reason": "r"})");
  try {
    describe_swipe(empty_cmd, mock_endpoint(), kPng, kPng, spec, prompts);
    FAIL("expected empty-command");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_command);
  }

  MockTransport fenced;
  fenced.default_body =
      MockTransport::chat_reply("```json\n{\"command\": \"Swipe.\", \"reason\": \"r\"}\n```");
  CHECK(describe_swipe(fenced, mock_endpoint(), kPng, kPng, spec, prompts).command == "Swipe.");
}
