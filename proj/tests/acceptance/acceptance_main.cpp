// Acceptance suite: each criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Oracles here are written from the
// pinned formulas independently of the library implementation.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "swipekit/detectors.hpp"
#include "swipekit/device.hpp"
#include "swipekit/diff.hpp"
#include "swipekit/explorer.hpp"
#include "swipekit/jsonl.hpp"
#include "swipekit/reward.hpp"
#include "swipekit/rng.hpp"
#include "swipekit/sim.hpp"
#include "swipekit/synthesis.hpp"

#include "../support/test_util.hpp"

using namespace swipekit;
using swipekit::testing::MockTransport;

namespace {

namespace fs = std::filesystem;

struct AcceptFailure {
  std::string message;
};

void require(bool cond, const std::string& message) {
  if (!cond) throw AcceptFailure{message};
}

std::string source_root() { return swipekit::testing::source_root(); }

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("swipekit_accept_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------
// Criterion 1+2: candidate-generation oracle and structural counts.
// The oracle re-derives the translate/offset/boundary formulas from scratch:
// plain double arithmetic, its own rounding, no library geometry calls.

long oracle_round(double v) { return static_cast<long>(std::floor(v + 0.5)); }  // v >= 0 here

struct OracleSwipe {
  long sx, sy, ex, ey;
  Direction dir;
  int duration;
};

std::vector<OracleSwipe> oracle_component(const BBox& b, int w, int h, double alpha_first,
                                          double alpha_second) {
  std::vector<OracleSwipe> out;
  const long cx = (static_cast<long>(b.x1) + b.x2) / 2;
  const long cy = (static_cast<long>(b.y1) + b.y2) / 2;
  const bool vertical = (b.y2 - b.y1) > (b.x2 - b.x1);
  const double alphas[2] = {alpha_first, alpha_second};
  const Direction dirs[2] = {vertical ? Direction::up : Direction::left,
                             vertical ? Direction::down : Direction::right};
  for (int i = 0; i < 2; ++i) {
    long d = oracle_round(alphas[i] * (vertical ? h : w));
    if (d < 1) d = 1;  // pinned floor after the single resample
    OracleSwipe s{cx, cy, cx, cy, dirs[i], 300};
    switch (dirs[i]) {
      case Direction::up: s.ey = std::max(cy - d, 0L); break;
      case Direction::down: s.ey = std::min(cy + d, static_cast<long>(h)); break;
      case Direction::left: s.ex = std::max(cx - d, 0L); break;
      case Direction::right: s.ex = std::min(cx + d, static_cast<long>(w)); break;
    }
    out.push_back(s);
  }
  return out;
}

std::vector<OracleSwipe> oracle_region(const BBox& b, double alpha) {
  std::vector<OracleSwipe> out;
  const long cx = (static_cast<long>(b.x1) + b.x2) / 2;
  const long cy = (static_cast<long>(b.y1) + b.y2) / 2;
  const bool vertical = (b.y2 - b.y1) > (b.x2 - b.x1);
  const long extent = vertical ? b.y2 - b.y1 : b.x2 - b.x1;
  const long lo = vertical ? b.y1 : b.x1;
  const long hi = vertical ? b.y2 : b.x2;
  const long c = vertical ? cy : cx;
  long off = oracle_round(alpha * extent);
  const long max_off = std::min(c - lo, hi - c) - 1;
  if (off < 1) off = 1;
  if (off > max_off) off = max_off;

  struct Leg {
    long start, end;
    Direction dir;
  };
  const Leg legs[2] = {{c + off, lo, vertical ? Direction::up : Direction::left},
                       {c - off, hi, vertical ? Direction::down : Direction::right}};
  for (const Leg& leg : legs) {
    for (int duration : {150, 500}) {
      OracleSwipe s{cx, cy, cx, cy, leg.dir, duration};
      if (vertical) {
        s.sy = leg.start;
        s.ey = leg.end;
      } else {
        s.sx = leg.start;
        s.ex = leg.end;
      }
      out.push_back(s);
    }
  }
  return out;
}

BBox random_box(RngHandle& rng, int w, int h, int min_extent) {
  BBox b;
  b.x1 = static_cast<int>(rng.next_index(w - min_extent - 1));
  b.y1 = static_cast<int>(rng.next_index(h - min_extent - 1));
  b.x2 = b.x1 + min_extent + static_cast<int>(rng.next_index(w - b.x1 - min_extent));
  b.y2 = b.y1 + min_extent + static_cast<int>(rng.next_index(h - b.y1 - min_extent));
  return b;
}

void criterion_candidate_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const int screens[4][2] = {{720, 1280}, {1080, 1920}, {1080, 2400}, {1440, 3120}};
  RngHandle meta(20240501);
  int checked = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const auto& s = screens[meta.next_index(4)];
    const int w = s[0], h = s[1];
    const BBox b = random_box(meta, w, h, 8);
    const std::uint64_t seed = meta.next_u64();
    const bool region = iter % 2 == 0;

    RngHandle rng(seed);
    const auto cands =
        region ? region_candidates(b, w, h, rng) : component_candidates(b, w, h, rng);
    const auto expected = region ? oracle_region(b, cands[0].alpha)
                                 : oracle_component(b, w, h, cands[0].alpha, cands[1].alpha);
    require(cands.size() == expected.size(), "candidate count mismatch");
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const auto& got = cands[i];
      const auto& want = expected[i];
      require(got.start_px.x == want.sx && got.start_px.y == want.sy,
              "start mismatch at iter " + std::to_string(iter));
      require(got.end_px.x == want.ex && got.end_px.y == want.ey,
              "end mismatch at iter " + std::to_string(iter));
      require(got.spec.direction == want.dir, "direction mismatch");
      require(got.spec.duration_ms == want.duration, "duration mismatch");
    }
    ++checked;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  require(checked == 1000, "expected 1000 oracle comparisons");
  require(secs < 5.0, "oracle sweep took " + std::to_string(secs) + "s (budget 5s)");
}

void criterion_structural_counts() {
  RngHandle meta(777);
  const int screens[4][2] = {{720, 1280}, {1080, 1920}, {1080, 2400}, {1440, 3120}};
  for (int iter = 0; iter < 10000; ++iter) {
    const auto& s = screens[meta.next_index(4)];
    const BBox b = random_box(meta, s[0], s[1], 8);
    RngHandle rng(meta.next_u64());
    if (iter % 2 == 0) {
      require(region_candidates(b, s[0], s[1], rng).size() == 4,
              "a region must yield exactly 4 candidates");
    } else {
      require(component_candidates(b, s[0], s[1], rng).size() == 2,
              "a component must yield exactly 2 candidates");
    }
  }
}

// ---------------------------------------------------------------------------
// Criterion 3: diff verification against a brute-force oracle.

void criterion_diff_verification() {
  RngHandle rng(4242);
  for (int iter = 0; iter < 500; ++iter) {
    const int w = 1 + static_cast<int>(rng.next_index(64));
    const int h = 1 + static_cast<int>(rng.next_index(64));
    GrayImage a, b;
    a.width = b.width = w;
    a.height = b.height = h;
    a.intensity.resize(static_cast<std::size_t>(w) * h);
    b.intensity.resize(a.intensity.size());
    for (std::size_t i = 0; i < a.intensity.size(); ++i) {
      a.intensity[i] = static_cast<float>(rng.next_unit());
      // Half the pixels share values so deltas cluster around zero too.
      b.intensity[i] =
          rng.next_index(2) ? a.intensity[i] : static_cast<float>(rng.next_unit());
    }
    const double delta = rng.next_in(0.001, 0.3);
    const double delta_hi = delta + rng.next_in(0.0, 0.3);

    long changed = 0;
    for (std::size_t i = 0; i < a.intensity.size(); ++i) {
      if (std::fabs(static_cast<double>(a.intensity[i]) - b.intensity[i]) > delta) ++changed;
    }
    const BBox roi{0, 0, w, h};
    const double got = changed_ratio(a, b, roi, delta);
    require(got == static_cast<double>(changed) / (static_cast<double>(w) * h),
            "changed_ratio disagrees with the brute-force count");
    require(changed_ratio(a, a, roi, delta) == 0.0, "identical images must give ratio 0");
    require(changed_ratio(a, b, roi, delta_hi) <= got,
            "changed_ratio must be non-increasing in delta");
  }
}

// ---------------------------------------------------------------------------
// Criterion 4+5: reward oracle equivalence and eval consistency.
// Independent re-implementation: sqrt distances, explicit branch logic.

struct OracleReward {
  double start, end, dir, dur, acc;
};

OracleReward oracle_reward(const AgentPrediction& p, const GoldSwipe& g) {
  OracleReward r{0, 0, 0, 0, 0};
  const double dsx = p.start.x - g.spec.start.x;
  const double dsy = p.start.y - g.spec.start.y;
  const bool inside = p.start.x >= g.constraint_box.x1 && p.start.x <= g.constraint_box.x2 &&
                      p.start.y >= g.constraint_box.y1 && p.start.y <= g.constraint_box.y2;
  if (std::sqrt(dsx * dsx + dsy * dsy) <= 220.0 && inside) r.start = 0.45;

  if (p.end) {
    const double dex = p.end->x - g.spec.end.x;
    const double dey = p.end->y - g.spec.end.y;
    if (std::sqrt(dex * dex + dey * dey) <= 220.0) r.end = 0.10;
  }

  std::optional<Direction> dir = p.direction;
  if (!dir && p.end && !(p.end->x == p.start.x && p.end->y == p.start.y)) {
    const long dx = p.end->x - p.start.x;
    const long dy = p.end->y - p.start.y;
    if (std::labs(dx) >= std::labs(dy)) {
      dir = dx > 0 ? Direction::right : Direction::left;
    } else {
      dir = dy > 0 ? Direction::down : Direction::up;
    }
  }
  if (dir && *dir == g.spec.direction) r.dir = 0.35;

  if (g.spec.kind == SwipeKind::component) {
    r.dur = 0.10;
  } else if (p.duration_ms) {
    const bool pred_fast = *p.duration_ms <= 325;
    const bool gold_fast = g.spec.duration_ms <= 325;
    if (pred_fast == gold_fast) r.dur = 0.10;
  }
  r.acc = r.start + r.end + r.dir + r.dur;
  return r;
}

GoldSwipe random_gold(RngHandle& rng) {
  SwipeSpec spec;
  spec.kind = rng.next_index(2) ? SwipeKind::region : SwipeKind::component;
  spec.start = {static_cast<int>(rng.next_index(1001)), static_cast<int>(rng.next_index(1001))};
  do {
    spec.end = {static_cast<int>(rng.next_index(1001)), static_cast<int>(rng.next_index(1001))};
  } while (spec.end == spec.start);
  spec.direction = direction_of(spec.start, spec.end);
  if (spec.kind == SwipeKind::region) {
    spec.duration_ms = rng.next_index(2) ? 150 : 500;
    BBox b;
    b.x1 = static_cast<int>(rng.next_index(spec.start.x + 1));
    b.y1 = static_cast<int>(rng.next_index(spec.start.y + 1));
    b.x2 = spec.start.x + static_cast<int>(rng.next_index(1001 - spec.start.x));
    b.y2 = spec.start.y + static_cast<int>(rng.next_index(1001 - spec.start.y));
    spec.bbox = b;
  } else {
    spec.duration_ms = 300;
    spec.bbox = {0, 0, 1000, 1000};
  }
  return GoldSwipe::from_spec(spec);
}

AgentPrediction random_pred(RngHandle& rng, const GoldSwipe& gold) {
  AgentPrediction p;
  p.action = ActionKind::swipe;
  const auto jitter = [&](NormPoint base) {
    if (rng.next_index(3) == 0) {
      // Near the gold value, exercising the 220 boundary band.
      const int dx = static_cast<int>(rng.next_index(441)) - 220;
      const int dy = static_cast<int>(rng.next_index(441)) - 220;
      return NormPoint{std::clamp(base.x + dx, 0, 1000), std::clamp(base.y + dy, 0, 1000)};
    }
    return NormPoint{static_cast<int>(rng.next_index(1001)),
                     static_cast<int>(rng.next_index(1001))};
  };
  p.start = jitter(gold.spec.start);
  switch (rng.next_index(4)) {
    case 0: break;  // no end
    default: p.end = jitter(gold.spec.end);
  }
  switch (rng.next_index(3)) {
    case 0: break;  // no direction
    case 1: p.direction = gold.spec.direction; break;
    default:
      p.direction = static_cast<Direction>(rng.next_index(4));
  }
  switch (rng.next_index(4)) {
    case 0: break;  // no duration
    case 1: p.duration_ms = 325; break;  // midpoint boundary
    default: p.duration_ms = static_cast<int>(rng.next_index(701));
  }
  return p;
}

void criterion_reward_oracle() {
  RngHandle rng(555);
  const std::set<int> attainable = {0, 10, 20, 35, 45, 55, 65, 80, 90, 100};
  std::set<int> seen;
  int checked = 0;

  auto compare = [&](const AgentPrediction& p, const GoldSwipe& g) {
    const RewardBreakdown got = accuracy_reward(p, g);
    const OracleReward want = oracle_reward(p, g);
    require(got.r_start == want.start, "r_start oracle mismatch");
    require(got.r_end == want.end, "r_end oracle mismatch");
    require(got.r_dir == want.dir, "r_dir oracle mismatch");
    require(got.r_dur == want.dur, "r_dur oracle mismatch");
    require(std::fabs(got.r_acc - want.acc) < 1e-12, "r_acc oracle mismatch");
    const int centi = static_cast<int>(std::lround(got.r_acc * 100));
    require(attainable.count(centi) == 1, "r_acc outside the subset sums");
    seen.insert(centi);
    ++checked;
  };

  for (int iter = 0; iter < 12000; ++iter) {
    const GoldSwipe g = random_gold(rng);
    compare(random_pred(rng, g), g);
  }

  // Pinned boundary cases: distance exactly 220 (axis-aligned and 3-4-5),
  // duration exactly 325, start exactly on the constraint edge.
  SwipeSpec spec;
  spec.kind = SwipeKind::region;
  spec.start = {500, 500};
  spec.end = {500, 200};
  spec.direction = Direction::up;
  spec.duration_ms = 150;
  spec.bbox = {280, 100, 900, 900};
  const GoldSwipe g = GoldSwipe::from_spec(spec);

  AgentPrediction p;
  p.action = ActionKind::swipe;
  p.direction = Direction::up;
  p.duration_ms = 325;
  p.start = {720, 500};  // exactly 220 away, inside B
  p.end = {632, 376};    // (132, 176) from gold end: exactly 220
  compare(p, g);
  require(accuracy_reward(p, g).r_acc == 1.0, "boundary case must earn full accuracy");

  p.start = {280, 500};  // on B's left edge, distance 220
  compare(p, g);
  require(accuracy_reward(p, g).r_start == 0.45, "edge-of-B start must count as inside");

  p.start = {279, 500};  // one unit outside B
  compare(p, g);
  require(accuracy_reward(p, g).r_start == 0.0, "outside-B start must score 0");

  p.start = {721, 500};  // distance 221
  compare(p, g);
  require(accuracy_reward(p, g).r_start == 0.0, "distance 221 must miss");

  p.start = {500, 500};
  p.duration_ms = 326;  // just past the midpoint
  compare(p, g);
  require(accuracy_reward(p, g).r_dur == 0.0, "326 ms must classify slow vs fast gold");

  require(checked >= 10000, "need at least 10000 oracle comparisons");
  require(seen == attainable, "randomized sweep must realize every attainable r_acc value");
}

std::string response_from_pred(const AgentPrediction& p) {
  std::ostringstream ss;
  ss << "<think>t</think>{\"action\":\"swipe\",\"start\":[" << p.start.x << "," << p.start.y
     << "]";
  if (p.end) ss << ",\"end\":[" << p.end->x << "," << p.end->y << "]";
  if (p.direction) ss << ",\"direction\":\"" << direction_name(*p.direction) << "\"";
  if (p.duration_ms) ss << ",\"duration\":" << *p.duration_ms;
  ss << "}";
  return ss.str();
}

void criterion_eval_consistency() {
  RngHandle rng(909);
  std::vector<SwipeRecord> gold;
  std::map<std::string, std::string> preds;
  for (int i = 0; i < 5000; ++i) {
    GoldSwipe g = random_gold(rng);
    SwipeRecord rec;
    rec.id = "r-" + std::to_string(i);
    rec.app = "app-" + std::to_string(i % 7);
    rec.screen_before = "b.png";
    rec.screen_after = "a.png";
    rec.spec = g.spec;
    AgentPrediction p = random_pred(rng, g);
    if (i % 5 == 0) {
      // Exact replays must always succeed.
      p.start = g.spec.start;
      p.end = g.spec.end;
      p.direction = g.spec.direction;
      p.duration_ms = g.spec.duration_ms;
    }
    if (!p.end) p.end = g.spec.end;  // keep the response parseable as a swipe
    preds[rec.id] = response_from_pred(p);
    gold.push_back(std::move(rec));
  }
  const EvalReport report = evaluate(preds, gold);
  int disagreements = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const RewardBreakdown r =
        score_response(preds.at(gold[i].id), GoldSwipe::from_spec(gold[i].spec));
    if (report.records[i].success != (r.r_acc == 1.0)) ++disagreements;
  }
  require(disagreements == 0, std::to_string(disagreements) + " success/r_acc disagreements");
}

// ---------------------------------------------------------------------------
// Criterion 6: format parser conformance, 15 cases.

void criterion_format_parser() {
  struct Case {
    const char* name;
    std::string raw;
    bool valid;
    const char* reason;  // expected violation when invalid
  };
  const Case cases[] = {
      {"documented tap example",
       "<think>Locate the search icon and tap it.</think>\n"
       "{\"action\":\"tap\",\"start\":[512,128],\"end\":[],\"direction\":null,\"duration\":0,"
       "\"text\":null}",
       true, nullptr},
      {"documented swipe example",
       "<think>Scroll the list down to reveal more items.</think>\n"
       "{\"action\":\"swipe\",\"start\":[500,800],\"end\":[500,200],\"direction\":\"up\","
       "\"duration\":300,\"text\":null}",
       true, nullptr},
      {"long_press with duration",
       "<think>Hold the tile.</think>{\"action\":\"long_press\",\"start\":[10,20],"
       "\"duration\":700}",
       true, nullptr},
      {"text action with payload",
       "<think>Type the query.</think>{\"action\":\"text\",\"start\":[5,5],\"end\":[],"
       "\"text\":\"hello\"}",
       true, nullptr},
      {"two think blocks",
       "<think>a</think><think>b</think>{\"action\":\"tap\",\"start\":[1,1]}", false,
       "multiple-think"},
      {"fenced JSON",
       "<think>a</think>```json\n{\"action\":\"tap\",\"start\":[1,1]}\n```", false,
       "code-fence"},
      {"extra field",
       "<think>a</think>{\"action\":\"tap\",\"start\":[1,1],\"confidence\":0.9}", false,
       "extra-field"},
      {"coordinate above 1000", "<think>a</think>{\"action\":\"tap\",\"start\":[1001,3]}", false,
       "coord-range"},
      {"negative coordinate", "<think>a</think>{\"action\":\"tap\",\"start\":[-1,3]}", false,
       "coord-range"},
      {"missing think pair", "{\"action\":\"tap\",\"start\":[1,1]}", false, "missing-think"},
      {"prose before think",
       "Sure! <think>a</think>{\"action\":\"tap\",\"start\":[1,1]}", false,
       "text-before-think"},
      {"trailing text after JSON",
       "<think>a</think>{\"action\":\"tap\",\"start\":[1,1]} done", false, "invalid-json"},
      {"swipe without end", "<think>a</think>{\"action\":\"swipe\",\"start\":[1,1]}", false,
       "missing-end"},
      {"long_press without duration",
       "<think>a</think>{\"action\":\"long_press\",\"start\":[1,1]}", false,
       "missing-duration"},
      {"non-integer coordinates", "<think>a</think>{\"action\":\"tap\",\"start\":[1.25,3]}",
       false, "bad-coord"},
  };
  int idx = 0;
  for (const auto& c : cases) {
    ++idx;
    const FormatResult r = parse_response(c.raw);
    require(r.valid == c.valid,
            "case " + std::to_string(idx) + " (" + c.name + ") validity mismatch");
    if (!c.valid) {
      require(r.violation.value_or("") == c.reason,
              "case " + std::to_string(idx) + " (" + c.name + ") expected reason " +
                  c.reason + ", got " + r.violation.value_or("none"));
    }
  }
  require(idx == 15, "the conformance suite must hold exactly 15 cases");
}

// ---------------------------------------------------------------------------
// Criterion 7+10: end-to-end sim run, replay check, determinism.

class SnapshotDevice final : public SimDevice {
 public:
  explicit SnapshotDevice(SimApp app) : SimDevice(std::move(app)) {}

  ImageRgb screenshot() override {
    ImageRgb img = SimDevice::screenshot();
    frames_[encode_png(img)] = app_;
    screens_seen_.insert(app_.current);
    return img;
  }

  void gesture(const GestureCommand& g) override {
    SimDevice::gesture(g);
    screens_seen_.insert(app_.current);
  }

  const std::map<std::vector<std::uint8_t>, SimApp>& frames() const { return frames_; }
  const std::set<std::string>& screens_seen() const { return screens_seen_; }

 private:
  std::map<std::vector<std::uint8_t>, SimApp> frames_;
  std::set<std::string> screens_seen_;
};

ExploreConfig feed_config() {
  ExploreConfig cfg;
  cfg.max_steps = 20;
  cfg.seed = 7;
  cfg.detectors = DetectorMode::hierarchy;
  cfg.describe = true;
  cfg.app_name = "feed";
  return cfg;
}

void criterion_e2e_sim() {
  const auto t0 = std::chrono::steady_clock::now();
  const SimApp app = load_scene_file(source_root() + "/fixtures/feed.json");
  SnapshotDevice device(app);
  FixedClock clock("2024-05-01T00:00:00Z");
  const fs::path out = fresh_dir("e2e");
  DatasetSink sink(out, "feed", clock);

  MockTransport vlm;
  vlm.default_body = MockTransport::chat_reply(
      R"({"command": "Swipe to reveal more content.", "reason": "The view scrolled."})");
  PromptLibrary prompts = PromptLibrary::load(source_root() + "/assets/prompts");
  Services services;
  services.vlm = &vlm;
  services.vlm_endpoint.model = "mock";
  services.vlm_endpoint.retry_backoff_ms = 0;
  services.prompts = &prompts;

  const ExploreStats stats = explore(device, feed_config(), services, sink);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  require(device.screens_seen().count("home") && device.screens_seen().count("article") &&
              device.screens_seen().count("profile"),
          "the crawl must visit all three screens");
  require(stats.swipes_retained >= 10,
          "retained " + std::to_string(stats.swipes_retained) + " swipes, need >= 10");
  require(secs < 60.0, "end-to-end run took " + std::to_string(secs) + "s (budget 60s)");

  const auto records = read_records((out / "swipes.jsonl").string());
  require(records.size() == stats.swipes_retained, "dataset row count mismatch");
  const DatasetReport lint = validate_dataset(records, out.string());
  require(lint.violations.empty(), "every record must pass validate_record");

  // Replay: from the recorded pre-state, the stored spec must reproduce the
  // stored post-state pixel-for-pixel inside the record's own box.
  for (const auto& rec : records) {
    const auto before_bytes = read_file_bytes((out / rec.screen_before).string());
    auto it = device.frames().find(before_bytes);
    require(it != device.frames().end(), rec.id + ": pre-state frame not captured");
    const SimApp& pre_state = it->second;

    const GestureCommand g = GestureCommand::make_swipe(
        denormalize_point(rec.spec.start, pre_state.width, pre_state.height),
        denormalize_point(rec.spec.end, pre_state.width, pre_state.height),
        rec.spec.duration_ms);
    const ImageRgb replayed = render(sim_step(pre_state, g));
    const ImageRgb recorded = decode_png(read_file_bytes((out / rec.screen_after).string()));

    BBox roi = denormalize_bbox(rec.spec.bbox, pre_state.width, pre_state.height);
    const double ratio = changed_ratio(to_gray(recorded), to_gray(replayed), roi, 0.02);
    require(ratio == 0.0, rec.id + ": replay diverged, changed_ratio = " + std::to_string(ratio));
  }
}

void criterion_duration_sensitivity() {
  // A region sized so the fast/slow candidate pair straddles the velocity
  // threshold: extent 600 puts slow swipes below 1.2 px/ms and fast above.
  SimApp app;
  SimScreen screen;
  screen.id = "main";
  SimWidget list;
  list.kind = WidgetKind::vertical_list;
  list.bbox = {0, 600, 1080, 1200};
  list.items = 30;
  list.item_extent = 100;
  screen.widgets.push_back(list);
  app.screens["main"] = screen;
  app.current = "main";

  RngHandle rng(11);
  const auto cands = region_candidates(list.bbox, app.width, app.height, rng);
  require(cands.size() == 4, "expected 4 region candidates");

  const DiffConfig diff;
  for (int pair = 0; pair < 2; ++pair) {
    const auto& fast = cands[pair * 2];
    const auto& slow = cands[pair * 2 + 1];
    require(fast.spec.start == slow.spec.start && fast.spec.end == slow.spec.end,
            "paired candidates must share endpoints");
    require(fast.spec.duration_ms == 150 && slow.spec.duration_ms == 500,
            "paired candidates must carry the fast/slow durations");

    auto run = [&](const SwipeCandidate& c) {
      SimDevice device(app);
      device.gesture(GestureCommand::make_swipe(
          denormalize_point(c.spec.start, app.width, app.height),
          denormalize_point(c.spec.end, app.width, app.height), c.spec.duration_ms));
      return to_gray(device.screenshot());
    };
    const GrayImage after_fast = run(fast);
    const GrayImage after_slow = run(slow);
    const double ratio = changed_ratio(after_fast, after_slow, list.bbox, diff.delta);
    require(ratio > diff.tau,
            "fast vs slow post-states differ by only " + std::to_string(ratio));
  }
}

void criterion_adb_contract() {
  const struct {
    PixelPoint from, to;
    int ms;
    const char* expected;
  } table[10] = {
      {{540, 1480}, {540, 384}, 150, "input swipe 540 1480 540 384 150"},
      {{540, 520}, {540, 1800}, 500, "input swipe 540 520 540 1800 500"},
      {{740, 400}, {40, 400}, 150, "input swipe 740 400 40 400 150"},
      {{340, 400}, {1040, 400}, 500, "input swipe 340 400 1040 400 500"},
      {{540, 950}, {1079, 950}, 300, "input swipe 540 950 1079 950 300"},
      {{540, 950}, {0, 950}, 300, "input swipe 540 950 0 950 300"},
      {{530, 500}, {530, 20}, 300, "input swipe 530 500 530 20 300"},
      {{1, 2}, {3, 4}, 1, "input swipe 1 2 3 4 1"},
      {{719, 1279}, {0, 0}, 999, "input swipe 719 1279 0 0 999"},
      {{360, 640}, {360, 1279}, 500, "input swipe 360 640 360 1279 500"},
  };
  for (const auto& row : table) {
    const std::string got =
        render_adb_swipe(GestureCommand::make_swipe(row.from, row.to, row.ms));
    require(got == row.expected,
            "adb syntax mismatch: got '" + got + "', want '" + row.expected + "'");
  }
}

void criterion_determinism() {
  auto run = [&](const fs::path& dir) {
    SimDevice device(load_scene_file(source_root() + "/fixtures/feed.json"));
    FixedClock clock("2024-05-01T00:00:00Z");
    DatasetSink sink(dir, "feed", clock);
    MockTransport vlm;
    vlm.default_body = MockTransport::chat_reply(
        R"({"command": "Swipe to reveal more content.", "reason": "The view scrolled."})");
    PromptLibrary prompts = PromptLibrary::load(source_root() + "/assets/prompts");
    Services services;
    services.vlm = &vlm;
    services.vlm_endpoint.retry_backoff_ms = 0;
    services.prompts = &prompts;
    explore(device, feed_config(), services, sink);
  };
  const fs::path d1 = fresh_dir("det1");
  const fs::path d2 = fresh_dir("det2");
  run(d1);
  run(d2);
  for (const char* name : {"swipes.jsonl", "clicks.jsonl"}) {
    const auto c1 = read_file_bytes((d1 / name).string());
    const auto c2 = read_file_bytes((d2 / name).string());
    require(!c1.empty(), std::string(name) + " must not be empty");
    require(c1 == c2, std::string(name) + " differs between identical runs");
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void()>> criteria[] = {
      {"candidate-generation oracle equivalence (1000 seeded inputs, <5s)",
       criterion_candidate_oracle},
      {"structural counts: 2 per component, 4 per region (10000 fuzzed targets)",
       criterion_structural_counts},
      {"diff verification vs brute-force oracle (500 pairs, monotone in delta)",
       criterion_diff_verification},
      {"reward oracle equivalence (>=10000 randomized pairs + boundaries)",
       criterion_reward_oracle},
      {"eval/reward consistency: success iff r_acc == 1.0", criterion_eval_consistency},
      {"format parser conformance (15-case suite)", criterion_format_parser},
      {"end-to-end sim explore: 3 screens, >=10 records, replay-exact, <60s",
       criterion_e2e_sim},
      {"duration sensitivity: fast vs slow region swipes diverge", criterion_duration_sensitivity},
      {"adb swipe syntax golden table (10 gestures)", criterion_adb_contract},
      {"determinism: identical runs produce byte-identical JSONL", criterion_determinism},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    try {
      fn();
      std::printf("[PASS] %s\n", name);
    } catch (const AcceptFailure& f) {
      ++failures;
      std::printf("[FAIL] %s\n       %s\n", name, f.message.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] %s\n       unexpected error: %s\n", name, e.what());
    }
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", std::size(criteria));
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
