#include "swipekit/explorer.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iostream>
#include <set>

#include <json.hpp>

#include "swipekit/errors.hpp"
#include "swipekit/jsonl.hpp"
#include "swipekit/screen_hash.hpp"

namespace swipekit {

std::string SystemClock::now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string IdSequence::peek() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%06llu", prefix_.c_str(),
                static_cast<unsigned long long>(counter_ + 1));
  return buf;
}

std::string IdSequence::next() {
  std::string id = peek();
  ++counter_;
  return id;
}

std::string ExploreStats::to_json() const {
  nlohmann::ordered_json j;
  j["screens_visited"] = screens_visited;
  j["clicks_executed"] = clicks_executed;
  j["candidates_executed"] = candidates_executed;
  j["swipes_retained"] = swipes_retained;
  j["vlm_calls"] = vlm_calls;
  j["errors"] = errors;
  j["device_lost"] = device_lost;
  return j.dump(2);
}

DatasetSink::DatasetSink(std::filesystem::path dir, std::string app, Clock& clock)
    : dir_(std::move(dir)), app_(std::move(app)), clock_(clock) {
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "shots", ec);
  if (ec) {
    throw Error(Errc::sink_failure, "cannot create " + (dir_ / "shots").string());
  }
  swipes_.open(dir_ / "swipes.jsonl", std::ios::binary | std::ios::trunc);
  clicks_.open(dir_ / "clicks.jsonl", std::ios::binary | std::ios::trunc);
  if (!swipes_ || !clicks_) {
    throw Error(Errc::sink_failure, "cannot open dataset files in " + dir_.string());
  }
}

SwipeRecord DatasetSink::append_swipe(const ValidatedSwipe& v, const std::string& command,
                                      const std::string& reason) {
  SwipeRecord r;
  r.id = swipe_ids_.peek();  // consumed only once the record is accepted
  r.app = app_;
  r.screen_before = "shots/" + r.id + "_before.png";
  r.screen_after = "shots/" + r.id + "_after.png";
  r.spec = v.spec;
  r.spec.intent = command;
  r.command = command;
  r.reason = reason;
  r.source = RecordSource::synthesized;
  r.created_at = clock_.now_iso8601();

  const auto violations = validate_record(r);
  if (!violations.empty()) {
    throw Error(Errc::sink_failure, "refusing to write an invalid record (" +
                                        violations.front().field + ": " +
                                        violations.front().rule + ")");
  }
  write_file_bytes((dir_ / r.screen_before).string(), v.before_png);
  write_file_bytes((dir_ / r.screen_after).string(), v.after_png);
  swipes_ << to_jsonl_line(r) << '\n';
  swipes_.flush();
  if (!swipes_) {
    throw Error(Errc::sink_failure, "short write to swipes.jsonl");
  }
  swipe_ids_.next();
  ++swipes_written_;
  return r;
}

void DatasetSink::append_click(NormPoint at, const std::vector<std::uint8_t>& screen_png) {
  const std::string id = click_ids_.next();
  const std::string shot = "shots/" + id + ".png";
  write_file_bytes((dir_ / shot).string(), screen_png);
  nlohmann::ordered_json j;
  j["id"] = id;
  j["app"] = app_;
  j["screen"] = shot;
  j["x"] = at.x;
  j["y"] = at.y;
  j["created_at"] = clock_.now_iso8601();
  clicks_ << j.dump() << '\n';
  clicks_.flush();
  if (!clicks_) {
    throw Error(Errc::sink_failure, "short write to clicks.jsonl");
  }
}

std::optional<ValidatedSwipe> execute_and_verify(Device& device, const SwipeCandidate& candidate,
                                                 const DiffConfig& diff) {
  const DeviceInfo di = device.info();
  const ImageRgb before = device.screenshot();

  // Rebuild the gesture from the normalized spec so the executed command is
  // exactly what a replay of the stored record would run.
  const GestureCommand g =
      GestureCommand::make_swipe(denormalize_point(candidate.spec.start, di.width, di.height),
                                 denormalize_point(candidate.spec.end, di.width, di.height),
                                 candidate.spec.duration_ms);
  device.gesture(g);
  const ImageRgb after = device.screenshot();

  BBox roi = candidate.target_bbox_px;
  roi.x2 = std::min(roi.x2, di.width);
  roi.y2 = std::min(roi.y2, di.height);
  if (!is_effective(to_gray(before), to_gray(after), roi, diff)) {
    return std::nullopt;
  }
  ValidatedSwipe v;
  v.before_png = encode_png(before);
  v.after_png = encode_png(after);
  v.spec = candidate.spec;
  return v;
}

namespace {

std::vector<ScrollableTarget> order_targets(std::vector<ScrollableTarget> targets, int cap) {
  std::stable_sort(targets.begin(), targets.end(),
                   [](const ScrollableTarget& a, const ScrollableTarget& b) {
                     const long area_a = static_cast<long>(a.bbox.width()) * a.bbox.height();
                     const long area_b = static_cast<long>(b.bbox.width()) * b.bbox.height();
                     if (area_a != area_b) return area_a > area_b;
                     return std::tie(a.bbox.y1, a.bbox.x1, a.bbox.y2, a.bbox.x2) <
                            std::tie(b.bbox.y1, b.bbox.x1, b.bbox.y2, b.bbox.x2);
                   });
  if (static_cast<int>(targets.size()) > cap) {
    targets.resize(cap);
  }
  return targets;
}

struct Detection {
  std::vector<ScrollableTarget> targets;
  std::vector<ClickableElement> clickables;
};

Detection detect_on_screen(Device& device, const ExploreConfig& cfg, Services& services,
                           ExploreStats& stats) {
  Detection out;
  const DeviceInfo di = device.info();
  if (cfg.detectors == DetectorMode::hierarchy || cfg.detectors == DetectorMode::both) {
    const HierarchyParse parsed =
        parse_hierarchy_full(device.dump_hierarchy(), di.width, di.height);
    out.targets.insert(out.targets.end(), parsed.targets.begin(), parsed.targets.end());
    out.clickables.insert(out.clickables.end(), parsed.clickables.begin(),
                          parsed.clickables.end());
    stats.errors += parsed.skipped_nodes;
  }
  if (cfg.detectors == DetectorMode::vision || cfg.detectors == DetectorMode::both) {
    const std::vector<std::uint8_t> png = encode_png(device.screenshot());
    if (services.vlm && services.prompts) {
      auto regions = detect_regions(*services.vlm, services.vlm_endpoint, png, *services.prompts);
      ++stats.vlm_calls;
      out.targets.insert(out.targets.end(), regions.begin(), regions.end());
    }
    if (services.parser) {
      ParsedElements parsed = detect_components(*services.parser, png);
      out.targets.insert(out.targets.end(), parsed.scrollables.begin(),
                         parsed.scrollables.end());
      out.clickables.insert(out.clickables.end(), parsed.clickables.begin(),
                            parsed.clickables.end());
    }
  }
  return out;
}

}  // namespace

int synthesize_on_screen(Device& device, const std::vector<ScrollableTarget>& targets,
                         const ExploreConfig& cfg, Services& services, DatasetSink& sink,
                         RngHandle& rng, ExploreStats& stats) {
  const DeviceInfo di = device.info();
  int retained = 0;
  for (const ScrollableTarget& target :
       order_targets(targets, cfg.per_screen_target_cap)) {
    const BBox px = denormalize_bbox(target.bbox, di.width, di.height);
    std::vector<SwipeCandidate> cands;
    try {
      cands = target.kind == SwipeKind::component ? component_candidates(px, di.width, di.height, rng)
                                                  : region_candidates(px, di.width, di.height, rng);
    } catch (const Error& e) {
      if (e.code() == Errc::degenerate_target || e.code() == Errc::out_of_bounds) {
        ++stats.errors;
        continue;
      }
      throw;
    }
    for (const SwipeCandidate& cand : candidate_order(std::move(cands))) {
      if (cand.spec.start == cand.spec.end) {
        continue;  // sub-unit distance collapsed under normalization
      }
      ++stats.candidates_executed;
      auto valid = execute_and_verify(device, cand, cfg.diff);
      if (!valid) continue;  // discard and try the next candidate

      std::string command;
      std::string reason;
      if (cfg.describe && services.vlm && services.prompts) {
        try {
          SwipeDescription desc = describe_swipe(*services.vlm, services.vlm_endpoint,
                                                 valid->before_png, valid->after_png,
                                                 valid->spec, *services.prompts);
          ++stats.vlm_calls;
          command = std::move(desc.command);
          reason = std::move(desc.reason);
        } catch (const Error& e) {
          // Degrade to an empty command; the record itself is still valid.
          ++stats.errors;
          std::cerr << "describe failed for a retained swipe: " << e.what() << "\n";
        }
      }
      sink.append_swipe(*valid, command, reason);
      ++retained;
      ++stats.swipes_retained;
      break;  // first effective swipe per target; skip the rest
    }
  }
  return retained;
}

ExploreStats explore(Device& device, const ExploreConfig& cfg, Services& services,
                     DatasetSink& sink) {
  ExploreStats stats;
  RngHandle rng(cfg.seed);
  VisitedScreens visited;
  std::set<std::tuple<std::uint64_t, int, int>> clicked;  // (screen hash, click center)

  try {
    {
      const GrayImage first = to_gray(device.screenshot());
      visited.insert(screen_hash(first));
      stats.screens_visited = 1;
    }
    int stalled_backs = 0;
    for (int step = 0; step < cfg.max_steps; ++step) {
      Detection detection = detect_on_screen(device, cfg, services, stats);
      synthesize_on_screen(device, detection.targets, cfg, services, sink, rng, stats);

      // Scroll state likely changed during synthesis: key clicks and novelty
      // checks on a fresh capture.
      const ImageRgb current = device.screenshot();
      const GrayImage current_gray = to_gray(current);
      const ScreenHash here = screen_hash(current_gray);
      visited.insert(here);

      std::vector<std::pair<NormPoint, std::tuple<std::uint64_t, int, int>>> unvisited;
      for (const ClickableElement& c : detection.clickables) {
        const NormPoint center{(c.bbox.x1 + c.bbox.x2) / 2, (c.bbox.y1 + c.bbox.y2) / 2};
        const auto key = std::make_tuple(here.bits, center.x, center.y);
        if (!clicked.count(key)) {
          unvisited.emplace_back(center, key);
        }
      }

      if (unvisited.empty()) {
        // Screen exhausted: navigate BACK; stop once BACK stops changing
        // anything (we are stuck at the root with nothing left to click).
        device.back();
        const GrayImage after_back = to_gray(device.screenshot());
        if (changed_ratio(current_gray, after_back, full_roi(after_back), cfg.diff.delta) <
            cfg.diff.tau_screen) {
          if (++stalled_backs >= 3) break;
        } else {
          stalled_backs = 0;
          if (is_new_screen(after_back, visited)) {
            ++stats.screens_visited;
          }
          visited.insert(screen_hash(after_back));
        }
        continue;
      }
      stalled_backs = 0;

      const auto& [center, key] = unvisited[rng.next_index(unvisited.size())];
      clicked.insert(key);
      sink.append_click(center, encode_png(current));

      const DeviceInfo di = device.info();
      device.gesture(GestureCommand::make_tap(denormalize_point(center, di.width, di.height)));
      ++stats.clicks_executed;

      const GrayImage after_click = to_gray(device.screenshot());
      if (changed_ratio(current_gray, after_click, full_roi(after_click), cfg.diff.delta) >=
          cfg.diff.tau_screen) {
        if (is_new_screen(after_click, visited)) {
          ++stats.screens_visited;
        }
        visited.insert(screen_hash(after_click));
      }
    }
  } catch (const Error& e) {
    if (e.code() == Errc::device_unreachable || e.code() == Errc::decode_failure) {
      // Device loss mid-run: report what we have.
      stats.device_lost = true;
      ++stats.errors;
      std::cerr << "device lost: " << e.what() << "\n";
      return stats;
    }
    throw;
  }
  return stats;
}

}  // namespace swipekit
