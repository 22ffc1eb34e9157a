#include "swipekit/swipe.hpp"

#include <filesystem>
#include <unordered_set>

#include "swipekit/errors.hpp"

namespace swipekit {

std::string_view swipe_kind_name(SwipeKind k) {
  return k == SwipeKind::component ? "component" : "region";
}

SwipeKind swipe_kind_from_name(std::string_view name) {
  if (name == "component") return SwipeKind::component;
  if (name == "region") return SwipeKind::region;
  throw Error(Errc::unparseable_json, "unknown swipe type '" + std::string(name) + "'");
}

std::string_view record_source_name(RecordSource s) {
  return s == RecordSource::synthesized ? "synthesized" : "manual";
}

RecordSource record_source_from_name(std::string_view name) {
  if (name == "synthesized") return RecordSource::synthesized;
  if (name == "manual") return RecordSource::manual;
  throw Error(Errc::unparseable_json, "unknown source '" + std::string(name) + "'");
}

std::string_view action_kind_name(ActionKind a) {
  switch (a) {
    case ActionKind::tap: return "tap";
    case ActionKind::swipe: return "swipe";
    case ActionKind::long_press: return "long_press";
    case ActionKind::text: return "text";
  }
  return "tap";
}

std::optional<ActionKind> action_kind_from_name(std::string_view name) {
  if (name == "tap") return ActionKind::tap;
  if (name == "swipe") return ActionKind::swipe;
  if (name == "long_press") return ActionKind::long_press;
  if (name == "text") return ActionKind::text;
  return std::nullopt;
}

namespace {

bool norm_in_range(NormPoint p) {
  return p.x >= 0 && p.x <= kNormMax && p.y >= 0 && p.y <= kNormMax;
}

void check_spec(const SwipeSpec& s, std::vector<Violation>& out) {
  if (!norm_in_range(s.start)) {
    out.push_back({"start", "coord-range", "start outside [0,1000]"});
  }
  if (!norm_in_range(s.end)) {
    out.push_back({"end", "coord-range", "end outside [0,1000]"});
  }
  if (s.start == s.end) {
    out.push_back({"end", "start-equals-end", "swipe start and end coincide"});
  } else {
    if (direction_of(s.start, s.end) != s.direction) {
      out.push_back({"direction", "direction-mismatch",
                     "direction does not match the dominant axis of end-start"});
    }
  }
  if (s.duration_ms <= 0) {
    out.push_back({"duration", "nonpositive-duration", "duration must be > 0 ms"});
  }
  if (!s.bbox.valid() || s.bbox.x2 > kNormMax || s.bbox.y2 > kNormMax) {
    out.push_back({"bbox", "invalid-bbox", "bbox corners must be ordered and within [0,1000]"});
  } else if (s.kind == SwipeKind::region && !s.bbox.contains(s.start.x, s.start.y)) {
    out.push_back({"start", "start-outside-bbox", "region swipe must start inside its bbox"});
  }
}

bool plausible_iso8601(const std::string& ts) {
  // YYYY-MM-DDTHH:MM:SS with optional suffix; a light shape check, not a parser.
  if (ts.size() < 19) return false;
  const char* digits = "0123456789";
  auto is_digit = [&](char c) { return std::string_view(digits).find(c) != std::string_view::npos; };
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u}) {
    if (!is_digit(ts[i])) return false;
  }
  return ts[4] == '-' && ts[7] == '-' && ts[10] == 'T' && ts[13] == ':' && ts[16] == ':';
}

}  // namespace

std::vector<Violation> validate_record(const SwipeRecord& r) {
  std::vector<Violation> out;
  if (r.id.empty()) {
    out.push_back({"id", "empty-id", "record id must be non-empty"});
  }
  if (r.screen_before.empty()) {
    out.push_back({"screen_before", "missing-image-ref", "before-image reference is empty"});
  }
  if (r.screen_after.empty()) {
    out.push_back({"screen_after", "missing-image-ref", "after-image reference is empty"});
  }
  if (!r.created_at.empty() && !plausible_iso8601(r.created_at)) {
    out.push_back({"created_at", "bad-timestamp", "created_at is not ISO-8601"});
  }
  check_spec(r.spec, out);
  return out;
}

DatasetReport validate_dataset(const std::vector<SwipeRecord>& records,
                               const std::string& base_dir) {
  DatasetReport report;
  report.records = records.size();
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    for (auto& v : validate_record(r)) {
      report.violations.emplace_back(r.id, std::move(v));
    }
    if (!r.id.empty() && !seen.insert(r.id).second) {
      report.violations.push_back({r.id, {"id", "duplicate-id", "id appears more than once"}});
    }
    if (!base_dir.empty()) {
      const std::pair<const char*, const std::string*> refs[] = {
          {"screen_before", &r.screen_before}, {"screen_after", &r.screen_after}};
      for (const auto& [field, ref] : refs) {
        if (!ref->empty() &&
            !std::filesystem::exists(std::filesystem::path(base_dir) / *ref)) {
          report.violations.push_back(
              {r.id, {field, "unresolvable-image", *ref + " not found"}});
        }
      }
    }
  }
  return report;
}

}  // namespace swipekit
