#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swipekit/geometry.hpp"

namespace swipekit {

enum class SwipeKind { component, region };

std::string_view swipe_kind_name(SwipeKind k);
SwipeKind swipe_kind_from_name(std::string_view name);

// The unified swipe: everything a downstream automation tool needs to replay
// the gesture. Coordinates and bbox are stored normalized to [0,1000].
struct SwipeSpec {
  SwipeKind kind = SwipeKind::region;
  NormPoint start;
  NormPoint end;
  Direction direction = Direction::up;
  int duration_ms = 0;
  BBox bbox;          // region: the scrollable region; component: full frame
  std::string intent;  // empty until description generation fills it

  friend bool operator==(const SwipeSpec&, const SwipeSpec&) = default;
};

enum class RecordSource { synthesized, manual };

std::string_view record_source_name(RecordSource s);
RecordSource record_source_from_name(std::string_view name);

// One dataset row: a spec plus the screenshots that prove it and the generated
// step-level command.
struct SwipeRecord {
  std::string id;
  std::string app;
  std::string screen_before;  // image reference, relative to the dataset file
  std::string screen_after;
  SwipeSpec spec;
  std::string command;
  std::string reason;
  RecordSource source = RecordSource::synthesized;
  std::string created_at;  // ISO-8601

  friend bool operator==(const SwipeRecord&, const SwipeRecord&) = default;
};

enum class ActionKind { tap, swipe, long_press, text };

std::string_view action_kind_name(ActionKind a);
std::optional<ActionKind> action_kind_from_name(std::string_view name);

// A parsed agent response. Field presence mirrors the response schema: end is
// mandatory for swipes, text for text actions; everything else is optional.
struct AgentPrediction {
  ActionKind action = ActionKind::tap;
  NormPoint start;
  std::optional<NormPoint> end;
  std::optional<Direction> direction;
  std::optional<int> duration_ms;
  std::optional<std::string> text;
};

// One broken invariant: which field and which pinned rule it violates.
struct Violation {
  std::string field;
  std::string rule;
  std::string message;
};

// Pure structural lint of a single record. Empty result means every type
// invariant holds. Dataset-level checks (id uniqueness, resolvable image
// paths) live in validate_dataset.
std::vector<Violation> validate_record(const SwipeRecord& r);

struct DatasetReport {
  std::size_t records = 0;
  std::vector<std::pair<std::string, Violation>> violations;  // record id -> violation
};

// Record-level lint over a whole dataset plus id uniqueness, and image-path
// resolution when base_dir is non-empty.
DatasetReport validate_dataset(const std::vector<SwipeRecord>& records,
                               const std::string& base_dir = "");

}  // namespace swipekit
