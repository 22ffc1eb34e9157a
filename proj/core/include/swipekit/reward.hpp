#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swipekit/swipe.hpp"

namespace swipekit {

// Reward weights and tolerances.
inline constexpr double kStartReward = 0.45;
inline constexpr double kEndReward = 0.10;
inline constexpr double kDirReward = 0.35;
inline constexpr double kDurReward = 0.10;
inline constexpr int kDistanceTolerance = 220;      // normalized units, inclusive
inline constexpr int kDurationMidpointMs = 325;     // midpoint of 150 and 500
inline constexpr double kFormatReward = 1.0;
inline constexpr double kTypeReward = 0.8;

// Ground truth plus the start-position constraint box: the region bbox for
// region swipes, the full frame for component swipes.
struct GoldSwipe {
  SwipeSpec spec;
  BBox constraint_box;

  static GoldSwipe from_spec(const SwipeSpec& spec);
  static GoldSwipe from_record(const SwipeRecord& r) { return from_spec(r.spec); }
};

struct RewardBreakdown {
  bool start_hit = false;
  bool end_hit = false;
  bool dir_hit = false;
  bool dur_hit = false;
  double r_start = 0.0;  // 0 or 0.45
  double r_end = 0.0;    // 0 or 0.10
  double r_dir = 0.0;    // 0 or 0.35
  double r_dur = 0.0;    // 0 or 0.10
  double r_acc = 0.0;    // sum of the four, in [0, 1]
  double r_format = -kFormatReward;
  double r_type = -kTypeReward;
  double total_norm = 0.0;  // in [-1, 1]
};

struct FormatResult {
  bool valid = false;
  std::optional<AgentPrediction> prediction;
  std::optional<std::string> violation;  // stable reason code when invalid
};

// Validates the response contract: exactly one <think>...</think> pair
// followed by exactly one JSON object and nothing else, matching the action
// schema (known fields only, integer coordinates in [0,1000], per-action
// required fields, no code fences). Invalidity is a result, never an error.
FormatResult parse_response(const std::string& raw);

double format_reward(const FormatResult& f);

// +0.8 on an exact action-kind match, -0.8 otherwise. An absent prediction
// (unparseable response) counts as a mismatch.
double type_reward(const std::optional<ActionKind>& predicted, ActionKind gold);

enum class DurationCategory { fast, slow };

// fast iff ms <= 325 (boundary pinned to fast).
DurationCategory duration_category(int ms);

// Squared-distance hit test against the 220-unit tolerance (inclusive).
bool within_distance(NormPoint a, NormPoint b);

// The four swipe sub-rewards. Callers gate on action == swipe.
//   start: 0.45 iff within 220 of gold and inside the constraint box
//   end:   0.10 iff present and within 220 of gold
//   dir:   0.35 iff equal to gold (derived from endpoints when absent)
//   dur:   component gold: always 0.10; region gold: 0.10 iff the fast/slow
//          categories match (an absent prediction duration scores 0)
RewardBreakdown accuracy_reward(const AgentPrediction& pred, const GoldSwipe& gold);

// Linear map of r_format + r_type + r_acc from [-1.8, 2.8] onto [-1, 1].
double total_reward(double r_format, double r_type, double r_acc);

// parse + type gate + accuracy + normalized total in one step.
RewardBreakdown score_response(const std::string& raw, const GoldSwipe& gold);

// Failure modes; a failed record is attributed to every violated criterion.
inline constexpr const char* kFailureModes[] = {
    "invalid-format",  "wrong-type", "start-out-of-region", "start-distance",
    "end-distance",    "direction",  "duration",            "missing-prediction",
};

struct RecordEval {
  std::string id;
  std::string app;
  bool success = false;
  RewardBreakdown breakdown;
  std::vector<std::string> failure_modes;
  std::string screen_before;
  std::string screen_after;
  std::string command;
};

struct AppAccuracy {
  std::string app;
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
};

struct EvalReport {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::vector<AppAccuracy> per_app;
  std::map<std::string, std::size_t> failure_counts;
  std::vector<RecordEval> records;
  std::size_t unmatched_predictions = 0;  // prediction ids absent from gold
};

// Benchmark success per record: parseable response, swipe action, and all
// four accuracy criteria met (r_acc == 1). Gold records without a prediction
// fail with missing-prediction.
EvalReport evaluate(const std::map<std::string, std::string>& predictions,
                    const std::vector<SwipeRecord>& gold);

std::string eval_report_to_json(const EvalReport& report);
EvalReport eval_report_from_json(const std::string& text);

}  // namespace swipekit
