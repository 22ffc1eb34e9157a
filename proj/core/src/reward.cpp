#include "swipekit/reward.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "swipekit/errors.hpp"

namespace swipekit {

GoldSwipe GoldSwipe::from_spec(const SwipeSpec& spec) {
  GoldSwipe g;
  g.spec = spec;
  g.constraint_box =
      spec.kind == SwipeKind::region ? spec.bbox : BBox{0, 0, kNormMax, kNormMax};
  return g;
}

namespace {

using nlohmann::json;

// Whitespace-trimmed view boundaries.
std::string_view trimmed(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t p = hay.find(needle); p != std::string_view::npos;
       p = hay.find(needle, p + needle.size())) {
    ++n;
  }
  return n;
}

FormatResult invalid(const char* reason) {
  FormatResult r;
  r.violation = reason;
  return r;
}

// Parses a coordinate pair; distinguishes wrong shape/type from range errors.
bool read_point(const json& j, NormPoint& out, const char** reason) {
  if (!j.is_array() || j.size() != 2) {
    *reason = "bad-coord";
    return false;
  }
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      *reason = "bad-coord";
      return false;
    }
  }
  const long x = j[0].get<long>();
  const long y = j[1].get<long>();
  if (x < 0 || x > kNormMax || y < 0 || y > kNormMax) {
    *reason = "coord-range";
    return false;
  }
  out = NormPoint{static_cast<int>(x), static_cast<int>(y)};
  return true;
}

bool is_empty_or_null(const json& j) {
  return j.is_null() || (j.is_array() && j.empty());
}

}  // namespace

FormatResult parse_response(const std::string& raw) {
  std::string_view text = trimmed(raw);
  if (text.empty()) return invalid("empty");

  const std::size_t opens = count_occurrences(text, "<think>");
  const std::size_t closes = count_occurrences(text, "</think>");
  if (opens == 0 || closes == 0) return invalid("missing-think");
  if (opens > 1 || closes > 1) return invalid("multiple-think");
  if (text.rfind("<think>", 0) != 0) return invalid("text-before-think");

  const std::size_t close_at = text.find("</think>");
  std::string_view tail = trimmed(text.substr(close_at + 8));
  if (tail.empty()) return invalid("missing-json");
  if (tail.rfind("```", 0) == 0) return invalid("code-fence");

  json j = json::parse(tail, nullptr, false);
  if (j.is_discarded()) return invalid("invalid-json");
  if (!j.is_object()) return invalid("not-an-object");

  static const std::set<std::string> kAllowedKeys = {"action", "start", "end",
                                                     "direction", "duration", "text"};
  for (const auto& [key, _] : j.items()) {
    if (!kAllowedKeys.count(key)) return invalid("extra-field");
  }

  if (!j.contains("action") || !j.at("action").is_string()) return invalid("missing-action");
  const auto action = action_kind_from_name(j.at("action").get<std::string>());
  if (!action) return invalid("bad-action");

  AgentPrediction pred;
  pred.action = *action;

  if (!j.contains("start")) return invalid("missing-start");
  const char* reason = nullptr;
  if (!read_point(j.at("start"), pred.start, &reason)) return invalid(reason);

  if (j.contains("end") && !is_empty_or_null(j.at("end"))) {
    NormPoint end;
    if (!read_point(j.at("end"), end, &reason)) return invalid(reason);
    pred.end = end;
  }
  if (j.contains("direction") && !j.at("direction").is_null()) {
    if (!j.at("direction").is_string()) return invalid("bad-direction");
    const std::string d = j.at("direction").get<std::string>();
    if (d == "up") pred.direction = Direction::up;
    else if (d == "down") pred.direction = Direction::down;
    else if (d == "left") pred.direction = Direction::left;
    else if (d == "right") pred.direction = Direction::right;
    else return invalid("bad-direction");
  }
  if (j.contains("duration") && !j.at("duration").is_null()) {
    if (!j.at("duration").is_number_integer()) return invalid("bad-duration");
    const long ms = j.at("duration").get<long>();
    if (ms < 0) return invalid("bad-duration");
    pred.duration_ms = static_cast<int>(ms);
  }
  if (j.contains("text") && !j.at("text").is_null()) {
    if (!j.at("text").is_string()) return invalid("bad-text");
    pred.text = j.at("text").get<std::string>();
  }

  switch (pred.action) {
    case ActionKind::swipe:
      if (!pred.end) return invalid("missing-end");
      break;
    case ActionKind::tap:
      if (pred.end) return invalid("end-not-allowed");
      break;
    case ActionKind::long_press:
      if (!pred.duration_ms || *pred.duration_ms <= 0) return invalid("missing-duration");
      break;
    case ActionKind::text:
      if (!pred.text) return invalid("missing-text");
      if (pred.end) return invalid("end-not-allowed");
      break;
  }

  FormatResult r;
  r.valid = true;
  r.prediction = std::move(pred);
  return r;
}

double format_reward(const FormatResult& f) { return f.valid ? kFormatReward : -kFormatReward; }

double type_reward(const std::optional<ActionKind>& predicted, ActionKind gold) {
  return (predicted && *predicted == gold) ? kTypeReward : -kTypeReward;
}

DurationCategory duration_category(int ms) {
  return ms <= kDurationMidpointMs ? DurationCategory::fast : DurationCategory::slow;
}

bool within_distance(NormPoint a, NormPoint b) {
  const long dx = a.x - b.x;
  const long dy = a.y - b.y;
  return dx * dx + dy * dy <=
         static_cast<long>(kDistanceTolerance) * kDistanceTolerance;
}

RewardBreakdown accuracy_reward(const AgentPrediction& pred, const GoldSwipe& gold) {
  RewardBreakdown r;

  r.start_hit = within_distance(pred.start, gold.spec.start) &&
                gold.constraint_box.contains(pred.start.x, pred.start.y);
  r.end_hit = pred.end && within_distance(*pred.end, gold.spec.end);

  std::optional<Direction> dir = pred.direction;
  if (!dir && pred.end && !(pred.start == *pred.end)) {
    dir = direction_of(pred.start, *pred.end);  // schema marks direction optional
  }
  r.dir_hit = dir && *dir == gold.spec.direction;

  if (gold.spec.kind == SwipeKind::component) {
    r.dur_hit = true;  // duration plays no role for component swipes
  } else {
    r.dur_hit = pred.duration_ms &&
                duration_category(*pred.duration_ms) == duration_category(gold.spec.duration_ms);
  }

  // Integer centi-units keep the sum exact, so r_acc == 1.0 is a crisp test.
  const int centi = (r.start_hit ? 45 : 0) + (r.end_hit ? 10 : 0) + (r.dir_hit ? 35 : 0) +
                    (r.dur_hit ? 10 : 0);
  r.r_start = r.start_hit ? kStartReward : 0.0;
  r.r_end = r.end_hit ? kEndReward : 0.0;
  r.r_dir = r.dir_hit ? kDirReward : 0.0;
  r.r_dur = r.dur_hit ? kDurReward : 0.0;
  r.r_acc = centi / 100.0;
  return r;
}

double total_reward(double r_format, double r_type, double r_acc) {
  const double raw = r_format + r_type + r_acc;  // in [-1.8, 2.8]
  return 2.0 * (raw + 1.8) / 4.6 - 1.0;
}

RewardBreakdown score_response(const std::string& raw, const GoldSwipe& gold) {
  const FormatResult f = parse_response(raw);
  RewardBreakdown r;
  std::optional<ActionKind> predicted_action;
  if (f.prediction) predicted_action = f.prediction->action;

  if (f.valid && f.prediction && f.prediction->action == ActionKind::swipe) {
    r = accuracy_reward(*f.prediction, gold);
  }
  r.r_format = format_reward(f);
  r.r_type = type_reward(predicted_action, ActionKind::swipe);
  r.total_norm = total_reward(r.r_format, r.r_type, r.r_acc);
  return r;
}

EvalReport evaluate(const std::map<std::string, std::string>& predictions,
                    const std::vector<SwipeRecord>& gold) {
  EvalReport report;
  report.total = gold.size();
  std::map<std::string, AppAccuracy> per_app;
  for (const char* mode : kFailureModes) report.failure_counts[mode] = 0;

  std::set<std::string> gold_ids;
  for (const auto& rec : gold) {
    gold_ids.insert(rec.id);
    const GoldSwipe g = GoldSwipe::from_record(rec);
    RecordEval re;
    re.id = rec.id;
    re.app = rec.app;
    re.screen_before = rec.screen_before;
    re.screen_after = rec.screen_after;
    re.command = rec.command;

    auto it = predictions.find(rec.id);
    if (it == predictions.end()) {
      re.failure_modes.emplace_back("missing-prediction");
      re.breakdown.total_norm = total_reward(re.breakdown.r_format, re.breakdown.r_type, 0.0);
    } else {
      const FormatResult f = parse_response(it->second);
      re.breakdown = score_response(it->second, g);
      if (!f.valid) {
        re.failure_modes.emplace_back("invalid-format");
      } else if (f.prediction->action != ActionKind::swipe) {
        re.failure_modes.emplace_back("wrong-type");
      } else {
        const AgentPrediction& pred = *f.prediction;
        if (!g.constraint_box.contains(pred.start.x, pred.start.y)) {
          re.failure_modes.emplace_back("start-out-of-region");
        }
        if (!within_distance(pred.start, g.spec.start)) {
          re.failure_modes.emplace_back("start-distance");
        }
        if (!re.breakdown.end_hit) re.failure_modes.emplace_back("end-distance");
        if (!re.breakdown.dir_hit) re.failure_modes.emplace_back("direction");
        if (!re.breakdown.dur_hit) re.failure_modes.emplace_back("duration");
      }
      re.success = re.failure_modes.empty();
    }

    auto& app = per_app[rec.app];
    app.app = rec.app;
    ++app.total;
    if (re.success) {
      ++app.correct;
      ++report.correct;
    }
    for (const auto& mode : re.failure_modes) {
      ++report.failure_counts[mode];
    }
    report.records.push_back(std::move(re));
  }

  for (const auto& [id, _] : predictions) {
    if (!gold_ids.count(id)) ++report.unmatched_predictions;
  }
  for (auto& [_, app] : per_app) {
    app.accuracy = app.total ? static_cast<double>(app.correct) / app.total : 0.0;
    report.per_app.push_back(app);
  }
  report.accuracy = report.total ? static_cast<double>(report.correct) / report.total : 0.0;
  return report;
}

std::string eval_report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["correct"] = report.correct;
  j["accuracy"] = report.accuracy;
  j["unmatched_predictions"] = report.unmatched_predictions;
  j["per_app"] = nlohmann::ordered_json::array();
  for (const auto& app : report.per_app) {
    j["per_app"].push_back({{"app", app.app},
                            {"total", app.total},
                            {"correct", app.correct},
                            {"accuracy", app.accuracy}});
  }
  j["failure_counts"] = report.failure_counts;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& re : report.records) {
    nlohmann::ordered_json rj;
    rj["id"] = re.id;
    rj["app"] = re.app;
    rj["success"] = re.success;
    rj["failure_modes"] = re.failure_modes;
    rj["r_start"] = re.breakdown.r_start;
    rj["r_end"] = re.breakdown.r_end;
    rj["r_dir"] = re.breakdown.r_dir;
    rj["r_dur"] = re.breakdown.r_dur;
    rj["r_acc"] = re.breakdown.r_acc;
    rj["r_format"] = re.breakdown.r_format;
    rj["r_type"] = re.breakdown.r_type;
    rj["total_norm"] = re.breakdown.total_norm;
    rj["screen_before"] = re.screen_before;
    rj["screen_after"] = re.screen_after;
    rj["command"] = re.command;
    j["records"].push_back(std::move(rj));
  }
  return j.dump(2);
}

EvalReport eval_report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(Errc::unparseable_json, "eval report is not a JSON object");
  }
  EvalReport report;
  report.total = j.value("total", 0u);
  report.correct = j.value("correct", 0u);
  report.accuracy = j.value("accuracy", 0.0);
  report.unmatched_predictions = j.value("unmatched_predictions", 0u);
  for (const auto& app : j.value("per_app", nlohmann::json::array())) {
    report.per_app.push_back({app.value("app", std::string{}), app.value("total", 0u),
                              app.value("correct", 0u), app.value("accuracy", 0.0)});
  }
  for (const auto& [mode, count] : j.value("failure_counts", nlohmann::json::object()).items()) {
    report.failure_counts[mode] = count.get<std::size_t>();
  }
  for (const auto& rj : j.value("records", nlohmann::json::array())) {
    RecordEval re;
    re.id = rj.value("id", std::string{});
    re.app = rj.value("app", std::string{});
    re.success = rj.value("success", false);
    for (const auto& m : rj.value("failure_modes", nlohmann::json::array())) {
      re.failure_modes.push_back(m.get<std::string>());
    }
    re.breakdown.r_start = rj.value("r_start", 0.0);
    re.breakdown.r_end = rj.value("r_end", 0.0);
    re.breakdown.r_dir = rj.value("r_dir", 0.0);
    re.breakdown.r_dur = rj.value("r_dur", 0.0);
    re.breakdown.r_acc = rj.value("r_acc", 0.0);
    re.breakdown.r_format = rj.value("r_format", -1.0);
    re.breakdown.r_type = rj.value("r_type", -0.8);
    re.breakdown.total_norm = rj.value("total_norm", 0.0);
    re.screen_before = rj.value("screen_before", std::string{});
    re.screen_after = rj.value("screen_after", std::string{});
    re.command = rj.value("command", std::string{});
    report.records.push_back(std::move(re));
  }
  return report;
}

}  // namespace swipekit
