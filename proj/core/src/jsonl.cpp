#include "swipekit/jsonl.hpp"

#include <fstream>

#include <json.hpp>

#include "swipekit/errors.hpp"

namespace swipekit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json point_array(NormPoint p) { return ordered_json::array({p.x, p.y}); }

NormPoint point_from(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(Errc::unparseable_json, std::string(field) + " must be a 2-array of integers");
  }
  return NormPoint{j[0].get<int>(), j[1].get<int>()};
}

BBox bbox_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(Errc::unparseable_json, "bbox must be a 4-array");
  }
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(Errc::unparseable_json, "bbox must hold integers");
  }
  return BBox{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

}  // namespace

std::string to_jsonl_line(const SwipeRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["app"] = r.app;
  j["screen_before"] = r.screen_before;
  j["screen_after"] = r.screen_after;
  j["type"] = swipe_kind_name(r.spec.kind);
  j["start"] = point_array(r.spec.start);
  j["end"] = point_array(r.spec.end);
  j["direction"] = direction_name(r.spec.direction);
  j["duration"] = r.spec.duration_ms;
  j["bbox"] = ordered_json::array({r.spec.bbox.x1, r.spec.bbox.y1, r.spec.bbox.x2, r.spec.bbox.y2});
  j["command"] = r.command;
  j["reason"] = r.reason;
  j["source"] = record_source_name(r.source);
  j["created_at"] = r.created_at;
  return j.dump();
}

SwipeRecord record_from_jsonl_line(std::string_view line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(Errc::unparseable_json, "line is not a JSON object");
  }
  try {
    SwipeRecord r;
    r.id = j.at("id").get<std::string>();
    r.app = j.value("app", std::string{});
    r.screen_before = j.value("screen_before", std::string{});
    r.screen_after = j.value("screen_after", std::string{});
    r.spec.kind = swipe_kind_from_name(j.at("type").get<std::string>());
    r.spec.start = point_from(j.at("start"), "start");
    r.spec.end = point_from(j.at("end"), "end");
    r.spec.direction = direction_from_name(j.at("direction").get<std::string>());
    if (!j.at("duration").is_number_integer()) {
      throw Error(Errc::unparseable_json, "duration must be an integer");
    }
    r.spec.duration_ms = j.at("duration").get<int>();
    r.spec.bbox = bbox_from(j.at("bbox"));
    r.command = j.value("command", std::string{});
    r.reason = j.value("reason", std::string{});
    r.spec.intent = r.command;
    r.source = record_source_from_name(j.value("source", std::string{"synthesized"}));
    r.created_at = j.value("created_at", std::string{});
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::unparseable_json, e.what());
  }
}

std::vector<SwipeRecord> read_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::unparseable_json, "cannot open " + path);
  }
  std::vector<SwipeRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_jsonl_line(line));
    } catch (const Error& e) {
      throw Error(Errc::unparseable_json,
                  path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::map<std::string, std::string> read_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::unparseable_json, "cannot open " + path);
  }
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("response")) {
      throw Error(Errc::unparseable_json, path + ":" + std::to_string(lineno) +
                                              ": expected {\"id\", \"response\"}");
    }
    out[j.at("id").get<std::string>()] = j.at("response").get<std::string>();
  }
  return out;
}

std::string prediction_line(const std::string& id, const std::string& response) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["response"] = response;
  return j.dump();
}

}  // namespace swipekit
