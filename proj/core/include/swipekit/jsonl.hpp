#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "swipekit/swipe.hpp"

namespace swipekit {

// Serializes one record as a single JSON line. Field names and order are the
// wire contract: id, app, screen_before, screen_after, type, start, end,
// direction, duration, bbox, command, reason, source, created_at. start/end
// are 2-arrays, bbox a 4-array, duration integer milliseconds.
std::string to_jsonl_line(const SwipeRecord& r);

// Parses one JSON line back into a record (spec.intent is taken from
// "command"). Throws Errc::unparseable_json on malformed input.
SwipeRecord record_from_jsonl_line(std::string_view line);

// Reads a whole .jsonl file, one record per line; blank lines are skipped.
std::vector<SwipeRecord> read_records(const std::string& path);

// Predictions file: one {"id": ..., "response": ...} object per line.
std::map<std::string, std::string> read_predictions(const std::string& path);

std::string prediction_line(const std::string& id, const std::string& response);

}  // namespace swipekit
