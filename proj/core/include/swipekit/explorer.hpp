#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swipekit/detectors.hpp"
#include "swipekit/device.hpp"
#include "swipekit/diff.hpp"
#include "swipekit/rng.hpp"
#include "swipekit/synthesis.hpp"

namespace swipekit {

class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::string now_iso8601() = 0;
};

// UTC wall clock.
class SystemClock final : public Clock {
 public:
  std::string now_iso8601() override;
};

// Constant stamp; makes whole runs byte-reproducible.
class FixedClock final : public Clock {
 public:
  explicit FixedClock(std::string stamp) : stamp_(std::move(stamp)) {}
  std::string now_iso8601() override { return stamp_; }

 private:
  std::string stamp_;
};

// swipe-000001, swipe-000002, ... Deterministic by construction.
class IdSequence {
 public:
  explicit IdSequence(std::string prefix) : prefix_(std::move(prefix)) {}
  std::string next();
  // The id next() would hand out, without consuming it. Lets the sink reject
  // a record without burning an id.
  std::string peek() const;

 private:
  std::string prefix_;
  std::uint64_t counter_ = 0;
};

enum class DetectorMode { vision, hierarchy, both };

struct ExploreConfig {
  int max_steps = 20;
  int per_screen_target_cap = 8;
  DiffConfig diff;
  std::uint64_t seed = 0;
  DetectorMode detectors = DetectorMode::hierarchy;
  bool describe = false;
  int settle_ms = 800;  // applied by the device backend after each gesture
  std::string app_name = "app";

  bool valid() const { return max_steps > 0 && per_screen_target_cap > 0 && diff.valid(); }
};

struct ExploreStats {
  std::size_t screens_visited = 0;
  std::size_t clicks_executed = 0;
  std::size_t candidates_executed = 0;
  std::size_t swipes_retained = 0;
  std::size_t vlm_calls = 0;
  std::size_t errors = 0;
  bool device_lost = false;

  std::string to_json() const;
};

// Remote-service handles the pipeline may use. Null transports disable the
// corresponding detector / description step.
struct Services {
  Transport* vlm = nullptr;
  VisionEndpoint vlm_endpoint;
  Transport* parser = nullptr;
  const PromptLibrary* prompts = nullptr;
};

// A candidate that survived execute-and-verify, with the screenshots that
// prove it.
struct ValidatedSwipe {
  std::vector<std::uint8_t> before_png;
  std::vector<std::uint8_t> after_png;
  SwipeSpec spec;
};

// Append-only dataset directory:
//   <dir>/swipes.jsonl   one SwipeRecord per line
//   <dir>/clicks.jsonl   exploration clicks {id, app, screen, x, y, created_at}
//   <dir>/shots/*.png    screenshots referenced by relative path
class DatasetSink {
 public:
  DatasetSink(std::filesystem::path dir, std::string app, Clock& clock);

  // Builds the record (ids and timestamps from the injected sources), writes
  // both screenshots, validates the record, and appends the JSONL line.
  // Throws Errc::sink_failure on I/O failure or an invariant violation.
  SwipeRecord append_swipe(const ValidatedSwipe& v, const std::string& command,
                           const std::string& reason);

  void append_click(NormPoint at, const std::vector<std::uint8_t>& screen_png);

  const std::filesystem::path& dir() const { return dir_; }
  std::size_t swipes_written() const { return swipes_written_; }

 private:
  std::filesystem::path dir_;
  std::string app_;
  Clock& clock_;
  IdSequence swipe_ids_{"swipe"};
  IdSequence click_ids_{"click"};
  std::ofstream swipes_;
  std::ofstream clicks_;
  std::size_t swipes_written_ = 0;
};

// Executes one candidate: capture, gesture (rebuilt from the normalized spec
// through denormalize_point, so execution matches replay exactly), capture,
// then the pixel-diff check over the detected target's box. Returns the
// validated triple, or nothing when the change was imperceptible.
std::optional<ValidatedSwipe> execute_and_verify(Device& device, const SwipeCandidate& candidate,
                                                 const DiffConfig& diff);

// Runs candidate generation and execute-and-verify over every detected target
// (largest first, capped), keeping the first effective swipe per target and
// appending it to the sink. Returns the number of retained swipes.
int synthesize_on_screen(Device& device, const std::vector<ScrollableTarget>& targets,
                         const ExploreConfig& cfg, Services& services, DatasetSink& sink,
                         RngHandle& rng, ExploreStats& stats);

// Random exploration: synthesize swipes on the current screen, click an
// unvisited clickable, recurse onto newly reached screens, fall back to BACK
// when a screen is exhausted, stop at max_steps or when navigation stalls.
ExploreStats explore(Device& device, const ExploreConfig& cfg, Services& services,
                     DatasetSink& sink);

}  // namespace swipekit
