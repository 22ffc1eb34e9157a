#pragma once

#include <string>

#include "swipekit/explorer.hpp"
#include "swipekit/gateway.hpp"

namespace swipekit {

// Wiring for the CLI: endpoints, thresholds, device backend, output location.
// Precedence when assembling: flags > environment > config file.
struct AppConfig {
  VisionEndpoint vlm;                // vlm.url empty = no vision model wired
  std::string parser_url;            // empty = no element parser wired
  ExploreConfig explore;             // carries DiffConfig
  std::string adb_serial;            // used when backend == "adb"
  std::string backend;               // "sim" or "adb"
  std::string sim_scene;             // scene file path when backend == "sim"
  std::string out_dir = "out";
  std::string prompt_dir;            // directory holding the prompt assets
  std::string fixed_time;            // non-empty = frozen created_at stamps

  // Exactly one device backend and sane thresholds.
  // Throws Errc::config_error otherwise.
  void validate() const;
};

// Reads a JSON config file (see docs/config.md for the schema) over defaults.
AppConfig load_config_file(const std::string& path);

// Environment overrides: SWIPEKIT_VLM_URL, SWIPEKIT_VLM_MODEL,
// SWIPEKIT_VLM_TOKEN, SWIPEKIT_PARSER_URL.
void apply_env_overrides(AppConfig& cfg);

}  // namespace swipekit
