#include "swipekit/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swipekit/errors.hpp"

namespace swipekit {

void AppConfig::validate() const {
  if (backend != "sim" && backend != "adb") {
    throw Error(Errc::config_error, "backend must be 'sim' or 'adb'");
  }
  if (backend == "sim" && sim_scene.empty()) {
    throw Error(Errc::config_error, "sim backend needs a scene file");
  }
  if (!explore.valid()) {
    throw Error(Errc::config_error, "explore settings out of range");
  }
}

AppConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::config_error, "cannot open config file " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(ss.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(Errc::config_error, "config file is not a JSON object");
  }

  AppConfig cfg;
  if (j.contains("vlm")) {
    const auto& v = j.at("vlm");
    cfg.vlm.url = v.value("url", std::string{});
    cfg.vlm.model = v.value("model", std::string{});
    cfg.vlm.auth_token = v.value("auth_token", std::string{});
    cfg.vlm.max_retries = v.value("max_retries", cfg.vlm.max_retries);
    cfg.vlm.retry_backoff_ms = v.value("retry_backoff_ms", cfg.vlm.retry_backoff_ms);
  }
  if (j.contains("parser")) {
    cfg.parser_url = j.at("parser").value("url", std::string{});
  }
  if (j.contains("diff")) {
    const auto& d = j.at("diff");
    cfg.explore.diff.delta = d.value("delta", cfg.explore.diff.delta);
    cfg.explore.diff.tau = d.value("tau", cfg.explore.diff.tau);
    cfg.explore.diff.tau_screen = d.value("tau_screen", cfg.explore.diff.tau_screen);
  }
  if (j.contains("explore")) {
    const auto& e = j.at("explore");
    cfg.explore.max_steps = e.value("max_steps", cfg.explore.max_steps);
    cfg.explore.per_screen_target_cap =
        e.value("per_screen_target_cap", cfg.explore.per_screen_target_cap);
    cfg.explore.seed = e.value("seed", cfg.explore.seed);
    cfg.explore.describe = e.value("describe", cfg.explore.describe);
    cfg.explore.settle_ms = e.value("settle_ms", cfg.explore.settle_ms);
    const std::string mode = e.value("detectors", std::string{"hierarchy"});
    if (mode == "vision") cfg.explore.detectors = DetectorMode::vision;
    else if (mode == "hierarchy") cfg.explore.detectors = DetectorMode::hierarchy;
    else if (mode == "both") cfg.explore.detectors = DetectorMode::both;
    else throw Error(Errc::config_error, "unknown detectors mode '" + mode + "'");
  }
  if (j.contains("device")) {
    const auto& d = j.at("device");
    cfg.backend = d.value("backend", std::string{});
    cfg.adb_serial = d.value("serial", std::string{});
    cfg.sim_scene = d.value("scene", std::string{});
  }
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  cfg.prompt_dir = j.value("prompt_dir", cfg.prompt_dir);
  return cfg;
}

void apply_env_overrides(AppConfig& cfg) {
  if (const char* v = std::getenv("SWIPEKIT_VLM_URL")) cfg.vlm.url = v;
  if (const char* v = std::getenv("SWIPEKIT_VLM_MODEL")) cfg.vlm.model = v;
  if (const char* v = std::getenv("SWIPEKIT_VLM_TOKEN")) cfg.vlm.auth_token = v;
  if (const char* v = std::getenv("SWIPEKIT_PARSER_URL")) cfg.parser_url = v;
}

}  // namespace swipekit
