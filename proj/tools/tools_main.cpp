#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <json.hpp>

#include "swipekit/config.hpp"
#include "swipekit/errors.hpp"
#include "swipekit/explorer.hpp"
#include "swipekit/jsonl.hpp"
#include "swipekit/report.hpp"
#include "swipekit/reward.hpp"
#include "swipekit/sim.hpp"

#ifndef SWIPEKIT_DEFAULT_PROMPT_DIR
#define SWIPEKIT_DEFAULT_PROMPT_DIR "assets/prompts"
#endif

namespace {

using namespace swipekit;

constexpr int kExitOk = 0;
constexpr int kExitEmpty = 1;   // explore retained nothing, validate found violations
constexpr int kExitConfig = 2;  // usage, config, schema errors
constexpr int kExitDevice = 3;  // device or transport errors

int map_error_exit(const Error& e) {
  switch (e.code()) {
    case Errc::device_unreachable:
    case Errc::transport_failure:
    case Errc::auth_failure:
    case Errc::decode_failure:
    case Errc::dump_failure:
      return kExitDevice;
    default:
      return kExitConfig;
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::sink_failure, "cannot write " + path.string());
  out << text;
}

int run_explore(const AppConfig& cfg, bool allow_empty) {
  cfg.validate();

  const bool needs_vlm = cfg.explore.describe || cfg.explore.detectors == DetectorMode::vision ||
                         cfg.explore.detectors == DetectorMode::both;
  if (needs_vlm && cfg.vlm.url.empty()) {
    throw Error(Errc::config_error,
                "the selected detector/describe settings need a vision endpoint (--vlm-url)");
  }

  PromptLibrary prompts;
  if (needs_vlm) {
    prompts = PromptLibrary::load(cfg.prompt_dir);
  }

  std::unique_ptr<Device> device;
  if (cfg.backend == "sim") {
    device = std::make_unique<SimDevice>(load_scene_file(cfg.sim_scene));
  } else {
    AdbConfig adb;
    adb.serial = cfg.adb_serial;
    adb.settle_ms = cfg.explore.settle_ms;
    device = make_adb_device(adb);
  }

  std::unique_ptr<Transport> vlm_transport;
  std::unique_ptr<Transport> parser_transport;
  Services services;
  services.prompts = &prompts;
  if (!cfg.vlm.url.empty()) {
    vlm_transport = make_http_transport(cfg.vlm.url);
    services.vlm = vlm_transport.get();
    services.vlm_endpoint = cfg.vlm;
  }
  if (!cfg.parser_url.empty()) {
    parser_transport = make_http_transport(cfg.parser_url);
    services.parser = parser_transport.get();
  }

  std::unique_ptr<Clock> clock;
  if (cfg.fixed_time.empty()) {
    clock = std::make_unique<SystemClock>();
  } else {
    clock = std::make_unique<FixedClock>(cfg.fixed_time);
  }

  DatasetSink sink(cfg.out_dir, cfg.explore.app_name, *clock);
  const ExploreStats stats = explore(*device, cfg.explore, services, sink);
  write_text(std::filesystem::path(cfg.out_dir) / "stats.json", stats.to_json() + "\n");

  std::cout << stats.to_json() << "\n";
  std::cout << "dataset: " << (std::filesystem::path(cfg.out_dir) / "swipes.jsonl").string()
            << " (" << sink.swipes_written() << " records)\n";
  if (stats.device_lost) return kExitDevice;
  if (sink.swipes_written() == 0 && !allow_empty) return kExitEmpty;
  return kExitOk;
}

int run_score(const std::string& pred_path, const std::string& gold_path,
              const std::string& out_path) {
  const auto predictions = read_predictions(pred_path);
  if (predictions.empty()) {
    throw Error(Errc::config_error, "prediction file is empty");
  }
  const auto gold = read_records(gold_path);
  if (gold.empty()) {
    throw Error(Errc::config_error, "gold file is empty");
  }

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::sink_failure, "cannot write " + out_path);

  double sum_total = 0.0, sum_acc = 0.0, sum_format = 0.0, sum_type = 0.0;
  for (const auto& rec : gold) {
    const GoldSwipe g = GoldSwipe::from_record(rec);
    auto it = predictions.find(rec.id);
    // A missing prediction scores as an unparseable (empty) response.
    const RewardBreakdown r = score_response(it == predictions.end() ? "" : it->second, g);
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    j["r_start"] = r.r_start;
    j["r_end"] = r.r_end;
    j["r_dir"] = r.r_dir;
    j["r_dur"] = r.r_dur;
    j["r_acc"] = r.r_acc;
    j["r_format"] = r.r_format;
    j["r_type"] = r.r_type;
    j["total_norm"] = r.total_norm;
    out << j.dump() << '\n';
    sum_total += r.total_norm;
    sum_acc += r.r_acc;
    sum_format += r.r_format;
    sum_type += r.r_type;
  }
  const double n = static_cast<double>(gold.size());
  nlohmann::ordered_json summary;
  summary["records"] = gold.size();
  summary["mean_total_norm"] = sum_total / n;
  summary["mean_r_acc"] = sum_acc / n;
  summary["mean_r_format"] = sum_format / n;
  summary["mean_r_type"] = sum_type / n;
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

int run_eval(const std::string& pred_path, const std::string& gold_path,
             const std::string& out_path) {
  const auto predictions = read_predictions(pred_path);
  const auto gold = read_records(gold_path);
  if (gold.empty()) {
    throw Error(Errc::config_error, "gold file is empty");
  }
  const EvalReport report = evaluate(predictions, gold);
  write_text(out_path, eval_report_to_json(report) + "\n");
  std::cout << "accuracy " << report.correct << "/" << report.total << " -> " << out_path
            << "\n";
  return kExitOk;
}

int run_report(const std::string& eval_path, const std::string& out_dir) {
  std::ifstream in(eval_path, std::ios::binary);
  if (!in) throw Error(Errc::config_error, "cannot open " + eval_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const EvalReport report = eval_report_from_json(text);
  std::filesystem::create_directories(out_dir);
  write_text(std::filesystem::path(out_dir) / "report.md", render_report_markdown(report));
  write_text(std::filesystem::path(out_dir) / "report.html", render_report_html(report));
  std::cout << "wrote " << out_dir << "/report.md and report.html\n";
  return kExitOk;
}

int run_validate(const std::string& data_path) {
  const auto records = read_records(data_path);
  const std::string base_dir = std::filesystem::path(data_path).parent_path().string();
  const DatasetReport report = validate_dataset(records, base_dir.empty() ? "." : base_dir);
  std::cout << report.records << " records, " << report.violations.size() << " violation(s)\n";
  for (const auto& [id, v] : report.violations) {
    std::cout << id << ": " << v.field << ": " << v.rule << " (" << v.message << ")\n";
  }
  return report.violations.empty() ? kExitOk : kExitEmpty;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swipe dataset synthesis and evaluation toolkit"};
  app.require_subcommand(1);

  // explore: flag values land in `flags`; precedence is flags > env > config file.
  AppConfig flags;
  std::string config_path;
  std::string detector = "hierarchy";
  bool allow_empty = false;
  auto* explore_cmd =
      app.add_subcommand("explore", "Crawl a device/sim and synthesize swipe records");
  explore_cmd->add_option("--config", config_path, "JSON config file");
  auto* sim_opt = explore_cmd->add_option("--sim", flags.sim_scene, "simulator scene file");
  auto* adb_opt =
      explore_cmd->add_option("--adb", flags.adb_serial, "adb device serial (empty = default)")
          ->expected(0, 1);
  auto* steps_opt = explore_cmd->add_option("--steps", flags.explore.max_steps,
                                            "exploration steps")
                        ->capture_default_str();
  auto* seed_opt =
      explore_cmd->add_option("--seed", flags.explore.seed, "random seed")->capture_default_str();
  auto* out_opt =
      explore_cmd->add_option("--out", flags.out_dir, "output directory")->capture_default_str();
  auto* app_opt = explore_cmd->add_option("--app", flags.explore.app_name,
                                          "app name stored in records")
                      ->capture_default_str();
  auto* detector_opt =
      explore_cmd->add_option("--detector", detector, "target detector: vision|hierarchy|both")
          ->capture_default_str();
  auto* describe_opt =
      explore_cmd->add_flag("--describe,!--no-describe", flags.explore.describe,
                            "generate natural-language commands via the vision endpoint");
  auto* cap_opt = explore_cmd->add_option("--cap", flags.explore.per_screen_target_cap,
                                          "max targets per screen")
                      ->capture_default_str();
  auto* settle_opt = explore_cmd->add_option("--settle", flags.explore.settle_ms,
                                             "post-gesture settle delay (ms)")
                         ->capture_default_str();
  auto* delta_opt = explore_cmd->add_option("--delta", flags.explore.diff.delta,
                                            "per-pixel diff threshold")
                        ->capture_default_str();
  auto* tau_opt = explore_cmd->add_option("--tau", flags.explore.diff.tau,
                                          "changed-pixel ratio threshold")
                      ->capture_default_str();
  auto* tau_screen_opt = explore_cmd->add_option("--tau-screen", flags.explore.diff.tau_screen,
                                                 "full-screen new-state ratio threshold")
                             ->capture_default_str();
  auto* vlm_url_opt =
      explore_cmd->add_option("--vlm-url", flags.vlm.url, "vision chat endpoint base URL");
  auto* vlm_model_opt =
      explore_cmd->add_option("--vlm-model", flags.vlm.model, "vision model name");
  auto* vlm_token_opt =
      explore_cmd->add_option("--vlm-token", flags.vlm.auth_token, "vision endpoint bearer token");
  auto* parser_url_opt = explore_cmd->add_option("--parser-url", flags.parser_url,
                                                 "element parser endpoint base URL");
  auto* prompts_opt =
      explore_cmd->add_option("--prompts", flags.prompt_dir, "prompt asset directory");
  auto* fixed_time_opt =
      explore_cmd->add_option("--fixed-time", flags.fixed_time,
                              "freeze created_at to this ISO-8601 stamp (reproducible runs)");
  explore_cmd->add_flag("--allow-empty", allow_empty, "exit 0 even when no swipe was retained");

  // score
  std::string pred_path, gold_path, out_path = "rewards.jsonl";
  auto* score_cmd = app.add_subcommand("score", "Per-record reward breakdown for predictions");
  score_cmd->add_option("--pred", pred_path, "predictions JSONL ({id, response})")->required();
  score_cmd->add_option("--gold", gold_path, "gold swipe dataset JSONL")->required();
  score_cmd->add_option("--out", out_path, "output rewards JSONL")->capture_default_str();

  // eval
  std::string eval_pred, eval_gold, eval_out = "eval.json";
  auto* eval_cmd = app.add_subcommand("eval", "Benchmark success evaluation");
  eval_cmd->add_option("--pred", eval_pred, "predictions JSONL ({id, response})")->required();
  eval_cmd->add_option("--gold", eval_gold, "gold swipe dataset JSONL")->required();
  eval_cmd->add_option("--out", eval_out, "output report JSON")->capture_default_str();

  // report
  std::string report_eval, report_dir = "report";
  auto* report_cmd = app.add_subcommand("report", "Render an eval report to markdown/HTML");
  report_cmd->add_option("--eval", report_eval, "eval report JSON")->required();
  report_cmd->add_option("--out-dir", report_dir, "output directory")->capture_default_str();

  // validate
  std::string data_path;
  auto* validate_cmd = app.add_subcommand("validate", "Lint a swipe dataset");
  validate_cmd->add_option("--data", data_path, "swipe dataset JSONL")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*explore_cmd) {
      AppConfig cfg;
      if (!config_path.empty()) {
        cfg = load_config_file(config_path);
      }
      apply_env_overrides(cfg);
      if (cfg.prompt_dir.empty()) cfg.prompt_dir = SWIPEKIT_DEFAULT_PROMPT_DIR;

      if (sim_opt->count()) {
        cfg.backend = "sim";
        cfg.sim_scene = flags.sim_scene;
      }
      if (adb_opt->count()) {
        cfg.backend = "adb";
        cfg.adb_serial = flags.adb_serial;
      }
      if (sim_opt->count() && adb_opt->count()) {
        throw Error(Errc::config_error, "choose exactly one of --sim and --adb");
      }
      if (steps_opt->count()) cfg.explore.max_steps = flags.explore.max_steps;
      if (seed_opt->count()) cfg.explore.seed = flags.explore.seed;
      if (out_opt->count()) cfg.out_dir = flags.out_dir;
      if (app_opt->count()) cfg.explore.app_name = flags.explore.app_name;
      if (describe_opt->count()) cfg.explore.describe = flags.explore.describe;
      if (cap_opt->count()) cfg.explore.per_screen_target_cap = flags.explore.per_screen_target_cap;
      if (settle_opt->count()) cfg.explore.settle_ms = flags.explore.settle_ms;
      if (delta_opt->count()) cfg.explore.diff.delta = flags.explore.diff.delta;
      if (tau_opt->count()) cfg.explore.diff.tau = flags.explore.diff.tau;
      if (tau_screen_opt->count()) cfg.explore.diff.tau_screen = flags.explore.diff.tau_screen;
      if (vlm_url_opt->count()) cfg.vlm.url = flags.vlm.url;
      if (vlm_model_opt->count()) cfg.vlm.model = flags.vlm.model;
      if (vlm_token_opt->count()) cfg.vlm.auth_token = flags.vlm.auth_token;
      if (parser_url_opt->count()) cfg.parser_url = flags.parser_url;
      if (prompts_opt->count()) cfg.prompt_dir = flags.prompt_dir;
      if (fixed_time_opt->count()) cfg.fixed_time = flags.fixed_time;
      if (detector_opt->count()) {
        if (detector == "vision") cfg.explore.detectors = DetectorMode::vision;
        else if (detector == "hierarchy") cfg.explore.detectors = DetectorMode::hierarchy;
        else if (detector == "both") cfg.explore.detectors = DetectorMode::both;
        else throw Error(Errc::config_error, "unknown detector '" + detector + "'");
      }
      if (cfg.backend.empty()) {
        throw Error(Errc::config_error, "choose a device backend: --sim <scene> or --adb");
      }
      return run_explore(cfg, allow_empty);
    }
    if (*score_cmd) return run_score(pred_path, gold_path, out_path);
    if (*eval_cmd) return run_eval(eval_pred, eval_gold, eval_out);
    if (*report_cmd) return run_report(report_eval, report_dir);
    if (*validate_cmd) return run_validate(data_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return map_error_exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
