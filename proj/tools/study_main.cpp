#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "linkplan/errors.hpp"
#include "linkplan/study.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid_config = 1;
constexpr int exit_infeasible = 2;

int cmd_validate(const std::string& path) {
  try {
    const linkplan::StudyConfig cfg = linkplan::validate_config_file(path);
    std::printf("OK: %s study, table -> %s\n",
                linkplan::study_kind_name(cfg.kind).c_str(), cfg.table_path.c_str());
    for (const auto& w : cfg.warnings) std::printf("warning: %s\n", w.c_str());
    return exit_ok;
  } catch (const linkplan::config_error& e) {
    for (const auto& issue : e.issues) std::fprintf(stderr, "error: %s\n", issue.c_str());
    return exit_invalid_config;
  }
}

int cmd_run(const std::string& path) {
  linkplan::StudyConfig cfg;
  try {
    cfg = linkplan::validate_config_file(path);
  } catch (const linkplan::config_error& e) {
    for (const auto& issue : e.issues) std::fprintf(stderr, "error: %s\n", issue.c_str());
    return exit_invalid_config;
  }
  for (const auto& w : cfg.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  try {
    const linkplan::StudyReport rep = linkplan::run_study(cfg);
    std::printf("%s: %d rows -> %s (metadata: %s)\n",
                linkplan::study_kind_name(rep.kind).c_str(), rep.rows,
                rep.table_path.c_str(), rep.metadata_path.c_str());
    return exit_ok;
  } catch (const linkplan::error& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return exit_infeasible;
  }
}

int cmd_calibrate(const std::string& path) {
  linkplan::StudyConfig cfg;
  try {
    cfg = linkplan::validate_config_file(path);
    if (cfg.kind != linkplan::StudyKind::cable_sweep || !cfg.calibration)
      throw linkplan::config_error(
          {"calibrate-feed needs a cable-sweep config with a calibration block"});
  } catch (const linkplan::config_error& e) {
    for (const auto& issue : e.issues) std::fprintf(stderr, "error: %s\n", issue.c_str());
    return exit_invalid_config;
  }
  try {
    linkplan::PowerFeedSpec feed = cfg.feed ? *cfg.feed : linkplan::PowerFeedSpec{};
    const linkplan::FeedCalibration cal = linkplan::calibrate_feed(
        *cfg.cable, feed, cfg.calibration->boundary_fiber_pairs,
        cfg.calibration->boundary_voltage_kv * 1e3);
    std::printf("boundary: %d fiber pairs at %.3g kV\n", cal.boundary_fiber_pairs,
                cal.boundary_voltage_v / 1e3);
    std::printf("theta = R0/((1-eps)*eta_eo) = %.6g ohm/km  (window %.6g .. %.6g]\n",
                cal.theta_ohm_per_km, cal.theta_window_low, cal.theta_window_high);
    std::printf("fitted eo_efficiency = %.6g  (R0 = %.6g ohm/km, eps = %.6g)\n",
                cal.fitted_eo_efficiency, feed.cable_resistance_ohm_per_km,
                feed.control_fraction);
    return exit_ok;
  } catch (const linkplan::error& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return exit_infeasible;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-haul optical link design studies"};
  app.set_version_flag("--version", linkplan::tool_version);
  app.require_subcommand(1);

  std::string run_path, validate_path, calibrate_path;
  CLI::App* run = app.add_subcommand("run", "run a study from a config file");
  run->add_option("config", run_path, "path to the study config")->required();
  CLI::App* validate = app.add_subcommand("validate", "validate a config file");
  validate->add_option("config", validate_path, "path to the study config")->required();
  CLI::App* calibrate =
      app.add_subcommand("calibrate-feed", "fit the power-feed scalar to a boundary");
  calibrate->add_option("config", calibrate_path, "path to the study config")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_path);
    if (validate->parsed()) return cmd_validate(validate_path);
    if (calibrate->parsed()) return cmd_calibrate(calibrate_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_infeasible;
  }
  return exit_ok;
}
