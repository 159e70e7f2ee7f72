#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tfd/runners.hpp"
#include "tfd/verify.hpp"

namespace {

// exit codes: 0 success, 1 verification failure, 2 configuration error
constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

struct CliOverrides {
  std::map<std::string, std::string> kv;
  std::vector<std::string> frames;
};

void attach_common_flags(CLI::App* cmd, CliOverrides& ov, std::string& config_path) {
  cmd->add_option("--config", config_path, "flat key=value config file");
  auto opt = [cmd, &ov](const std::string& flag, const std::string& key,
                        const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&ov, key](const std::string& v) { ov.kv[key] = v; }, help);
  };
  opt("--omega", "omega", "oscillator frequency (default 1)");
  opt("--kappa-abs", "kappa_abs", "|kappa| of the two-photon term (default 0)");
  opt("--kappa-arg", "kappa_arg", "arg kappa in radians (default 0)");
  opt("--beta", "beta", "inverse temperature");
  opt("--beta-sweep", "beta_sweep", "sweep start:stop:count");
  opt("--cutoff", "cutoff", "fixed Fock cutoff (0 = automatic)");
  cmd->add_flag_function(
      "--auto-cutoff",
      [&ov](std::int64_t) { ov.kv["cutoff"] = "0"; },
      "choose the cutoff automatically (default)");
  opt("--tol", "tol", "truncation target tolerance (default 1e-10)");
  opt("--initial-cutoff", "initial_cutoff", "truncation policy start (default 16)");
  opt("--growth", "growth", "truncation policy growth factor (default 1.5)");
  opt("--max-cutoff", "max_cutoff", "truncation policy cap (default 512)");
  opt("--grid", "grid", "phase-space grid qmin:qmax:step");
  opt("--format", "format", "csv or json (default csv)");
  opt("--out", "out", "output path (default stdout)");
  opt("--threads", "threads", "worker threads (default 1)");
  opt("--route", "state_route", "state construction eq28|spectral|a9|a10|free");
  cmd->add_option("--frame", ov.frames, "quadrature frame f,g (repeatable)");
}

tfd::RunConfig resolve_config(const CliOverrides& ov, const std::string& config_path) {
  tfd::RunConfig cfg;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("TFD_CONFIG")) path = env;
  }
  if (!path.empty()) cfg.apply_key_values(tfd::RunConfig::read_key_values(path));
  cfg.apply_key_values(ov.kv);  // command line wins
  if (!ov.frames.empty()) {
    cfg.frames.clear();
    for (const auto& f : ov.frames) cfg.frames.push_back(tfd::parse_frame(f));
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated Fock-space toolkit for generalized thermo vacuum states"};
  app.require_subcommand(1);

  CliOverrides ov;
  std::string config_path;

  auto* thermal = app.add_subcommand("thermal", "thermodynamic closed-form sweep");
  auto* phase = app.add_subcommand("phase-space", "Wigner grid and tomogram profiles");
  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  auto* state = app.add_subcommand("state", "dump doubled-state amplitudes and reduced density");
  for (auto* cmd : {thermal, phase, verify, state}) {
    attach_common_flags(cmd, ov, config_path);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const tfd::RunConfig cfg = resolve_config(ov, config_path);

    if (thermal->parsed()) {
      const auto rows = tfd::run_thermal(cfg);
      tfd::write_output(cfg, cfg.format == "json" ? tfd::thermal_json(cfg, rows)
                                                  : tfd::thermal_csv(cfg, rows));
      for (const auto& r : rows) {
        if (!r.ok) return kVerifyFailed;
      }
      return kOk;
    }
    if (phase->parsed()) {
      const auto result = tfd::run_phase_space(cfg);
      if (cfg.format == "json") {
        tfd::write_output(cfg, tfd::phase_space_json(cfg, result));
      } else {
        tfd::write_output(cfg, tfd::phase_space_wigner_csv(cfg, result), "wigner");
        tfd::write_output(cfg, tfd::phase_space_tomogram_csv(cfg, result),
                          "tomogram");
      }
      return result.errors.empty() ? kOk : kVerifyFailed;
    }
    if (state->parsed()) {
      const auto result = tfd::run_state(cfg);
      tfd::write_output(cfg, cfg.format == "json" ? tfd::state_json(cfg, result)
                                                  : tfd::state_csv(cfg, result));
      return kOk;
    }
    if (verify->parsed()) {
      const auto report = tfd::run_verify(cfg);
      tfd::write_output(cfg, tfd::serialize_report(report, cfg));
      std::cerr << tfd::report_console_summary(report);
      return report.all_pass() ? kOk : kVerifyFailed;
    }
  } catch (const tfd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kConfigError;
}
