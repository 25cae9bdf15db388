#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kerrsq/cli.hpp"
#include "kerrsq/version.hpp"

namespace {

struct GridFlags {
  std::optional<double> single;
  std::string range_text;

  // Resolves --x / --x-range into a grid; empty when neither was given.
  std::vector<double> resolve(const std::string& flag, std::ostream& diag, bool& ok) const {
    ok = true;
    if (!range_text.empty()) {
      const auto range = kerrsq::io::parse_range(range_text);
      if (!range) {
        diag << "error: bad " << flag << " '" << range_text << "', expected start:stop:count"
             << " with count >= 2\n";
        ok = false;
        return {};
      }
      return kerrsq::io::linspace(*range);
    }
    if (single) return {*single};
    return {};
  }
};

bool parse_output(const std::string& format_text, kerrsq::cli::CommonOutput& out,
                  std::ostream& diag) {
  const auto format = kerrsq::io::parse_format(format_text);
  if (!format) {
    diag << "error: unknown format '" << format_text << "' (expected csv or json)\n";
    return false;
  }
  out.format = *format;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadrature squeezing spectra and photon correlations of ultrashort pulses in "
               "a relaxing Kerr medium"};
  app.set_version_flag("--version", std::string("kerrsq ") + kerrsq::kVersion);
  app.require_subcommand(1);

  GridFlags psi0, omega;
  std::string format_text = "csv";
  std::string out_path;
  std::string phase_text = "optimal";
  double omega0 = 0.0, nu = 10.0, gamma = 1e-2, t_eval = 0.0;
  double band_center = 0.0, band_width = 0.75;
  double tol_scale = 1.0;
  std::string case_filter;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format: csv or json")
        ->capture_default_str();
    sub->add_option("--out", out_path, "Output path (default: stdout)");
  };
  const auto add_psi0 = [&](CLI::App* sub) {
    sub->add_option("--psi0", psi0.single, "Peak nonlinear phase");
    sub->add_option("--psi0-range", psi0.range_text, "Peak nonlinear phase grid start:stop:count");
  };

  CLI::App* quadspec = app.add_subcommand(
      "quadspec", "Quadrature fluctuation spectra S_X, S_Y over a (psi0, Omega) grid");
  add_psi0(quadspec);
  quadspec->add_option("--omega-range", omega.range_text,
                       "Frequency grid start:stop:count (Omega = omega tau_r)");
  quadspec->add_option("--omega0", omega0, "Frequency the phase is optimized for")
      ->capture_default_str();
  quadspec->add_option("--nu", nu, "Pulse duration over relaxation time")
      ->capture_default_str();
  quadspec->add_option("--gamma", gamma, "Nonlinear coupling (n_bar0 = psi0 / 2 gamma)")
      ->capture_default_str();
  quadspec->add_option("--t", t_eval, "Evaluation time in envelope units")
      ->capture_default_str();
  quadspec->add_option("--phase", phase_text, "Phase profile: optimal or fixed:<radians>")
      ->capture_default_str();
  add_common(quadspec);

  CLI::App* bandwidth = app.add_subcommand(
      "bandwidth", "Half-depth width of the sub-shot-noise spectral region vs psi0");
  add_psi0(bandwidth);
  add_common(bandwidth);

  CLI::App* photon = app.add_subcommand(
      "photon", "Photon spectral density or band-integrated spectral correlations");
  add_psi0(photon);
  photon->add_option("--omega-range", omega.range_text,
                     "Frequency grid start:stop:count (Omega = omega tau_p); selects the "
                     "density table");
  photon->add_option("--nu", nu, "Pulse duration over relaxation time")->capture_default_str();
  photon->add_option("--gamma", gamma, "Nonlinear coupling (n_bar0 = psi0 / 2 gamma)")
      ->capture_default_str();
  photon->add_option("--band-center", band_center, "Band center (Omega = omega tau_p)")
      ->capture_default_str();
  photon->add_option("--band-width", band_width, "Band width (Omega = omega tau_p)")
      ->capture_default_str();
  add_common(photon);

  CLI::App* validate = app.add_subcommand(
      "validate", "Run the oracle suite and emit the tolerance ledger");
  validate->add_option("--tol-scale", tol_scale, "Multiplier applied to every tolerance")
      ->capture_default_str();
  validate->add_option("--case", case_filter, "Run a single case by id");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kerrsq::cli::kExitUsage;
  }

  std::ostream& diag = std::cerr;
  kerrsq::cli::CommonOutput out;
  out.out_path = out_path;
  if (!parse_output(format_text, out, diag)) return kerrsq::cli::kExitUsage;

  try {
    if (quadspec->parsed()) {
      kerrsq::cli::QuadspecConfig config;
      bool ok = false;
      config.psi0_grid = psi0.resolve("--psi0-range", diag, ok);
      if (!ok) return kerrsq::cli::kExitUsage;
      config.omega_grid = omega.resolve("--omega-range", diag, ok);
      if (!ok) return kerrsq::cli::kExitUsage;
      const auto phase = kerrsq::cli::PhaseSpec::parse(phase_text);
      if (!phase) {
        diag << "error: bad --phase '" << phase_text << "', expected optimal or fixed:<radians>\n";
        return kerrsq::cli::kExitUsage;
      }
      config.phase = *phase;
      config.omega0 = omega0;
      config.nu = nu;
      config.gamma = gamma;
      config.t = t_eval;
      config.out = out;
      return kerrsq::cli::cmd_quadspec(config, diag);
    }
    if (bandwidth->parsed()) {
      kerrsq::cli::BandwidthConfig config;
      bool ok = false;
      config.psi0_grid = psi0.resolve("--psi0-range", diag, ok);
      if (!ok) return kerrsq::cli::kExitUsage;
      config.out = out;
      return kerrsq::cli::cmd_bandwidth(config, diag);
    }
    if (photon->parsed()) {
      kerrsq::cli::PhotonConfig config;
      bool ok = false;
      config.psi0_grid = psi0.resolve("--psi0-range", diag, ok);
      if (!ok) return kerrsq::cli::kExitUsage;
      config.omega_grid = omega.resolve("--omega-range", diag, ok);
      if (!ok) return kerrsq::cli::kExitUsage;
      config.nu = nu;
      config.gamma = gamma;
      config.band_center = band_center;
      config.band_width = band_width;
      config.out = out;
      return kerrsq::cli::cmd_photon(config, diag);
    }
    if (validate->parsed()) {
      kerrsq::cli::ValidateConfig config;
      config.tol_scale = tol_scale;
      config.case_filter = case_filter;
      config.out = out;
      return kerrsq::cli::cmd_validate(config, diag);
    }
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << "\n";
    return kerrsq::cli::kExitUsage;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kerrsq::cli::kExitValidationFailure;
  }
  return kerrsq::cli::kExitUsage;
}
