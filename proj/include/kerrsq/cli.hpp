#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerrsq/io.hpp"
#include "kerrsq/photon.hpp"
#include "kerrsq/pulse.hpp"
#include "kerrsq/quadspec.hpp"
#include "kerrsq/validation.hpp"
#include "kerrsq/version.hpp"

namespace kerrsq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitUsage = 2;

struct PhaseSpec {
  enum class Kind { optimal, fixed };
  Kind kind = Kind::optimal;
  double fixed_radians = 0.0;

  static std::optional<PhaseSpec> parse(const std::string& text) {
    if (text == "optimal") return PhaseSpec{Kind::optimal, 0.0};
    if (text.rfind("fixed:", 0) == 0) {
      try {
        return PhaseSpec{Kind::fixed, std::stod(text.substr(6))};
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }
};

struct CommonOutput {
  std::string out_path;  // empty = stdout
  io::OutputFormat format = io::OutputFormat::csv;
};

struct QuadspecConfig {
  std::vector<double> psi0_grid;
  std::vector<double> omega_grid;  // Omega = omega tau_r
  double omega0 = 0.0;
  double nu = 10.0;
  double gamma = 1e-2;
  double t = 0.0;
  PhaseSpec phase;
  CommonOutput out;
};

struct BandwidthConfig {
  std::vector<double> psi0_grid;
  CommonOutput out;
};

struct PhotonConfig {
  std::vector<double> psi0_grid;
  std::vector<double> omega_grid;  // Omega = omega tau_p; empty = correlation mode
  double nu = 10.0;
  double gamma = 1e-2;
  double band_center = 0.0;
  double band_width = 0.75;
  CommonOutput out;
};

struct ValidateConfig {
  double tol_scale = 1.0;
  std::string case_filter;
  CommonOutput out;
};

namespace detail {

inline nlohmann::json base_metadata(const std::string& command) {
  nlohmann::json meta;
  meta["artifact_version"] = kVersion;
  meta["command"] = command;
  return meta;
}

inline bool emit(const io::Table& table, const nlohmann::json& meta, const CommonOutput& out,
                 std::ostream& diag) {
  if (!io::write_output(table, meta, out.out_path, out.format)) {
    diag << "error: could not write output";
    if (!out.out_path.empty()) diag << " to " << out.out_path;
    diag << "\n";
    return false;
  }
  return true;
}

}  // namespace detail

/// Quadrature fluctuation spectra over a (psi0, Omega) grid. With the
/// optimal phase the general closed form anchored at omega0 is used; with a
/// fixed phase the direct spectrum expression is evaluated.
inline int cmd_quadspec(const QuadspecConfig& config, std::ostream& diag = std::cerr) {
  if (config.psi0_grid.empty() || config.omega_grid.empty()) {
    diag << "error: quadspec needs --psi0 or --psi0-range and --omega-range\n";
    return kExitUsage;
  }
  if (!(config.nu > 1.0)) {
    diag << "error: quadspec requires nu > 1 (slow-envelope regime)\n";
    return kExitUsage;
  }

  const bool optimal = config.phase.kind == PhaseSpec::Kind::optimal;
  if (config.gamma > 0.1) {
    diag << "note: gamma = " << config.gamma
         << " is outside the weak-coupling regime the expansions assume\n";
  }
  io::Table table;
  table.columns = {"psi0", "omega_tau_r", "s_x", "s_y"};
  table.comments = {
      std::string("quadrature fluctuation spectra; frequency normalized by tau_r"),
      optimal ? "phase: optimal for omega0_tau_r = " + io::format_double(config.omega0)
              : "phase: fixed at " + io::format_double(config.phase.fixed_radians) + " rad",
      "formula: " + std::string(optimal ? "general (anchored at omega0)" : "direct"),
  };

  for (const double psi0 : config.psi0_grid) {
    const auto params = KerrParams::from_peak_phase(psi0 > 0 ? psi0 : 0.0, config.nu,
                                                    config.gamma);
    const GaussianEnvelope env(params.tau_p());
    const auto kern = params.exponential_kernel();
    for (const double omega : config.omega_grid) {
      SpectrumPair p;
      if (optimal) {
        p = spectrum_general(params, env, config.t, omega, config.omega0);
      } else {
        p = spectrum(params, env, kern, PhaseProfile::constant(config.phase.fixed_radians),
                     config.t, omega);
      }
      table.rows.push_back({psi0, omega, p.s_x, p.s_y});
    }
  }

  nlohmann::json meta = detail::base_metadata("quadspec");
  meta["parameters"] = {{"omega0_tau_r", config.omega0}, {"nu", config.nu},
                        {"gamma", config.gamma},         {"t", config.t},
                        {"phase", optimal ? "optimal" : "fixed"},
                        {"frequency_normalization", "tau_r"}};
  meta["formula_tags"] = {{"spectrum", optimal ? "general" : "direct"}};
  return detail::emit(table, meta, config.out, diag) ? kExitOk : kExitUsage;
}

/// Half-depth width of the squeezed spectral region versus psi0.
inline int cmd_bandwidth(const BandwidthConfig& config, std::ostream& diag = std::cerr) {
  if (config.psi0_grid.empty()) {
    diag << "error: bandwidth needs --psi0 or --psi0-range\n";
    return kExitUsage;
  }
  io::Table table;
  table.columns = {"psi0", "delta_omega_tau_r"};
  table.comments = {"half-depth squeezing bandwidth, frequency normalized by tau_r"};
  for (const double psi0 : config.psi0_grid) {
    table.rows.push_back({psi0, squeezing_bandwidth(psi0)});
  }
  nlohmann::json meta = detail::base_metadata("bandwidth");
  meta["parameters"] = {{"frequency_normalization", "tau_r"}};
  meta["formula_tags"] = {{"bandwidth", "quadratic root in L"}};
  return detail::emit(table, meta, config.out, diag) ? kExitOk : kExitUsage;
}

/// Photon spectral density (with --omega-range) or band-integrated spectral
/// photon correlation curves (over a psi0 grid). All densities and
/// correlations are reported in units of n_bar0.
inline int cmd_photon(const PhotonConfig& config, std::ostream& diag = std::cerr) {
  if (config.psi0_grid.empty()) {
    diag << "error: photon needs --psi0 or --psi0-range\n";
    return kExitUsage;
  }

  if (config.gamma > 0.1) {
    diag << "note: gamma = " << config.gamma
         << " is outside the weak-coupling regime the expansions assume\n";
  }
  nlohmann::json meta = detail::base_metadata("photon");
  meta["parameters"] = {{"nu", config.nu},
                        {"gamma", config.gamma},
                        {"frequency_normalization", "tau_p"},
                        {"density_units", "n_bar0"}};
  // The defining-integral phase exponent is read as the nonlinear phase
  // psi(t) = psi0 rho^2(t); recorded so outputs are traceable to it.
  meta["formula_tags"] = {{"phase_exponent_reading", "psi(t) = psi0 * rho^2(t)"}};

  io::Table table;
  if (!config.omega_grid.empty()) {
    const double psi0 = config.psi0_grid.front();
    const auto params = KerrParams::from_peak_phase(psi0, config.nu, config.gamma);
    table.columns = {"omega_tau_p", "n_classical", "n_relaxing"};
    table.comments = {"photon number spectral density in units of n_bar0",
                      "psi0 = " + io::format_double(psi0),
                      "frequency normalized by tau_p"};
    const auto classical =
        photon_spectrum_series(params, config.omega_grid, PhotonDensityModel::classical);
    const auto relaxing =
        photon_spectrum_series(params, config.omega_grid, PhotonDensityModel::relaxing);
    for (std::size_t i = 0; i < classical.size(); ++i) {
      table.rows.push_back(
          {classical[i].omega_p_norm, classical[i].density, relaxing[i].density});
    }
    meta["formula_tags"]["density"] = "paraxial closed forms";
  } else {
    const bool at_origin = config.band_center == 0.0;
    table.columns = {"psi0", "r_band_literal", "r_band_smooth", "r_band_diagonal"};
    if (at_origin) table.columns.push_back("r_origin_simplified");
    table.comments = {
        "band-integrated spectral photon correlation, units of n_bar0",
        "band center omega_tau_p = " + io::format_double(config.band_center) +
            ", width = " + io::format_double(config.band_width),
        "r_band_literal = diagonal delta part + smooth part - 1 (literal definition)",
        "r_band_smooth = smooth (nonlinear) part only",
    };
    if (at_origin) {
      table.comments.push_back("r_origin_simplified = closed-form band value at the origin");
    }
    for (const double psi0 : config.psi0_grid) {
      const auto params = KerrParams::from_peak_phase(psi0, config.nu, config.gamma);
      const BandCorrelation band =
          band_integral(params, config.band_center, config.band_width);
      std::vector<io::Cell> row{psi0, band.literal, band.smooth_only, band.diagonal_part};
      if (at_origin) row.push_back(band_integral_origin(params, config.band_width));
      table.rows.push_back(std::move(row));
    }
    meta["parameters"]["band_center_tau_p"] = config.band_center;
    meta["parameters"]["band_width_tau_p"] = config.band_width;
    meta["formula_tags"]["band"] =
        at_origin ? "literal definition plus simplified origin form" : "literal definition";
  }
  return detail::emit(table, meta, config.out, diag) ? kExitOk : kExitUsage;
}

/// Runs the oracle suite and emits the tolerance ledger. Exit code 1 when
/// any case misses its tolerance, 2 for an unknown case id.
inline int cmd_validate(const ValidateConfig& config, std::ostream& diag = std::cerr) {
  if (!(config.tol_scale > 0.0)) {
    diag << "error: --tol-scale must be positive\n";
    return kExitUsage;
  }
  ValidationOptions opts;
  opts.tol_scale = config.tol_scale;
  opts.case_filter = config.case_filter;
  const auto rows = run_validation(opts);
  if (rows.empty()) {
    diag << "error: unknown validation case id '" << config.case_filter << "'\n";
    return kExitUsage;
  }

  io::Table table;
  table.columns = {"id", "formula_ref", "oracle_ref", "tolerance", "achieved", "pass"};
  table.comments = {"tolerance ledger: closed forms vs independent oracles"};
  for (const auto& row : rows) {
    table.rows.push_back(
        {row.id, row.formula_ref, row.oracle_ref, row.tolerance, row.achieved, row.pass});
  }

  nlohmann::json meta = detail::base_metadata("validate");
  meta["parameters"] = {{"tol_scale", config.tol_scale}};
  if (!config.case_filter.empty()) meta["parameters"]["case"] = config.case_filter;

  if (!detail::emit(table, meta, config.out, diag)) return kExitUsage;

  bool all_pass = true;
  for (const auto& row : rows) {
    if (!row.pass) {
      all_pass = false;
      diag << "validation failure: " << row.id << " achieved " << io::format_double(row.achieved)
           << " > tolerance " << io::format_double(row.tolerance) << "\n";
    }
  }
  return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace kerrsq::cli
