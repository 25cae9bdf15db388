#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "kerrsq/errors.hpp"
#include "kerrsq/kernel.hpp"
#include "kerrsq/pulse.hpp"

namespace kerrsq {

struct OptimalPhaseResult {
  double value = 0.0;      // phi_0(t), radians
  bool degenerate = false; // true when psi(t) = 0 and the arctan limit pi/4 was used
};

/// Input phase phi_0(t) that minimizes the X-quadrature spectral density at
/// the normalized frequency omega0:
///   phi_0(t) = (1/2) arctan[1 / (psi(t) L(omega0))] - psi(t).
/// At psi(t) = 0 every phase gives the shot-noise floor; the arctan limit
/// pi/4 is returned with the degenerate flag set.
inline OptimalPhaseResult optimal_phase(const KerrParams& params, const GaussianEnvelope& envelope,
                                        double t, double omega0_norm) {
  const double psi = psi_slow(params, envelope, t);
  const double x = psi * lorentzian_L(omega0_norm);
  OptimalPhaseResult r;
  r.degenerate = (psi == 0.0);
  r.value = 0.5 * std::atan2(1.0, x) - psi;
  return r;
}

/// Input phase phi(t) for the given profile.
inline double phase_value(const KerrParams& params, const GaussianEnvelope& envelope,
                          const PhaseProfile& profile, double t) {
  switch (profile.kind) {
    case PhaseProfile::Kind::constant:
      return profile.value;
    case PhaseProfile::Kind::optimal:
      return optimal_phase(params, envelope, t, profile.value).value;
    case PhaseProfile::Kind::compensating:
      return profile.value - psi_slow(params, envelope, t);
  }
  return 0.0;
}

/// Total phase Phi(t) = psi(t) + phi(t). For the optimal profile this is
/// computed directly as (1/2) arctan[1/(psi L(omega0))] to avoid the
/// psi - psi cancellation.
inline double big_phi(const KerrParams& params, const GaussianEnvelope& envelope,
                      const PhaseProfile& profile, double t) {
  switch (profile.kind) {
    case PhaseProfile::Kind::constant:
      return psi_slow(params, envelope, t) + profile.value;
    case PhaseProfile::Kind::optimal:
      return 0.5 * std::atan2(1.0, psi_slow(params, envelope, t) * lorentzian_L(profile.value));
    case PhaseProfile::Kind::compensating:
      return profile.value;
  }
  return 0.0;
}

struct QuadratureMeans {
  double x_mean = 0.0;
  double y_mean = 0.0;
  double big_phi = 0.0;
};

namespace detail {
inline QuadratureMeans mean_xy(double alpha_abs, double mu, double phi_total) {
  const double damp = alpha_abs * std::exp(-mu);
  return {damp * std::cos(phi_total), damp * std::sin(phi_total), phi_total};
}
}  // namespace detail

/// Mean quadratures of the output field,
///   <X> = |alpha0(t)| e^{-mu(t)} cos Phi(t),  <Y> = |alpha0(t)| e^{-mu(t)} sin Phi(t),
/// with |alpha0(t)| = sqrt(n_bar0) rho(t). The damping factor is a quantum
/// effect absent from the classical envelope description.
inline QuadratureMeans quadrature_means(const KerrParams& params, const GaussianEnvelope& envelope,
                                        const ResponseKernel& kernel, const PhaseProfile& profile,
                                        double t) {
  detail::require_exponential(kernel, "quadrature_means");
  const double alpha_abs = std::sqrt(params.n_bar0()) * envelope.rho(t);
  const double mu = mu_slow(params, envelope, t);
  return detail::mean_xy(alpha_abs, mu, big_phi(params, envelope, profile, t));
}

/// How the pulse envelope is treated across the correlation lag.
///  - literal: envelope and total phase evaluated at both t and t + tau.
///  - frozen: envelope and phase held at their values at t, which is the
///    regime in which the closed-form spectra are exact.
enum class EnvelopeTracking { literal, frozen };

struct CorrValues {
  double rx_smooth = 0.0;  // smooth part, carries the kernel's 1/tau_r scale
  double ry_smooth = 0.0;
  bool has_delta = true;   // the (1/4) delta(tau) term, carried symbolically
};

/// Smooth parts of the quadrature correlation functions
///   R_X(t, t+tau) = (1/4)[ delta(tau)
///                          - psi0 rho rho_+ h(tau) sin(Phi + Phi_+)
///                          + psi0^2 rho rho_+ g(t,tau) sin Phi sin Phi_+ ],
///   R_Y analogous with + on the h term and cos Phi cos Phi_+,
/// where g(t,tau) = rho^2(t + tau/2) g(tau). The delta term is reported as a
/// flag (weight 1/4), never discretized.
inline CorrValues corr_RX_RY(const KerrParams& params, const GaussianEnvelope& envelope,
                             const ResponseKernel& kernel, const PhaseProfile& profile, double t,
                             double tau, EnvelopeTracking tracking = EnvelopeTracking::literal) {
  detail::require_slow_envelope(params, "corr_RX_RY");
  detail::require_exponential(kernel, "corr_RX_RY");

  const double psi0 = params.psi0();
  const double phi_t = big_phi(params, envelope, profile, t);
  const double h_tau = kernel.h(tau);
  const double g_tau = kernel.autocorr_g(tau);

  double rho_pair = 0.0, g_env = 0.0, phi_p = 0.0;
  if (tracking == EnvelopeTracking::literal) {
    rho_pair = envelope.rho(t) * envelope.rho(t + tau);
    g_env = envelope.rho_sq(t + 0.5 * tau) * g_tau;
    phi_p = big_phi(params, envelope, profile, t + tau);
  } else {
    rho_pair = envelope.rho_sq(t);
    g_env = envelope.rho_sq(t) * g_tau;
    phi_p = phi_t;
  }

  CorrValues out;
  const double h_term = psi0 * rho_pair * h_tau * std::sin(phi_t + phi_p);
  const double g_term = psi0 * psi0 * rho_pair * g_env;
  out.rx_smooth = 0.25 * (-h_term + g_term * std::sin(phi_t) * std::sin(phi_p));
  out.ry_smooth = 0.25 * (h_term + g_term * std::cos(phi_t) * std::cos(phi_p));
  out.has_delta = true;
  return out;
}

struct SpectrumPair {
  double s_x = 0.25;
  double s_y = 0.25;
};

/// Spectral densities of the quadrature fluctuations at normalized frequency
/// Omega = omega tau_r for an arbitrary phase profile:
///   S_X = (1/4)[1 - 2 psi L sin 2Phi + 4 psi^2 L^2 sin^2 Phi],
///   S_Y = (1/4)[1 + 2 psi L sin 2Phi + 4 psi^2 L^2 cos^2 Phi].
/// The shot-noise floor is S = 1/4; S_X + S_Y = 1/2 + psi^2 L^2.
inline SpectrumPair spectrum(const KerrParams& params, const GaussianEnvelope& envelope,
                             const ResponseKernel& kernel, const PhaseProfile& profile, double t,
                             double omega_norm) {
  detail::require_exponential(kernel, "spectrum");
  const double psi = psi_slow(params, envelope, t);
  const double L = lorentzian_L(omega_norm);
  const double phi_total = big_phi(params, envelope, profile, t);
  const double s = std::sin(phi_total);
  const double c = std::cos(phi_total);
  const double psiL = psi * L;
  return {0.25 * (1.0 - 2.0 * psiL * 2.0 * s * c + 4.0 * psiL * psiL * s * s),
          0.25 * (1.0 + 2.0 * psiL * 2.0 * s * c + 4.0 * psiL * psiL * c * c)};
}

/// Spectra at the frequency the phase was optimized for, as a function of
/// x = psi(t) L(omega0):
///   S_X = (1/4)(sqrt(1+x^2) - x)^2,  S_Y = (1/4)(sqrt(1+x^2) + x)^2.
/// Evaluated via the reciprocal form so that S_X S_Y = 1/16 holds to machine
/// precision for any x.
inline SpectrumPair spectrum_at_optimum_psiL(double psiL) {
  const double grow = std::hypot(1.0, psiL) + psiL;
  return {0.25 / (grow * grow), 0.25 * grow * grow};
}

inline SpectrumPair spectrum_at_optimum(const KerrParams& params, const GaussianEnvelope& envelope,
                                        double t, double omega0_norm) {
  return spectrum_at_optimum_psiL(psi_slow(params, envelope, t) * lorentzian_L(omega0_norm));
}

/// Spectra at an arbitrary frequency Omega when the input phase is optimal
/// for Omega0. Written as the on-optimum value plus a correction that
/// vanishes identically at Omega = Omega0:
///   S_X(Omega) = S_X(Omega0) + (psi/2)(L - L0) [ (L + L0) psi / (r + x0) - 1 ] / r,
///   S_Y(Omega) = S_Y(Omega0) + (psi/2)(L - L0) [ (L + L0) psi (r + x0) + 1 ] / r,
/// with x0 = psi L0 and r = sqrt(1 + x0^2). Equivalent to substituting the
/// optimal phase into spectrum(), but free of large-psi cancellation.
inline SpectrumPair spectrum_general(const KerrParams& params, const GaussianEnvelope& envelope,
                                     double t, double omega_norm, double omega0_norm) {
  const double psi = psi_slow(params, envelope, t);
  const double L = lorentzian_L(omega_norm);
  const double L0 = lorentzian_L(omega0_norm);
  const double x0 = psi * L0;
  const double r = std::hypot(1.0, x0);
  const SpectrumPair base = spectrum_at_optimum_psiL(x0);

  const double common = 0.5 * psi * (L - L0);
  const double bracket_x = ((L + L0) * psi / (r + x0) - 1.0) / r;
  const double bracket_y = ((L + L0) * psi * (r + x0) + 1.0) / r;
  return {base.s_x + common * bracket_x, base.s_y + common * bracket_y};
}

/// Half-depth width of the squeezed region of the X-quadrature spectrum for
/// phase optimal at Omega0 = 0. Defined by
///   S_X(DeltaOmega) = (1/2)[1/4 + S_X(0)],
/// which reduces to a quadratic in L(DeltaOmega):
///   2 psi (psi - r) L^2 + 2 L + psi r - psi^2 - 1 = 0,  r = sqrt(1 + psi^2).
/// Only one root lies in (0, 1]; DeltaOmega = sqrt(1/L - 1). Monotone in psi
/// from 1 (psi -> 0) to sqrt(1 + sqrt(2)) (psi -> inf).
inline double squeezing_bandwidth(double psi_t) {
  if (psi_t < 0.0) throw std::invalid_argument("squeezing_bandwidth: psi must be >= 0");
  if (psi_t == 0.0) return 1.0;
  const double r = std::hypot(1.0, psi_t);
  // a = 2 psi (psi - r) and c = psi r - psi^2 - 1 rewritten without
  // cancellation: psi - r = -1/(r + psi), psi (r - psi) = psi/(r + psi).
  const double a = -2.0 * psi_t / (r + psi_t);
  const double c = psi_t / (r + psi_t) - 1.0;
  const double L = -c / (1.0 + std::sqrt(1.0 - a * c));
  if (!(L > 0.0) || L > 1.0) {
    throw std::runtime_error("squeezing_bandwidth: admissible root left (0, 1]");
  }
  return std::sqrt(1.0 / L - 1.0);
}

/// Same width through the explicit radical solution of the quadratic,
///   DeltaOmega = sqrt( a / (sqrt(1 - a c) - 1) - 1 ),
/// kept as a secondary path cross-checked against squeezing_bandwidth().
inline double squeezing_bandwidth_radical(double psi_t) {
  if (psi_t < 0.0) throw std::invalid_argument("squeezing_bandwidth_radical: psi must be >= 0");
  if (psi_t < 1e-12) return 1.0;
  const double r = std::hypot(1.0, psi_t);
  const double a = 2.0 * psi_t * (psi_t - r);
  const double c = psi_t * r - psi_t * psi_t - 1.0;
  return std::sqrt(a / (std::sqrt(1.0 - a * c) - 1.0) - 1.0);
}

/// Sampled spectra over a frequency grid with provenance metadata.
struct SpectrumSeries {
  std::vector<double> omega_norm_grid;
  std::vector<double> s_x;
  std::vector<double> s_y;
  double t_eval = 0.0;
  std::string formula_tag;  // "general" or "optimal-frequency"
};

inline SpectrumSeries spectrum_series_general(const KerrParams& params,
                                              const GaussianEnvelope& envelope, double t,
                                              const std::vector<double>& omega_grid,
                                              double omega0_norm) {
  SpectrumSeries series;
  series.omega_norm_grid = omega_grid;
  series.t_eval = t;
  series.formula_tag = "general";
  series.s_x.reserve(omega_grid.size());
  series.s_y.reserve(omega_grid.size());
  for (const double omega : omega_grid) {
    const SpectrumPair p = spectrum_general(params, envelope, t, omega, omega0_norm);
    series.s_x.push_back(p.s_x);
    series.s_y.push_back(p.s_y);
  }
  return series;
}

/// Spectra with the phase re-optimized at every grid frequency: each sample
/// is the floor of the squeezing achievable at that frequency.
inline SpectrumSeries spectrum_series_at_optimum(const KerrParams& params,
                                                 const GaussianEnvelope& envelope, double t,
                                                 const std::vector<double>& omega_grid) {
  SpectrumSeries series;
  series.omega_norm_grid = omega_grid;
  series.t_eval = t;
  series.formula_tag = "optimal-frequency";
  series.s_x.reserve(omega_grid.size());
  series.s_y.reserve(omega_grid.size());
  for (const double omega : omega_grid) {
    const SpectrumPair p = spectrum_at_optimum(params, envelope, t, omega);
    series.s_x.push_back(p.s_x);
    series.s_y.push_back(p.s_y);
  }
  return series;
}

}  // namespace kerrsq
