#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kerrsq/pulse.hpp"
#include "kerrsq/quadrature.hpp"

namespace kerrsq {

/// Photon number spectral density of the self-phase-modulated pulse in the
/// paraxial approximation, at normalized frequency Omega = omega tau_p
/// (pulse-duration normalization, not tau_r):
///   n(Omega) = n_bar0 / sqrt(1 + 4 psi0^2) * exp[-Omega^2 / (1 + 4 psi0^2)].
/// The peak is suppressed by (1 + 4 psi0^2)^(-1/2) as the nonlinear phase
/// grows; the relaxation time does not enter at this order.
inline double photon_density_classical(const KerrParams& params, double omega_p_norm) {
  const double a2 = 1.0 + 4.0 * params.psi0() * params.psi0();
  return params.n_bar0() / std::sqrt(a2) * std::exp(-omega_p_norm * omega_p_norm / a2);
}

/// Photon number spectral density with the finite response time of the
/// nonlinearity retained (Gaussian relaxation kernel semantics):
///   n(Omega) = n_bar0 / sqrt(q^2 + 4 psi0^2) * exp[-Omega^2 q / (q^2 + 4 psi0^2)],
/// with q = 1 + gamma psi0 nu^2 / 4. Reduces to the classical form as q -> 1.
inline double photon_density_relaxing(const KerrParams& params, double omega_p_norm) {
  const double psi0 = params.psi0();
  const double q = 1.0 + 0.25 * params.gamma() * psi0 * params.nu() * params.nu();
  const double denom = q * q + 4.0 * psi0 * psi0;
  return params.n_bar0() / std::sqrt(denom) *
         std::exp(-omega_p_norm * omega_p_norm * q / denom);
}

/// One sample of a photon spectral density curve. Frequencies are
/// pulse-normalized (Omega = omega tau_p) and densities are multiples of
/// n_bar0.
struct PhotonSpectrumPoint {
  double omega_p_norm = 0.0;
  double density = 0.0;
};

enum class PhotonDensityModel { classical, relaxing };

inline std::vector<PhotonSpectrumPoint> photon_spectrum_series(
    const KerrParams& params, const std::vector<double>& omega_grid, PhotonDensityModel model) {
  std::vector<PhotonSpectrumPoint> series;
  series.reserve(omega_grid.size());
  const double scale = params.n_bar0() > 0.0 ? params.n_bar0() : 1.0;
  for (const double omega : omega_grid) {
    const double density = model == PhotonDensityModel::classical
                               ? photon_density_classical(params, omega)
                               : photon_density_relaxing(params, omega);
    series.push_back({omega, density / scale});
  }
  return series;
}

/// Temporal correlator for the Gaussian relaxation kernel,
///   K(t, t + tau) = mu0 * rho^2(t + tau/2) * exp(-tau^2 / (4 tau_r^2)).
/// The Gaussian kernel enters the photon-statistics results only through
/// this form; its autocorrelation is not exposed on ResponseKernel.
inline double gaussian_K(const KerrParams& params, const GaussianEnvelope& envelope, double t,
                         double tau) {
  const double s = tau / params.tau_r();
  return params.mu0() * envelope.rho_sq(t + 0.5 * tau) * std::exp(-0.25 * s * s);
}

/// Scalar designations entering the closed-form spectral correlation
/// function. All are functions of (psi0, nu) only and are cached here.
///
/// alpha_t = sqrt(1 + 4 psi0^2)              = |1 - 2 i psi0|
/// rho_aux = sqrt((1 + nu^2)^2 + 4 psi0^2)   = |(1 + nu^2) + 2 i psi0|
/// beta_t  = sqrt((1 + 2 nu^2 - 4 psi0^2)^2 + 16 (1 + nu^2)^2 psi0^2)
///         = |(1 + 2 i psi0)(1 + 2 nu^2 + 2 i psi0)|
/// eps     = -arctan(2 psi0)                      in (-pi/2, 0]
/// Sigma   = arctan(2 psi0 / (1 + nu^2))          in [0, pi/2)
/// xi      = arg[(1 + 2 i psi0)(1 + 2 nu^2 + 2 i psi0)], quadrant-aware so it
///           stays continuous when 1 + 2 nu^2 - 4 psi0^2 changes sign.
struct CorrClosedFormParts {
  double psi0 = 0.0;
  double nu = 0.0;
  double alpha_t = 1.0;
  double beta_t = 1.0;
  double rho_aux = 1.0;
  double eps = 0.0;
  double xi = 0.0;
  double sigma = 0.0;

  static CorrClosedFormParts make(const KerrParams& params) {
    CorrClosedFormParts p;
    p.psi0 = params.psi0();
    p.nu = params.nu();
    const double two_psi = 2.0 * p.psi0;
    const double nu2 = p.nu * p.nu;
    p.alpha_t = std::hypot(1.0, two_psi);
    p.rho_aux = std::hypot(1.0 + nu2, two_psi);
    p.beta_t = std::hypot(1.0 + 2.0 * nu2 - 4.0 * p.psi0 * p.psi0,
                          4.0 * (1.0 + nu2) * p.psi0);
    p.eps = -std::atan2(two_psi, 1.0);
    p.sigma = std::atan2(two_psi, 1.0 + nu2);
    p.xi = std::atan2(4.0 * (1.0 + nu2) * p.psi0, 1.0 + 2.0 * nu2 - 4.0 * p.psi0 * p.psi0);
    return p;
  }

  /// Damping exponent of the first term of Gamma(Omega1, Omega2).
  double g_part(double o1, double o2) const {
    const double nu2 = nu * nu;
    return -(o1 * o1 + o2 * o2) / (2.0 * alpha_t) * std::cos(eps) -
           o2 * o2 / (2.0 * rho_aux) * std::cos(sigma) -
           rho_aux * o1 * o1 / (2.0 * beta_t) * std::cos(sigma - xi) -
           o1 * o2 * nu2 / beta_t * std::cos(xi) -
           o2 * o2 * nu2 * nu2 / (2.0 * rho_aux * beta_t) * std::cos(sigma + xi);
  }

  /// Phase of the first term of Gamma(Omega1, Omega2).
  double s_part(double o1, double o2) const {
    const double nu2 = nu * nu;
    return (o1 * o1 + o2 * o2) / (2.0 * alpha_t) * std::sin(eps) +
           o2 * o2 / (2.0 * rho_aux) * std::sin(sigma) -
           rho_aux * o1 * o1 / (2.0 * beta_t) * std::sin(sigma - xi) +
           o1 * o2 * nu2 / beta_t * std::sin(xi) +
           o2 * o2 * nu2 * nu2 / (2.0 * rho_aux * beta_t) * std::sin(sigma + xi) -
           (eps + 0.5 * xi);
  }

  // The second term of Gamma carries the same structure with the
  // frequencies exchanged.
  double e_part(double o1, double o2) const { return g_part(o2, o1); }
  double f_part(double o1, double o2) const { return s_part(o2, o1); }

  double im_gamma(double o1, double o2) const {
    return std::exp(g_part(o1, o2)) * std::sin(s_part(o1, o2)) +
           std::exp(e_part(o1, o2)) * std::sin(f_part(o1, o2));
  }
};

/// Smooth (off-diagonal) part of the spectral photon correlation function in
/// units of n_bar0,
///   R_smooth(Omega1, Omega2) = -psi0 / (2 alpha_t sqrt(beta_t)) * Im Gamma,
/// with Im Gamma = e^G sin S + e^E sin F. Symmetric under frequency swap.
/// The diagonal delta-weight I1 is reported separately by i1_diagonal().
inline double corr_closed_form(const KerrParams& params, double omega1_p_norm,
                               double omega2_p_norm) {
  const CorrClosedFormParts parts = CorrClosedFormParts::make(params);
  if (parts.psi0 == 0.0) return 0.0;
  return -parts.psi0 / (2.0 * parts.alpha_t * std::sqrt(parts.beta_t)) *
         parts.im_gamma(omega1_p_norm, omega2_p_norm);
}

inline double corr_closed_form(const CorrClosedFormParts& parts, double omega1_p_norm,
                               double omega2_p_norm) {
  if (parts.psi0 == 0.0) return 0.0;
  return -parts.psi0 / (2.0 * parts.alpha_t * std::sqrt(parts.beta_t)) *
         parts.im_gamma(omega1_p_norm, omega2_p_norm);
}

/// Diagonal weight of the delta term: on the diagonal the phase of
///   I1 = sqrt(n(Omega1) n(Omega2)) exp{i psi0 (Omega1^2 - Omega2^2)/(1 + 4 psi0^2)}
/// vanishes, leaving the classical spectral density itself.
inline double i1_diagonal(const KerrParams& params, double omega_p_norm) {
  return photon_density_classical(params, omega_p_norm);
}

/// Off-diagonal I1 (modulus and phase as above).
inline std::complex<double> i1_offdiagonal(const KerrParams& params, double omega1_p_norm,
                                           double omega2_p_norm) {
  const double mod = std::sqrt(photon_density_classical(params, omega1_p_norm) *
                               photon_density_classical(params, omega2_p_norm));
  const double psi0 = params.psi0();
  const double phase = psi0 * (omega1_p_norm * omega1_p_norm - omega2_p_norm * omega2_p_norm) /
                       (1.0 + 4.0 * psi0 * psi0);
  return std::polar(mod, phase);
}

/// Band-integrated spectral photon correlation, all components in units of
/// n_bar0. Negative values signal photon antibunching, positive bunching.
struct BandCorrelation {
  double literal = 0.0;        // delta part + smooth part - 1
  double smooth_only = 0.0;    // double integral of the smooth part over the band
  double diagonal_part = 0.0;  // single integral of i1_diagonal over the band
};

/// Integrates the correlation function over the square band
/// [Omega - dOmega/2, Omega + dOmega/2]^2. The delta term collapses to a
/// single integral of the diagonal weight, available in closed form through
/// erf; the smooth part uses a fixed Gauss-Legendre product rule.
inline BandCorrelation band_integral(const KerrParams& params, double omega_center,
                                     double band_width) {
  if (!(band_width > 0.0)) throw std::invalid_argument("band_integral: band_width must be > 0");
  const double lo = omega_center - 0.5 * band_width;
  const double hi = omega_center + 0.5 * band_width;

  BandCorrelation out;
  const double alpha = std::sqrt(1.0 + 4.0 * params.psi0() * params.psi0());
  out.diagonal_part =
      0.5 * std::sqrt(M_PI) * (std::erf(hi / alpha) - std::erf(lo / alpha));

  static const GaussLegendreRule rule(32);
  const CorrClosedFormParts parts = CorrClosedFormParts::make(params);
  const auto row = [&](double o2) {
    return gauss_legendre([&](double o1) { return corr_closed_form(parts, o1, o2); }, lo, hi,
                          rule);
  };
  out.smooth_only = gauss_legendre(row, lo, hi, rule);
  out.literal = out.diagonal_part + out.smooth_only - 1.0;
  return out;
}

/// Simplified closed form of the band integral at the spectral center
/// Omega = 0:
///   R(0) = psi0 / (2 alpha_t sqrt(beta_t)) * dOmega^2 * sin(eps + xi/2),
/// negative for every psi0 > 0 (antibunching), vanishing as psi0 -> 0.
inline double band_integral_origin(const KerrParams& params, double band_width) {
  if (!(band_width > 0.0)) {
    throw std::invalid_argument("band_integral_origin: band_width must be > 0");
  }
  const CorrClosedFormParts p = CorrClosedFormParts::make(params);
  return p.psi0 / (2.0 * p.alpha_t * std::sqrt(p.beta_t)) * band_width * band_width *
         std::sin(p.eps + 0.5 * p.xi);
}

/// Sampled correlation surface plus the band-integrated scalar.
struct PhotonCorrGrid {
  std::vector<double> omega1_grid;
  std::vector<double> omega2_grid;
  std::vector<double> values;      // smooth part, row-major over (omega1, omega2)
  std::vector<double> delta_diag;  // i1_diagonal on omega1_grid
  double band_center = 0.0;
  double band_width = 0.0;
  BandCorrelation band;
};

inline PhotonCorrGrid photon_corr_grid(const KerrParams& params,
                                       const std::vector<double>& omega1_grid,
                                       const std::vector<double>& omega2_grid,
                                       double band_center, double band_width) {
  PhotonCorrGrid grid;
  grid.omega1_grid = omega1_grid;
  grid.omega2_grid = omega2_grid;
  grid.band_center = band_center;
  grid.band_width = band_width;
  const CorrClosedFormParts parts = CorrClosedFormParts::make(params);
  grid.values.reserve(omega1_grid.size() * omega2_grid.size());
  for (const double o1 : omega1_grid) {
    for (const double o2 : omega2_grid) {
      grid.values.push_back(corr_closed_form(parts, o1, o2));
    }
  }
  grid.delta_diag.reserve(omega1_grid.size());
  for (const double o1 : omega1_grid) {
    grid.delta_diag.push_back(i1_diagonal(params, o1));
  }
  grid.band = band_integral(params, band_center, band_width);
  return grid;
}

}  // namespace kerrsq
