#pragma once

#include <cmath>
#include <stdexcept>

#include "kerrsq/errors.hpp"
#include "kerrsq/kernel.hpp"
#include "kerrsq/quadrature.hpp"

namespace kerrsq {

/// Gaussian pulse envelope rho(t) = exp(-t^2 / (2 tau_p^2)), rho(0) = 1.
class GaussianEnvelope {
public:
  explicit GaussianEnvelope(double tau_p) : tau_p_(tau_p) {
    if (!(tau_p > 0.0)) {
      throw std::invalid_argument("GaussianEnvelope: tau_p must be positive");
    }
  }

  double tau_p() const { return tau_p_; }

  double rho(double t) const {
    const double x = t / tau_p_;
    return std::exp(-0.5 * x * x);
  }

  double rho_sq(double t) const {
    const double x = t / tau_p_;
    return std::exp(-x * x);
  }

  /// Quadratic expansion of rho^2 about the pulse peak, 1 - t^2/tau_p^2.
  double rho_sq_paraxial(double t) const {
    const double x = t / tau_p_;
    return 1.0 - x * x;
  }

private:
  double tau_p_;
};

/// Medium and pulse scalars for a single propagation distance.
///
/// gamma is the accumulated nonlinear coupling, n_bar0 the peak mean photon
/// number density. Derived values are kept consistent by construction:
///   psi0 = 2 gamma n_bar0   (peak nonlinear phase)
///   mu0  = gamma^2 n_bar0 = gamma psi0 / 2   (decay parameter)
///   nu   = tau_p / tau_r.
/// Slow-envelope expressions require nu > 1; expansions assume gamma << 1
/// (a warning flag is latched for gamma > 0.1, never an error).
class KerrParams {
public:
  KerrParams(double gamma, double n_bar0, double tau_p, double tau_r)
      : gamma_(gamma), n_bar0_(n_bar0), tau_p_(tau_p), tau_r_(tau_r) {
    if (gamma < 0.0) throw std::invalid_argument("KerrParams: gamma must be >= 0");
    if (n_bar0 < 0.0) throw std::invalid_argument("KerrParams: n_bar0 must be >= 0");
    if (!(tau_p > 0.0)) throw std::invalid_argument("KerrParams: tau_p must be positive");
    if (!(tau_r > 0.0)) throw std::invalid_argument("KerrParams: tau_r must be positive");
    psi0_ = 2.0 * gamma_ * n_bar0_;
    mu0_ = gamma_ * gamma_ * n_bar0_;
    nu_ = tau_p_ / tau_r_;
  }

  /// Convenience factory: fix the peak nonlinear phase and the duration
  /// ratio, deriving n_bar0 = psi0 / (2 gamma). tau_p sets the time unit.
  static KerrParams from_peak_phase(double psi0, double nu, double gamma = 1e-2,
                                    double tau_p = 1.0) {
    if (psi0 < 0.0) throw std::invalid_argument("KerrParams: psi0 must be >= 0");
    if (!(nu > 0.0)) throw std::invalid_argument("KerrParams: nu must be positive");
    if (!(gamma > 0.0)) throw std::invalid_argument("KerrParams: gamma must be positive");
    return KerrParams(gamma, psi0 / (2.0 * gamma), tau_p, tau_p / nu);
  }

  double gamma() const { return gamma_; }
  double n_bar0() const { return n_bar0_; }
  double psi0() const { return psi0_; }
  double mu0() const { return mu0_; }
  double tau_p() const { return tau_p_; }
  double tau_r() const { return tau_r_; }
  double nu() const { return nu_; }

  bool slow_envelope_valid() const { return nu_ > 1.0; }
  bool gamma_regime_warning() const { return gamma_ > 0.1; }

  GaussianEnvelope envelope() const { return GaussianEnvelope(tau_p_); }
  ResponseKernel exponential_kernel() const { return ResponseKernel::exponential(tau_r_); }

private:
  double gamma_, n_bar0_, tau_p_, tau_r_;
  double psi0_, mu0_, nu_;
};

/// Initial phase profile phi(t) of the input pulse.
///  - constant: phi(t) = value.
///  - optimal: phi(t) minimizes the X-quadrature spectral density at the
///    stored normalized frequency omega0 (evaluated in quadspec.hpp).
///  - compensating: phi(t) = offset - psi(t), so the total phase
///    Phi = psi + phi stays pinned at the offset. Used in validation.
struct PhaseProfile {
  enum class Kind { constant, optimal, compensating };

  Kind kind = Kind::constant;
  double value = 0.0;  // radians (constant/compensating offset) or omega0 (optimal)

  static PhaseProfile constant(double radians) { return {Kind::constant, radians}; }
  static PhaseProfile optimal(double omega0_norm) { return {Kind::optimal, omega0_norm}; }
  static PhaseProfile compensating(double offset) { return {Kind::compensating, offset}; }
};

namespace detail {
inline void require_slow_envelope(const KerrParams& params, const char* where) {
  if (!params.slow_envelope_valid()) {
    throw RegimeError(std::string(where) + ": requires nu = tau_p/tau_r > 1");
  }
}
inline void require_exponential(const ResponseKernel& kernel, const char* where) {
  if (!kernel.is_exponential()) {
    throw UnsupportedVariantError(std::string(where) + ": requires the exponential kernel");
  }
}
}  // namespace detail

/// Slow-envelope nonlinear phase psi(t) = psi0 * rho^2(t).
inline double psi_slow(const KerrParams& params, const GaussianEnvelope& envelope, double t) {
  detail::require_slow_envelope(params, "psi_slow");
  return params.psi0() * envelope.rho_sq(t);
}

/// Slow-envelope decay exponent mu(t) = mu0 * rho^2(t) / 2 (the 1/2 is the
/// squared-response normalization of the exponential kernel).
inline double mu_slow(const KerrParams& params, const GaussianEnvelope& envelope, double t) {
  detail::require_slow_envelope(params, "mu_slow");
  return 0.5 * params.mu0() * envelope.rho_sq(t);
}

/// Nonlinear phase from the full response integral,
///   psi(t) = psi0 * Int_0^inf h_tilde(theta) rho^2(t - theta tau_r) dtheta,
/// by adaptive quadrature (absolute tolerance 1e-8). For nu > 1e6 the kernel
/// is effectively a delta and the slow-envelope value is returned directly.
inline double psi_exact(const KerrParams& params, const GaussianEnvelope& envelope,
                        const ResponseKernel& kernel, double t) {
  detail::require_exponential(kernel, "psi_exact");
  if (params.psi0() == 0.0) return 0.0;
  if (params.nu() > 1e6) return params.psi0() * envelope.rho_sq(t);

  const double tau_r = kernel.tau_r();
  const auto integrand = [&](double theta) {
    return kernel.h_tilde(theta) * envelope.rho_sq(t - theta * tau_r);
  };
  // exp(-theta) tail beyond theta = 30 is ~9e-14, far below tolerance.
  QuadratureOptions opts;
  opts.abs_tol = 1e-8 / std::max(params.psi0(), 1.0);
  opts.rel_tol = 1e-10;
  return params.psi0() * integrate(integrand, 0.0, 30.0, opts).value;
}

/// Slow-envelope temporal correlator
///   K(t1, t1 + tau) = mu0 * rho^2(t1 + tau/2) * tau_r * g(tau),
/// dimensionless; tau_r * g(tau) = (1 + |tau|/tau_r) exp(-|tau|/tau_r).
inline double K_slow(const KerrParams& params, const GaussianEnvelope& envelope,
                     const ResponseKernel& kernel, double t1, double tau) {
  detail::require_slow_envelope(params, "K_slow");
  detail::require_exponential(kernel, "K_slow");
  return params.mu0() * envelope.rho_sq(t1 + 0.5 * tau) * kernel.tau_r() * kernel.autocorr_g(tau);
}

/// Temporal correlator from the full response integral,
///   K(t1, t2) = mu0 * Int h_tilde(t1/tau_r - theta) h_tilde(t2/tau_r - theta)
///                        rho^2(theta tau_r) dtheta,
/// by adaptive quadrature. Symmetric in (t1, t2).
inline double K_exact(const KerrParams& params, const GaussianEnvelope& envelope,
                      const ResponseKernel& kernel, double t1, double t2) {
  detail::require_exponential(kernel, "K_exact");
  if (params.mu0() == 0.0) return 0.0;

  const double tau_r = kernel.tau_r();
  const double a = t1 / tau_r;
  const double b = t2 / tau_r;
  const auto integrand = [&](double theta) {
    return kernel.h_tilde(a - theta) * kernel.h_tilde(b - theta) *
           envelope.rho_sq(theta * tau_r);
  };
  // The kernel product confines the integrand to within ~40 normalized units
  // of [min(a,b), max(a,b)]; the tail there is below e^{-80}.
  const double lo = std::min(a, b) - 40.0;
  const double hi = std::max(a, b) + 40.0;
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  opts.rel_tol = 1e-8;
  return params.mu0() * integrate(integrand, lo, hi, opts).value;
}

}  // namespace kerrsq
