#pragma once

#include <cmath>
#include <stdexcept>

#include "kerrsq/errors.hpp"

namespace kerrsq {

enum class KernelVariant { exponential, gaussian };

/// Nonlinear response kernel of the medium. The normalized form
/// h_tilde(theta) takes time in units of the relaxation time tau_r and is
/// even, non-negative and peaked at 1 for theta = 0.
///
/// Exponential variant: h_tilde(theta) = exp(-|theta|), the causal
/// single-pole relaxation response folded to even symmetry.
/// Gaussian variant: h_tilde(theta) = exp(-theta^2 / 2).
class ResponseKernel {
public:
  ResponseKernel(KernelVariant variant, double tau_r) : variant_(variant), tau_r_(tau_r) {
    if (!(tau_r > 0.0)) {
      throw std::invalid_argument("ResponseKernel: tau_r must be positive");
    }
  }

  static ResponseKernel exponential(double tau_r) {
    return ResponseKernel(KernelVariant::exponential, tau_r);
  }
  static ResponseKernel gaussian(double tau_r) {
    return ResponseKernel(KernelVariant::gaussian, tau_r);
  }

  KernelVariant variant() const { return variant_; }
  double tau_r() const { return tau_r_; }
  bool is_exponential() const { return variant_ == KernelVariant::exponential; }

  /// Normalized response at normalized lag theta = t / tau_r.
  double h_tilde(double theta) const {
    switch (variant_) {
      case KernelVariant::exponential:
        return std::exp(-std::abs(theta));
      case KernelVariant::gaussian:
        return std::exp(-0.5 * theta * theta);
    }
    return 0.0;
  }

  /// Dimensional even response h(t) = H(|t|) = h_tilde(t / tau_r) / tau_r.
  double h(double t) const { return h_tilde(t / tau_r_) / tau_r_; }

  /// Autocorrelation g(tau) = (1/tau_r) * Int h_tilde(theta) h_tilde(theta + tau/tau_r) dtheta.
  /// Closed form for the exponential kernel:
  ///   g(tau) = (1/tau_r) (1 + |tau|/tau_r) exp(-|tau|/tau_r).
  /// Even in tau and maximal at tau = 0 with value 1/tau_r.
  double autocorr_g(double tau) const {
    if (variant_ != KernelVariant::exponential) {
      throw UnsupportedVariantError(
          "autocorr_g: closed form available only for the exponential kernel");
    }
    const double s = std::abs(tau) / tau_r_;
    return (1.0 + s) * std::exp(-s) / tau_r_;
  }

private:
  KernelVariant variant_;
  double tau_r_;
};

/// Lorentzian spectral profile of the exponential response:
/// Int h(t) e^{i omega t} dt = 2 L(Omega) with L(Omega) = 1 / (1 + Omega^2),
/// Omega = omega * tau_r.
inline double lorentzian_L(double omega_norm) { return 1.0 / (1.0 + omega_norm * omega_norm); }

/// Fourier transform of the exponential-kernel autocorrelation:
/// Int g(tau) e^{i omega tau} dtau = 4 L(Omega)^2.
inline double ft_g(double omega_norm) {
  const double L = lorentzian_L(omega_norm);
  return 4.0 * L * L;
}

}  // namespace kerrsq
