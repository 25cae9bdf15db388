#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "kerrsq/kernel.hpp"
#include "kerrsq/pulse.hpp"
#include "kerrsq/quadrature.hpp"

namespace kerrsq {

/// Grid for the direct Fourier transform, in normalized lag units.
/// Trapezoid summation on a kinked even integrand carries an error of about
/// step^2 / 6; the default step keeps that near 4e-8.
struct FtOptions {
  double step = 5e-4;
  double radius = 40.0;
};

struct FtResult {
  double value = 0.0;         // delta coefficient + real part of the transform
  double imag_residue = 0.0;  // diagnostic; zero for even correlations
};

/// Direct numeric Fourier transform of a correlation sample,
///   S(Omega) = delta_coefficient + Int smooth(s) e^{i Omega s} ds,
/// by trapezoid summation on a uniform grid over [-radius, radius]. The
/// delta contribution is carried exactly, never discretized. Deliberately a
/// plain summation so it stays independent of the adaptive quadrature used
/// by the closed-form implementations.
inline FtResult numeric_ft(const std::function<double(double)>& smooth, double delta_coefficient,
                           double omega_norm, const FtOptions& opts = {}) {
  const double h = opts.step;
  const double radius = opts.radius;
  if (!(h > 0.0) || !(radius > h)) {
    throw std::invalid_argument("numeric_ft: need step > 0 and radius > step");
  }
  const long n = std::lround(radius / h);
  double re = 0.0, im = 0.0;
  for (long k = -n; k <= n; ++k) {
    const double s = static_cast<double>(k) * h;
    const double w = (k == -n || k == n) ? 0.5 : 1.0;
    const double f = smooth(s);
    re += w * f * std::cos(omega_norm * s);
    im += w * f * std::sin(omega_norm * s);
  }
  return {delta_coefficient + re * h, im * h};
}

/// Exact average of the evolution exponential for a coherent input,
///   <e^O(t)> = exp{ Int [e^{i gamma h_tilde(theta)} - 1] n_bar0 rho^2(t - theta tau_r) dtheta },
/// integrated over the full line by adaptive quadrature. No smallness
/// assumption on gamma; for gamma << 1 the phase approaches psi(t) and the
/// negative log-modulus approaches mu(t).
inline std::complex<double> exact_average_exp_O(const KerrParams& params,
                                                const GaussianEnvelope& envelope,
                                                const ResponseKernel& kernel, double t) {
  if (params.n_bar0() == 0.0 || params.gamma() == 0.0) return {1.0, 0.0};
  const double gamma = params.gamma();
  const double n0 = params.n_bar0();
  const double tau_r = kernel.tau_r();
  const auto integrand = [&](double theta) -> std::complex<double> {
    const double g = gamma * kernel.h_tilde(theta);
    // e^{ig} - 1 = (cos g - 1) + i sin g; the real part is computed through
    // -2 sin^2(g/2) to keep precision at small gamma.
    const double re = -2.0 * std::pow(std::sin(0.5 * g), 2);
    const double im = std::sin(g);
    return std::complex<double>(re, im) * (n0 * envelope.rho_sq(t - theta * tau_r));
  };
  QuadratureOptions opts;
  opts.abs_tol = 1e-13 * std::max(1.0, gamma * n0);
  opts.rel_tol = 1e-12;
  opts.max_subdivisions = 20000;
  const auto exponent = integrate(integrand, -40.0, 40.0, opts).value;
  return std::exp(exponent);
}

/// Truncated Fock-space check of the coherent-state expectation
/// <e^{i lambda n}>. The cutoff must cover the Poisson tail.
struct FockOracleSpec {
  double n_bar = 0.0;
  int cutoff = 0;

  FockOracleSpec(double n_bar_, int cutoff_) : n_bar(n_bar_), cutoff(cutoff_) {
    if (n_bar < 0.0) throw std::invalid_argument("FockOracleSpec: n_bar must be >= 0");
    const double required = n_bar + 12.0 * std::sqrt(n_bar) + 20.0;
    if (cutoff < required) {
      throw std::invalid_argument("FockOracleSpec: cutoff too small for the Poisson tail");
    }
  }
};

/// Direct Fock sum sum_n P(n) e^{i lambda n} with Poisson weights
/// P(n) = e^{-n_bar} n_bar^n / n!.
inline std::complex<double> fock_check(const FockOracleSpec& spec, double lambda) {
  double weight = std::exp(-spec.n_bar);  // P(0)
  std::complex<double> acc = weight;
  const std::complex<double> rot = std::polar(1.0, lambda);
  std::complex<double> phase = 1.0;
  for (int n = 1; n <= spec.cutoff; ++n) {
    weight *= spec.n_bar / static_cast<double>(n);
    phase *= rot;
    acc += weight * phase;
  }
  return acc;
}

/// Closed form of the same expectation, exp{n_bar (e^{i lambda} - 1)}.
inline std::complex<double> coherent_exp_closed(double n_bar, double lambda) {
  return std::exp(n_bar * (std::polar(1.0, lambda) - 1.0));
}

/// The three defining double integrals behind the spectral photon
/// correlation function, over (t1, t2) with Gaussian envelopes:
///   I1: rho(t1) rho(t2) e^{i[psi(t1) - psi(t2)]} e^{i[w1 t1 - w2 t2]}
///   I2: rho(t1) rho(t2) e^{i[psi(t1) + psi(t2)]} e^{i[w1 t1 + w2 t2]}
///   I3: I2 integrand times the Gaussian response h_tilde((t2 - t1)/tau_r).
/// psi(t) = psi0 rho^2(t), with rho^2 taken paraxial (1 - t^2/tau_p^2) or
/// exact in the phase depending on the flag. Frequencies are pulse-
/// normalized, w_i = Omega_i / tau_p.
enum class DefiningIntegral { I1, I2, I3 };

struct Integral2dOptions {
  double half_width_in_tau_p = 6.0;  // Gaussian tails < 1e-15 beyond 6 tau_p
  QuadratureOptions outer{1e-9, 1e-8, 20000};
  QuadratureOptions inner{1e-10, 1e-9, 20000};
};

inline std::complex<double> integrate_2d_I(const KerrParams& params,
                                           const GaussianEnvelope& envelope,
                                           DefiningIntegral which, double omega1_p_norm,
                                           double omega2_p_norm,
                                           const Integral2dOptions& opts = {},
                                           bool paraxial_phase = true) {
  const double tau_p = envelope.tau_p();
  const double w1 = omega1_p_norm / tau_p;
  const double w2 = omega2_p_norm / tau_p;
  const double psi0 = params.psi0();
  const double nu = params.nu();
  const double half = opts.half_width_in_tau_p * tau_p;

  const auto psi_of = [&](double t) {
    return psi0 * (paraxial_phase ? envelope.rho_sq_paraxial(t) : envelope.rho_sq(t));
  };

  const auto integrand = [&](double t1, double t2) -> std::complex<double> {
    double amp = envelope.rho(t1) * envelope.rho(t2);
    double phase = 0.0;
    switch (which) {
      case DefiningIntegral::I1:
        phase = psi_of(t1) - psi_of(t2) + w1 * t1 - w2 * t2;
        break;
      case DefiningIntegral::I2:
        phase = psi_of(t1) + psi_of(t2) + w1 * t1 + w2 * t2;
        break;
      case DefiningIntegral::I3: {
        const double u = (t2 - t1) / tau_p * nu;  // (t2 - t1) / tau_r
        amp *= std::exp(-0.5 * u * u);
        phase = psi_of(t1) + psi_of(t2) + w1 * t1 + w2 * t2;
        break;
      }
    }
    return std::polar(amp, phase);
  };

  return integrate_2d(integrand, -half, half, -half, half, opts.outer, opts.inner).value;
}

/// Normalization mapping the bare double integrals to spectral-density
/// units of n_bar0: I / (2 pi tau_p^2). Calibrated so that the I1 diagonal
/// at psi0 = 0 equals the input Gaussian spectrum exactly.
inline std::complex<double> normalize_2d_I(const std::complex<double>& bare, double tau_p) {
  return bare / (2.0 * M_PI * tau_p * tau_p);
}

/// Brute-force smooth correlation value from the defining integrals,
///   R_smooth(Omega1, Omega2) = -psi0 Im{ conj(I2_n) I3_n },
/// with I2_n, I3_n the normalized integrals (units of n_bar0).
inline double corr_smooth_from_integrals(const KerrParams& params,
                                         const GaussianEnvelope& envelope, double omega1_p_norm,
                                         double omega2_p_norm, const Integral2dOptions& opts = {},
                                         bool paraxial_phase = true) {
  const auto i2 = normalize_2d_I(integrate_2d_I(params, envelope, DefiningIntegral::I2,
                                                omega1_p_norm, omega2_p_norm, opts,
                                                paraxial_phase),
                                 envelope.tau_p());
  const auto i3 = normalize_2d_I(integrate_2d_I(params, envelope, DefiningIntegral::I3,
                                                omega1_p_norm, omega2_p_norm, opts,
                                                paraxial_phase),
                                 envelope.tau_p());
  return -params.psi0() * std::imag(std::conj(i2) * i3);
}

}  // namespace kerrsq
