#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kerrsq/quadspec.hpp"

#include <vector>

using namespace kerrsq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

KerrParams standard_params(double psi0, double nu = 10.0) {
  return KerrParams::from_peak_phase(psi0, nu, 1e-3);
}

}  // namespace

TEST_CASE("quadrature means", "[quadspec]") {
  const GaussianEnvelope env(1.0);

  // Linear medium: no rotation, no damping.
  const KerrParams linear(0.0, 9.0, 1.0, 0.1);
  const auto kern = linear.exponential_kernel();
  const auto m0 = quadrature_means(linear, env, kern, PhaseProfile::constant(0.0), 0.0);
  CHECK_THAT(m0.x_mean, WithinAbs(3.0, 1e-14));
  CHECK_THAT(m0.y_mean, WithinAbs(0.0, 1e-14));

  // Pure rotation by pi/2 at unit amplitude and negligible damping.
  const auto rotated = detail::mean_xy(1.0, 0.0, M_PI / 2.0);
  CHECK_THAT(rotated.x_mean, WithinAbs(0.0, 1e-15));
  CHECK_THAT(rotated.y_mean, WithinAbs(1.0, 1e-15));

  // psi0 = 1, mu0 = 0.02 at the pulse peak.
  const KerrParams params(0.04, 12.5, 1.0, 1e-4);
  const auto kern2 = params.exponential_kernel();
  const auto m = quadrature_means(params, env, kern2, PhaseProfile::constant(0.0), 0.0);
  const double amplitude = std::sqrt(12.5) * std::exp(-0.01);
  CHECK_THAT(m.x_mean, WithinRel(amplitude * std::cos(1.0), 1e-12));
  CHECK_THAT(m.y_mean, WithinRel(amplitude * std::sin(1.0), 1e-12));
  CHECK_THAT(m.big_phi, WithinAbs(1.0, 1e-12));
}

TEST_CASE("means invariant: x^2 + y^2 = |alpha0|^2 e^{-2mu}", "[quadspec]") {
  const GaussianEnvelope env(1.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> phi_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> t_dist(-1.0, 1.0);
  const KerrParams params(0.05, 30.0, 1.0, 0.05);
  const auto kern = params.exponential_kernel();
  for (int i = 0; i < 100; ++i) {
    const double t = t_dist(rng);
    const auto m = quadrature_means(params, env, kern, PhaseProfile::constant(phi_dist(rng)), t);
    const double expected =
        params.n_bar0() * env.rho_sq(t) * std::exp(-2.0 * mu_slow(params, env, t));
    CHECK_THAT(m.x_mean * m.x_mean + m.y_mean * m.y_mean, WithinRel(expected, 1e-12));
  }
}

TEST_CASE("correlation functions: coherent state and pinned total phase", "[quadspec]") {
  const GaussianEnvelope env(1.0);

  const KerrParams coherent(0.0, 100.0, 1.0, 0.1);
  const auto kern = coherent.exponential_kernel();
  for (const double tau : {0.0, 0.05, 0.2}) {
    const auto c = corr_RX_RY(coherent, env, kern, PhaseProfile::constant(0.3), 0.0, tau);
    CHECK(c.rx_smooth == 0.0);
    CHECK(c.ry_smooth == 0.0);
    CHECK(c.has_delta);
  }

  // Phi(t) pinned at zero: the X smooth part vanishes identically, the Y
  // part keeps only the positive quadratic term.
  const auto params = standard_params(1.0);
  const auto kern2 = params.exponential_kernel();
  const auto pinned = PhaseProfile::compensating(0.0);
  for (const double tau : {0.0, 0.05, 0.13}) {
    const auto c = corr_RX_RY(params, env, kern2, pinned, 0.0, tau);
    CHECK_THAT(c.rx_smooth, WithinAbs(0.0, 1e-15));
    const double expected = 0.25 * params.psi0() * params.psi0() * env.rho(0.0) *
                            env.rho(tau) * env.rho_sq(0.5 * tau) * kern2.autocorr_g(tau);
    CHECK_THAT(c.ry_smooth, WithinRel(expected, 1e-12));
    CHECK(c.ry_smooth > 0.0);
  }
}

TEST_CASE("frozen correlations match the spectral integrands", "[quadspec]") {
  const auto params = standard_params(1.0);
  const GaussianEnvelope env(1.0);
  const auto kern = params.exponential_kernel();
  const auto phase = PhaseProfile::constant(0.4);
  const double t = 0.2;
  const double psi = psi_slow(params, env, t);
  const double phi_total = big_phi(params, env, phase, t);
  for (const double tau : {0.0, 0.03, 0.21}) {
    const auto c = corr_RX_RY(params, env, kern, phase, t, tau, EnvelopeTracking::frozen);
    const double rho2 = env.rho_sq(t);
    const double expected_rx =
        0.25 * (-params.psi0() * rho2 * kern.h(tau) * std::sin(2.0 * phi_total) +
                params.psi0() * params.psi0() * rho2 * rho2 * kern.autocorr_g(tau) *
                    std::pow(std::sin(phi_total), 2));
    CHECK_THAT(c.rx_smooth, WithinAbs(expected_rx, 1e-14));
    (void)psi;
  }
}

TEST_CASE("phase profile coherence: Phi = psi + phi for every kind", "[quadspec]") {
  const auto params = standard_params(1.3);
  const GaussianEnvelope env(1.0);
  const std::vector<PhaseProfile> profiles = {
      PhaseProfile::constant(0.7), PhaseProfile::optimal(0.9), PhaseProfile::compensating(0.2)};
  for (const auto& profile : profiles) {
    for (const double t : {-0.8, 0.0, 0.5}) {
      const double assembled = psi_slow(params, env, t) + phase_value(params, env, profile, t);
      CHECK_THAT(big_phi(params, env, profile, t), WithinAbs(assembled, 1e-13));
    }
  }
}

TEST_CASE("correlations are invariant under lag reversal about the pair", "[quadspec]") {
  // R(t, t + tau) written at (t + tau, -tau) is the same pair of times.
  const auto params = standard_params(0.8);
  const GaussianEnvelope env(1.0);
  const auto kern = params.exponential_kernel();
  const auto phase = PhaseProfile::constant(0.3);
  for (const double t : {-0.4, 0.0, 0.6}) {
    for (const double tau : {0.02, 0.11, 0.35}) {
      const auto fwd = corr_RX_RY(params, env, kern, phase, t, tau);
      const auto rev = corr_RX_RY(params, env, kern, phase, t + tau, -tau);
      CHECK_THAT(fwd.rx_smooth, WithinAbs(rev.rx_smooth, 1e-15));
      CHECK_THAT(fwd.ry_smooth, WithinAbs(rev.ry_smooth, 1e-15));
      // Same invariance for the slow correlator.
      CHECK_THAT(K_slow(params, env, kern, t, tau),
                 WithinAbs(K_slow(params, env, kern, t + tau, -tau), 1e-15));
    }
  }
}

TEST_CASE("correlation recovered from the inverse transform of the spectrum", "[quadspec]") {
  // R(tau) at tau = tau_r against (1/2pi) Int (S(Omega) - 1/4) e^{-i Omega s} dOmega.
  // The quarter floor is the delta flag and is removed exactly before
  // inverting; the spectrum decays like Omega^-2, so the truncation radius
  // must be large.
  const auto params = standard_params(1.0);
  const GaussianEnvelope env(1.0);
  const auto kern = params.exponential_kernel();
  const auto phase = PhaseProfile::optimal(0.0);
  const double tau_r = params.tau_r();
  const double s = 1.0;  // lag in units of tau_r

  const double radius = 1e4, step = 0.02;
  const long n = std::lround(radius / step);
  double acc = 0.0;
  for (long k = -n; k <= n; ++k) {
    const double om = k * step;
    const double w = (std::abs(k) == n) ? 0.5 : 1.0;
    acc += w * (spectrum_general(params, env, 0.0, om, 0.0).s_x - 0.25) * std::cos(om * s);
  }
  const double r_from_spectrum = acc * step / (2.0 * M_PI);

  const double r_direct =
      tau_r *
      corr_RX_RY(params, env, kern, phase, 0.0, s * tau_r, EnvelopeTracking::frozen).rx_smooth;
  CHECK_THAT(r_from_spectrum, WithinAbs(r_direct, 1e-4));
}

TEST_CASE("spectrum: shot noise, rotation by pi/2, sum identity", "[quadspec]") {
  const GaussianEnvelope env(1.0);
  const KerrParams coherent(1e-3, 0.0, 1.0, 0.1);  // psi0 = 0
  const auto kern = coherent.exponential_kernel();
  for (const double om : {0.0, 0.7, 3.0}) {
    const auto p = spectrum(coherent, env, kern, PhaseProfile::constant(0.9), 0.0, om);
    CHECK(p.s_x == 0.25);
    CHECK(p.s_y == 0.25);
  }

  // psi = 1, Omega = 0, Phi = pi/2: S_X = (1/4)(1 - 0 + 4) = 1.25.
  const auto params = standard_params(1.0);
  const auto kern2 = params.exponential_kernel();
  const auto at_pi_half =
      spectrum(params, env, kern2, PhaseProfile::constant(M_PI / 2.0 - 1.0), 0.0, 0.0);
  CHECK_THAT(at_pi_half.s_x, WithinAbs(1.25, 1e-12));

  // Omega -> infinity: the Lorentzian dies and both quadratures sit at 1/4.
  const auto far = spectrum(params, env, kern2, PhaseProfile::constant(0.3), 0.0, 1e6);
  CHECK_THAT(far.s_x, WithinAbs(0.25, 1e-9));
  CHECK_THAT(far.s_y, WithinAbs(0.25, 1e-9));

  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> phi_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> om_dist(0.0, 5.0);
  std::uniform_real_distribution<double> psi_dist(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const auto p2 = standard_params(psi_dist(rng));
    const double t = 0.1;
    const double om = om_dist(rng);
    const double phi = phi_dist(rng);
    const auto a = spectrum(p2, env, kern2, PhaseProfile::constant(phi), t, om);

    // S_X + S_Y = 1/2 + psi^2 L^2.
    const double psiL = psi_slow(p2, env, t) * lorentzian_L(om);
    CHECK_THAT(a.s_x + a.s_y, WithinAbs(0.5 + psiL * psiL, 1e-12));

    // X spectrum coincides with the Y spectrum a quarter period away.
    const auto b = spectrum(p2, env, kern2, PhaseProfile::constant(phi + M_PI / 2.0), t, om);
    CHECK_THAT(a.s_x, WithinAbs(b.s_y, 1e-12));
  }
}

TEST_CASE("optimal phase closed form", "[quadspec]") {
  const GaussianEnvelope env(1.0);

  // psi L = 1 at Omega0 = 0 needs psi0 = 1.
  const auto unit = standard_params(1.0);
  const auto r1 = optimal_phase(unit, env, 0.0, 0.0);
  CHECK_FALSE(r1.degenerate);
  CHECK_THAT(r1.value, WithinAbs(0.5 * (M_PI / 4.0) - 1.0, 1e-14));

  // psi -> 0: the limit pi/4, flagged as degenerate.
  const KerrParams zero(1e-3, 0.0, 1.0, 0.1);
  const auto r0 = optimal_phase(zero, env, 0.0, 1.3);
  CHECK(r0.degenerate);
  CHECK_THAT(r0.value, WithinAbs(M_PI / 4.0, 1e-14));

  // psi = 1, Omega0 = 1.
  const auto r2 = optimal_phase(unit, env, 0.0, 1.0);
  CHECK_THAT(r2.value, WithinAbs(0.5 * std::atan(2.0) - 1.0, 1e-14));
  CHECK_THAT(r2.value, WithinAbs(-0.446, 5e-4));

  // The closed form beats every constant phase on a fine scan.
  const auto kern = unit.exponential_kernel();
  const double s_opt = spectrum(unit, env, kern, PhaseProfile::optimal(1.0), 0.0, 1.0).s_x;
  double best_scan = 1e300;
  for (int i = 0; i <= 4000; ++i) {
    const double phi = -M_PI / 2.0 + M_PI * i / 4000.0;
    best_scan =
        std::min(best_scan, spectrum(unit, env, kern, PhaseProfile::constant(phi), 0.0, 1.0).s_x);
  }
  CHECK(s_opt <= best_scan + 1e-12);
  CHECK_THAT(best_scan, WithinAbs(s_opt, 1e-6));
}

TEST_CASE("spectra at the optimized frequency", "[quadspec]") {
  CHECK(spectrum_at_optimum_psiL(0.0).s_x == 0.25);
  CHECK(spectrum_at_optimum_psiL(0.0).s_y == 0.25);

  const auto unit = spectrum_at_optimum_psiL(1.0);
  CHECK_THAT(unit.s_x, WithinRel(std::pow(std::sqrt(2.0) - 1.0, 2) / 4.0, 1e-13));
  CHECK_THAT(unit.s_y, WithinRel(std::pow(std::sqrt(2.0) + 1.0, 2) / 4.0, 1e-13));

  const auto ten = spectrum_at_optimum_psiL(10.0);
  CHECK_THAT(ten.s_x, WithinRel(std::pow(std::sqrt(101.0) - 10.0, 2) / 4.0, 1e-10));
  CHECK_THAT(ten.s_x, WithinRel(6.22e-4, 2e-3));

  // Minimum-uncertainty product and monotonicity across twelve decades.
  double prev_x = 1e300, prev_y = 0.0;
  for (int i = 0; i < 120; ++i) {
    const double x = std::pow(10.0, -6.0 + 0.1 * i);
    const auto p = spectrum_at_optimum_psiL(x);
    CHECK_THAT(p.s_x * p.s_y, WithinAbs(1.0 / 16.0, 1e-12));
    CHECK(p.s_x < prev_x);
    CHECK(p.s_y > prev_y);
    prev_x = p.s_x;
    prev_y = p.s_y;
    CHECK(p.s_x <= 0.25);
    CHECK(p.s_y >= 0.25);
  }

  const auto params = standard_params(2.0);
  const GaussianEnvelope env(1.0);
  const auto via_params = spectrum_at_optimum(params, env, 0.0, 1.0);
  CHECK_THAT(via_params.s_x, WithinRel(spectrum_at_optimum_psiL(1.0).s_x, 1e-14));
}

TEST_CASE("general spectrum: reduction, zero field, route consistency", "[quadspec]") {
  const GaussianEnvelope env(1.0);

  // Exact reduction at Omega = Omega0.
  for (const double psi0 : {0.3, 1.0, 4.0}) {
    const auto params = standard_params(psi0);
    for (const double om0 : {0.0, 0.8, 2.0}) {
      const auto general = spectrum_general(params, env, 0.0, om0, om0);
      const auto optimum = spectrum_at_optimum(params, env, 0.0, om0);
      CHECK(general.s_x == optimum.s_x);
      CHECK(general.s_y == optimum.s_y);
    }
  }

  // psi = 0 gives the flat shot-noise floor at every frequency pair.
  const KerrParams zero(1e-3, 0.0, 1.0, 0.1);
  for (const double om : {0.0, 1.0, 3.7}) {
    const auto p = spectrum_general(zero, env, 0.0, om, 1.1);
    CHECK(p.s_x == 0.25);
    CHECK(p.s_y == 0.25);
  }

  // The anchored closed form equals direct substitution of the optimal
  // phase into the general spectrum expression.
  const auto params = standard_params(1.7);
  const auto kern = params.exponential_kernel();
  for (const double om0 : {0.0, 1.0}) {
    const auto phase = PhaseProfile::optimal(om0);
    for (double om = 0.0; om <= 4.0; om += 0.37) {
      const auto direct = spectrum(params, env, kern, phase, 0.0, om);
      const auto anchored = spectrum_general(params, env, 0.0, om, om0);
      CHECK_THAT(direct.s_x, WithinAbs(anchored.s_x, 1e-13));
      CHECK_THAT(direct.s_y, WithinAbs(anchored.s_y, 1e-13));
    }
  }
}

TEST_CASE("location of the spectrum minimum over frequency", "[quadspec]") {
  const GaussianEnvelope env(1.0);
  const auto argmin_omega = [&](double psi0, double om0) {
    const auto params = standard_params(psi0);
    double best = 1e300, arg = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double om = 4.0 * i / 4000.0;
      const double v = spectrum_general(params, env, 0.0, om, om0).s_x;
      if (v < best) {
        best = v;
        arg = om;
      }
    }
    return arg;
  };

  // Anchored at zero frequency the minimum stays at zero for any psi0.
  for (const double psi0 : {0.25, 1.0, 5.0}) {
    CHECK(argmin_omega(psi0, 0.0) == 0.0);
  }

  // Anchored at Omega0 = 1 the minimum sits at the quadratic vertex
  // L* = L0 (1 + sqrt(1 + x^2)) / 2 with x = 1/(psi0 L0), approaching
  // Omega0 from below as psi0 grows.
  const auto vertex_omega = [](double psi0, double om0) {
    const double L0 = lorentzian_L(om0);
    const double x = 1.0 / (psi0 * L0);
    const double Lstar = L0 * (std::hypot(1.0, x) + 1.0) / 2.0;
    return Lstar >= 1.0 ? 0.0 : std::sqrt(1.0 / Lstar - 1.0);
  };
  for (const double psi0 : {0.5, 1.5, 2.0, 5.0, 20.0}) {
    CHECK_THAT(argmin_omega(psi0, 1.0), WithinAbs(vertex_omega(psi0, 1.0), 2e-3));
  }
  CHECK(argmin_omega(0.5, 1.0) == 0.0);                        // below psi0 = 1: pinned at 0
  CHECK_THAT(vertex_omega(2.0, 1.0), WithinAbs(0.8105, 1e-4)); // moderate phases sit below 1
  CHECK_THAT(argmin_omega(20.0, 1.0), WithinAbs(1.0, 5e-3));   // large phases approach 1
}

TEST_CASE("squeezing bandwidth endpoints and roots", "[quadspec]") {
  CHECK(squeezing_bandwidth(0.0) == 1.0);
  CHECK_THAT(squeezing_bandwidth(1e-6), WithinAbs(1.0, 1e-6));
  CHECK_THAT(squeezing_bandwidth(1.0), WithinAbs(1.3899105811, 1e-6));
  CHECK_THAT(squeezing_bandwidth(100.0), WithinAbs(1.5537472, 1e-5));
  CHECK_THAT(squeezing_bandwidth(1000.0), WithinAbs(std::sqrt(1.0 + std::sqrt(2.0)), 1e-3));
  CHECK_THROWS_AS(squeezing_bandwidth(-0.5), std::invalid_argument);

  // The root in L for psi = 1, and the monotone growth of the width.
  const double L = 1.0 / (1.0 + std::pow(squeezing_bandwidth(1.0), 2));
  CHECK_THAT(L, WithinAbs(0.341081, 1e-5));
  double prev = 0.0;
  for (double psi = 0.0; psi <= 50.0; psi += 0.25) {
    const double width = squeezing_bandwidth(psi);
    CHECK(width >= 1.0);
    CHECK(width >= prev);
    CHECK(width < 1.6);
    prev = width;
  }

  // Secondary explicit-radical path agrees with the quadratic route.
  for (const double psi : {1e-3, 0.37, 1.0, 12.0, 400.0}) {
    CHECK_THAT(squeezing_bandwidth_radical(psi), WithinAbs(squeezing_bandwidth(psi), 1e-10));
  }

  // Substituting the root back satisfies the half-depth definition.
  const GaussianEnvelope env(1.0);
  for (const double psi0 : {0.2, 1.0, 30.0}) {
    const auto params = standard_params(psi0);
    const double width = squeezing_bandwidth(psi0);
    const double target = 0.5 * (0.25 + spectrum_at_optimum_psiL(psi0).s_x);
    CHECK_THAT(spectrum_general(params, env, 0.0, width, 0.0).s_x, WithinAbs(target, 1e-10));
  }
}

TEST_CASE("spectrum series carries provenance", "[quadspec]") {
  const auto params = standard_params(1.0);
  const GaussianEnvelope env(1.0);
  const auto series = spectrum_series_general(params, env, 0.0, {0.0, 0.5, 1.0}, 0.0);
  REQUIRE(series.s_x.size() == 3);
  CHECK(series.formula_tag == "general");
  CHECK(series.s_x[0] < series.s_x[2]);
  for (const double v : series.s_x) CHECK(v > 0.0);
  for (const double v : series.s_y) CHECK(v > 0.0);

  // Per-frequency optimal series is the lower envelope of every anchored one.
  const auto floor_series = spectrum_series_at_optimum(params, env, 0.0, {0.0, 0.5, 1.0});
  CHECK(floor_series.formula_tag == "optimal-frequency");
  for (std::size_t i = 0; i < floor_series.s_x.size(); ++i) {
    CHECK(floor_series.s_x[i] <= series.s_x[i] + 1e-15);
  }
}
