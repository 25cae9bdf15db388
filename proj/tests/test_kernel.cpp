#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kerrsq/kernel.hpp"
#include "kerrsq/oracle.hpp"
#include "kerrsq/quadrature.hpp"

using namespace kerrsq;
using Catch::Matchers::WithinAbs;

TEST_CASE("normalized response values", "[kernel]") {
  const auto expo = ResponseKernel::exponential(1.0);
  const auto gauss = ResponseKernel::gaussian(1.0);
  CHECK(expo.h_tilde(0.0) == 1.0);
  CHECK_THAT(expo.h_tilde(1.0), WithinAbs(std::exp(-1.0), 1e-15));
  CHECK_THAT(gauss.h_tilde(2.0), WithinAbs(std::exp(-2.0), 1e-15));
}

TEST_CASE("response is even, bounded and peaked at zero", "[kernel]") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> lag(-6.0, 6.0);
  for (const auto variant : {KernelVariant::exponential, KernelVariant::gaussian}) {
    const ResponseKernel kernel(variant, 0.7);
    for (int i = 0; i < 200; ++i) {
      const double theta = lag(rng);
      const double v = kernel.h_tilde(theta);
      CHECK(v == kernel.h_tilde(-theta));
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("autocorrelation closed form and numeric convolution agree", "[kernel]") {
  const auto kernel = ResponseKernel::exponential(1.0);
  CHECK_THAT(kernel.autocorr_g(0.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(kernel.autocorr_g(1.0), WithinAbs(2.0 * std::exp(-1.0), 1e-12));
  CHECK_THAT(kernel.autocorr_g(2.0), WithinAbs(3.0 * std::exp(-2.0), 1e-12));

  for (const double tau : {0.3, 1.0, 2.0, 4.5}) {
    const auto conv = integrate(
        [&](double th) { return kernel.h_tilde(th) * kernel.h_tilde(th + tau); }, -45.0, 45.0,
        {1e-12, 1e-12, 10000});
    CHECK_THAT(kernel.autocorr_g(tau), WithinAbs(conv.value, 1e-10));
    CHECK(kernel.autocorr_g(tau) == kernel.autocorr_g(-tau));
  }
}

TEST_CASE("autocorrelation scales with the relaxation time", "[kernel]") {
  const auto kernel = ResponseKernel::exponential(0.5);
  CHECK_THAT(kernel.autocorr_g(0.0), WithinAbs(2.0, 1e-15));  // 1 / tau_r
  CHECK_THAT(kernel.autocorr_g(0.5), WithinAbs(2.0 * 2.0 * std::exp(-1.0), 1e-12));
}

TEST_CASE("gaussian kernel rejects the exponential-only autocorrelation", "[kernel]") {
  const auto kernel = ResponseKernel::gaussian(1.0);
  CHECK_THROWS_AS(kernel.autocorr_g(1.0), UnsupportedVariantError);
}

TEST_CASE("invalid relaxation time", "[kernel]") {
  CHECK_THROWS_AS(ResponseKernel::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ResponseKernel::gaussian(-1.0), std::invalid_argument);
}

TEST_CASE("Lorentzian profile values", "[kernel]") {
  CHECK(lorentzian_L(0.0) == 1.0);
  CHECK_THAT(lorentzian_L(1.0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(lorentzian_L(2.0), WithinAbs(0.2, 1e-15));
  CHECK(lorentzian_L(3.0) == lorentzian_L(-3.0));

  CHECK_THAT(ft_g(0.0), WithinAbs(4.0, 1e-15));
  CHECK_THAT(ft_g(1.0), WithinAbs(1.0, 1e-15));
  CHECK_THAT(ft_g(3.0), WithinAbs(0.04, 1e-15));
}

TEST_CASE("Fourier identities against the numeric transform", "[kernel]") {
  const auto kernel = ResponseKernel::exponential(1.0);
  for (double om = 0.0; om <= 5.0; om += 0.5) {
    const auto ft_h = numeric_ft([&](double s) { return kernel.h_tilde(s); }, 0.0, om);
    CHECK_THAT(ft_h.value, WithinAbs(2.0 * lorentzian_L(om), 1e-6));
    CHECK_THAT(ft_h.imag_residue, WithinAbs(0.0, 1e-9));

    const auto ft_gg = numeric_ft([&](double s) { return kernel.autocorr_g(s); }, 0.0, om);
    CHECK_THAT(ft_gg.value, WithinAbs(ft_g(om), 1e-6));
  }
}

TEST_CASE("exponential response normalization by quadrature", "[kernel]") {
  const auto kernel = ResponseKernel::exponential(1.0);
  const auto n1 = integrate([&](double th) { return kernel.h_tilde(th); }, 0.0, 40.0,
                            {1e-12, 1e-12, 10000});
  const auto n2 = integrate([&](double th) { return std::pow(kernel.h_tilde(th), 2); }, 0.0,
                            40.0, {1e-12, 1e-12, 10000});
  CHECK_THAT(n1.value, WithinAbs(1.0, 1e-8));
  CHECK_THAT(n2.value, WithinAbs(0.5, 1e-8));
}
