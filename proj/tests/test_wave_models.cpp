#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dww/wave_models.hpp"
#include "oracles.hpp"

using namespace dww;

namespace {
ModelParams params(int s, double a1, double a2, double beta, double eps = 0.0) {
    ModelParams p;
    p.s = s;
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.beta = beta;
    p.epsilon = eps;
    return p;
}
}  // namespace

TEST_CASE("dispersion closed forms", "[wave]") {
    // inviscid: omega = +-sqrt(|k|)
    const auto d = dispersion(4, params(0, 0, 0, 0));
    CHECK(d.omega_plus == std::complex<double>(2.0, 0.0));
    CHECK(d.omega_minus == std::complex<double>(-2.0, 0.0));

    // k = 0, s = 0, alpha1 > 0: roots {0, -i alpha1}
    const auto z = dispersion(0, params(0, 0.3, 0.1, 0));
    CHECK(std::abs(z.omega_plus) < 1e-15);
    CHECK(std::abs(z.omega_minus - std::complex<double>(0.0, -0.3)) < 1e-15);

    // worked example: s = 2, alpha1 = alpha2 = 6.8e-4, beta = 2e-5, k = 1
    const auto w = dispersion(1, params(2, 6.8e-4, 6.8e-4, 2e-5));
    CHECK(std::abs(w.omega_plus.real() - 1.0) < 1e-4);
    CHECK(std::abs(w.omega_plus.imag() + 6.8e-4) < 1e-7);
    CHECK(std::abs(w.omega_minus.real() + 1.0) < 1e-4);

    // underdamped s=2 decay is exactly (alpha1+alpha2) k^2 / 2
    for (int k = 1; k <= 8; ++k) {
        const auto b = dispersion(k, params(2, 6.8e-4, 6.8e-4, 2e-5));
        CHECK(b.omega_plus.imag() == Catch::Approx(-(6.8e-4 + 6.8e-4) * k * k / 2).epsilon(1e-12));
    }
}

TEST_CASE("dispersion vieta identities and damping sign", "[wave]") {
    const std::vector<ModelParams> sweep = {
        params(0, 0, 0, 0),          params(0, 0.01, 0, 2e-5),
        params(0, 0.01, 6.8e-4, 2e-5), params(2, 6.8e-4, 6.8e-4, 2e-5),
        params(2, 0.5, 0.25, 1e-3)};
    for (const auto& p : sweep) {
        for (int k = 0; k <= 256; ++k) {
            const auto d = dispersion(k, p);
            const std::complex<double> sum = d.omega_plus + d.omega_minus;
            const std::complex<double> prod = d.omega_plus * d.omega_minus;
            CHECK(std::abs(sum - std::complex<double>(0.0, -damping_gamma(k, p))) < 1e-12 * (1 + std::abs(sum)));
            CHECK(std::abs(prod + omega0_squared(k, p)) < 1e-11 * (1 + std::abs(prod)));
            CHECK(d.omega_plus.imag() <= 1e-15);
            CHECK(d.omega_minus.imag() <= 1e-15);
        }
    }
    // s=0 with alpha2 = 0: every underdamped mode decays at exactly alpha1/2
    const ModelParams p0 = params(0, 0.01, 0, 0);
    for (int k = 1; k <= 64; ++k) {
        const auto d = dispersion(k, p0);
        REQUIRE(d.omega_plus.real() > 0.0);
        CHECK(d.omega_plus.imag() == -0.005);
    }
}

TEST_CASE("dispersion_inviscid", "[wave]") {
    CHECK(dispersion_inviscid(1, 0.0) == 1.0);
    CHECK(dispersion_inviscid(0, 0.5) == 0.0);
    CHECK(dispersion_inviscid(100, 2e-5) == Catch::Approx(std::sqrt(120.0)).epsilon(1e-12));
    CHECK_THROWS_AS(dispersion_inviscid(1, -0.1), std::invalid_argument);
}

TEST_CASE("linear_propagator", "[wave]") {
    // alpha = beta = 0, k = 1, dt = 2 pi: one full period
    const Mat2c id = linear_propagator(1, params(0, 0, 0, 0), 2.0 * kPi);
    CHECK(std::abs(id.a - 1.0) < 1e-12);
    CHECK(std::abs(id.b) < 1e-12);
    CHECK(std::abs(id.c) < 1e-12);
    CHECK(std::abs(id.d - 1.0) < 1e-12);

    // dt -> 0: I + dt C + O(dt^2)
    const ModelParams p = params(2, 6.8e-4, 6.8e-4, 2e-5);
    const double dt = 1e-6;
    const Mat2 c = companion_matrix(3, p);
    const Mat2c e = linear_propagator(3, p, dt);
    CHECK(std::abs(e.a - (1.0 + dt * c.a)) < 1e-11);
    CHECK(std::abs(e.b - dt * c.b) < 1e-11);
    CHECK(std::abs(e.c - dt * c.c) < 1e-11);
    CHECK(std::abs(e.d - (1.0 + dt * c.d)) < 1e-11);

    // semigroup property
    for (int k : {1, 5, 17}) {
        const Mat2 e1 = expm(companion_matrix(k, p), 0.37);
        const Mat2 e2 = expm(companion_matrix(k, p), 0.21);
        const Mat2 e12 = expm(companion_matrix(k, p), 0.58);
        const Mat2 prod = e1 * e2;
        CHECK(std::abs(prod.a - e12.a) < 1e-12);
        CHECK(std::abs(prod.b - e12.b) < 1e-12);
        CHECK(std::abs(prod.c - e12.c) < 1e-12);
        CHECK(std::abs(prod.d - e12.d) < 1e-12);
    }

    // critically damped companion goes through the Jordan branch
    const ModelParams crit = params(0, 2.0, 0, 0);  // at k=1: gamma=2, Omega^2=1, double root -i
    const Mat2 ecrit = expm(companion_matrix(1, crit), 0.5);
    // exact: e^{-t}[(1+t) I + t (A + I)] with A = [[0,1],[-1,-2]]
    const double t = 0.5, el = std::exp(-t);
    CHECK(ecrit.a == Catch::Approx(el * (1 + t)).epsilon(1e-12));
    CHECK(ecrit.b == Catch::Approx(el * t).epsilon(1e-12));
    CHECK(ecrit.c == Catch::Approx(-el * t).epsilon(1e-12));
    CHECK(ecrit.d == Catch::Approx(el * (1 - t)).epsilon(1e-12));
}

TEST_CASE("rhs zero state and misuse errors", "[wave]") {
    const GridSpec g(32);
    const WaveState zero{SpectralField(g), SpectralField(g)};
    const ModelParams p0 = params(0, 0.1, 0.2, 1e-4, 0.5);
    const auto [ft, ftt] = rhs_s0(zero, p0);
    CHECK(sup_norm(ft) == 0.0);
    CHECK(sup_norm(ftt) == 0.0);
    CHECK_THROWS_AS(rhs_s2(zero, p0), std::invalid_argument);
    CHECK_THROWS_AS(rhs_s0(zero, params(2, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("rhs linear part reproduces the per-mode coefficients", "[wave]") {
    const GridSpec g(64);
    for (int s : {0, 2}) {
        const ModelParams p = params(s, 0.01, 6.8e-4, 2e-5, 0.0);
        for (int k : {1, 3, 11}) {
            // f = cos(kx), ft = 0: ftt = -Omega^2(k) cos(kx)
            const WaveState st{harmonic(g, k, 1, 0), SpectralField(g)};
            const auto [ft, ftt] = s == 0 ? rhs_s0(st, p) : rhs_s2(st, p);
            CHECK(sup_norm(ft) == 0.0);
            CHECK(sup_norm(ftt + omega0_squared(k, p) * harmonic(g, k, 1, 0)) < 1e-12);
            // f = 0, ft = cos(kx): ftt = -Gamma(k) cos(kx)
            const WaveState st2{SpectralField(g), harmonic(g, k, 1, 0)};
            const auto [ft2, ftt2] = s == 0 ? rhs_s0(st2, p) : rhs_s2(st2, p);
            CHECK(sup_norm(ftt2 + damping_gamma(k, p) * harmonic(g, k, 1, 0)) < 1e-12);
            CHECK(sup_norm(ft2 - harmonic(g, k, 1, 0)) < 1e-15);
        }
    }
}

TEST_CASE("s=0 nonlinearity assembled by hand for a single-mode state", "[wave]") {
    const GridSpec g(64);
    // eps = 1, alpha = beta = 0, f = cos x, ft = 0: N reduces to d1 [H, f] Lambda f
    const ModelParams p = params(0, 0, 0, 0, 1.0);
    const SpectralField f = harmonic(g, 1, 1, 0);
    const WaveState st{f, SpectralField(g)};
    const auto [ft, ftt] = rhs_s0(st, p);

    const SpectralField lam_f = lambda_pow(f, 1.0);
    const SpectralField hand =
        derivative(hilbert(multiply(f, lam_f)) - multiply(f, hilbert(lam_f)), 1);
    const SpectralField linear = -1.0 * lam_f;
    CHECK(sup_norm(ftt - (linear + hand)) < 1e-13);

    // closed form: H(cos^2 x) = sin(2x)/2 = cos x H(cos x), so the commutator
    // vanishes for this input and ftt = -cos(x)
    CHECK(sup_norm(ftt + f) < 1e-13);
}

TEST_CASE("full nonlinearity matches independent term-by-term assembly", "[wave]") {
    const GridSpec g(96);
    std::mt19937 rng(41);
    const double a1 = 0.23, a2 = 0.11, beta = 0.05;
    const SpectralField f = oracle::random_band_limited(g, g.n_modes() / 3, rng, 0.3);
    const SpectralField ft = oracle::random_band_limited(g, g.n_modes() / 3, rng, 0.3);
    const WaveState st{f, ft};

    const SpectralField hft = hilbert(ft);
    const SpectralField fxx = derivative(f, 2);
    const SpectralField hfxx = hilbert(fxx);
    auto comm_h = [](const SpectralField& a, const SpectralField& b) {
        return hilbert(multiply(a, b)) - multiply(a, hilbert(b));
    };
    auto comm_dxx = [](const SpectralField& a, const SpectralField& b) {
        return derivative(multiply(a, b), 2) - multiply(a, derivative(b, 2));
    };

    SpectralField n0 = -lambda_pow(multiply(hft, hft), 1.0);
    n0 += derivative(comm_h(f, lambda_pow(f, 1.0)), 1);
    n0 += beta * derivative(comm_h(f, lambda_pow(f, 3.0)), 1);
    n0 += a2 * derivative(comm_h(hft, hfxx), 1);
    n0 += a2 * lambda_pow(multiply(hft, hfxx), 1.0);
    n0 -= (a2 * a2) * derivative(comm_h(fxx, fxx), 1);

    CHECK(sup_norm(wave_nonlinear(st, params(0, a1, a2, beta)) - n0) <
          1e-12 * (1.0 + sup_norm(n0)));

    SpectralField n2 = n0;
    n2 += (a1 * a2) * derivative(comm_dxx(f, derivative(lambda_pow(f, 1.0), 1)), 1);
    n2 -= a1 * derivative(comm_dxx(f, hft), 1);
    // relative tolerance: the d1^2 commutator terms amplify round-off by k^3
    CHECK(sup_norm(wave_nonlinear(st, params(2, a1, a2, beta)) - n2) <
          1e-12 * (1.0 + sup_norm(n2)));
}

TEST_CASE("alpha -> 0 collapses both models onto the quadratic h-model", "[wave]") {
    const GridSpec g(64);
    std::mt19937 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const WaveState st{oracle::random_band_limited(g, g.n_modes() / 3, rng),
                           oracle::random_band_limited(g, g.n_modes() / 3, rng)};
        const auto [ft0, ftt0] = rhs_s0(st, params(0, 0, 0, 2e-5, 1.0));
        const auto [ft2, ftt2] = rhs_s2(st, params(2, 0, 0, 2e-5, 1.0));
        CHECK(oracle::max_coeff_diff(ftt0, ftt2) < 1e-12);
        CHECK(oracle::max_coeff_diff(ft0, ft2) == 0.0);
    }
}

TEST_CASE("rhs outputs are real and zero-mean", "[wave]") {
    const GridSpec g(64);
    std::mt19937 rng(47);
    const WaveState st{oracle::random_band_limited(g, g.n_modes() / 3, rng),
                       oracle::random_band_limited(g, g.n_modes() / 3, rng)};
    const auto [ft, ftt] = rhs_s2(st, params(2, 6.8e-4, 6.8e-4, 2e-5, 0.03));
    CHECK(std::abs(ftt.mean()) < 1e-14);
    // realness is structural; the physical round trip must reproduce the field
    const SpectralField back = to_spectral(g, to_physical(ftt));
    CHECK(oracle::max_coeff_diff(back, ftt) < 1e-13);
}
