#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dww/dense.hpp"
#include "dww/operators.hpp"
#include "oracles.hpp"

using namespace dww;

namespace {

double max_physical_diff(const SpectralField& a, const SpectralField& b) {
    return sup_norm(a - b);
}

}  // namespace

TEST_CASE("hilbert transform on trig monomials", "[operators]") {
    const GridSpec g(32);
    // H cos(kx) = sin(kx)
    for (int k : {1, 2, 5}) {
        const SpectralField hf = hilbert(harmonic(g, k, 1.0, 0.0));
        CHECK(max_physical_diff(hf, harmonic(g, k, 0.0, 1.0)) < 1e-13);
    }
    // H sin(3x) = -cos(3x)
    CHECK(max_physical_diff(hilbert(harmonic(g, 3, 0.0, 1.0)), -harmonic(g, 3, 1.0, 0.0)) < 1e-13);
    // H 1 = 0
    const SpectralField h1 = hilbert(harmonic(g, 0, 1.0, 0.0));
    CHECK(sup_norm(h1) < 1e-14);
}

TEST_CASE("lambda powers", "[operators]") {
    const GridSpec g(32);
    CHECK(max_physical_diff(lambda_pow(harmonic(g, 2, 1, 0), 1.0), 2.0 * harmonic(g, 2, 1, 0)) < 1e-13);
    CHECK(max_physical_diff(lambda_pow(harmonic(g, 1, 0, 1), 3.0), harmonic(g, 1, 0, 1)) < 1e-13);
    CHECK(max_physical_diff(lambda_pow(harmonic(g, 4, 1, 0), -1.0), 0.25 * harmonic(g, 4, 1, 0)) < 1e-13);

    SpectralField with_mean = harmonic(g, 2, 1, 0);
    with_mean.raw(0) = 1.0;
    CHECK_THROWS_AS(lambda_pow(with_mean, -1.0), std::domain_error);
    CHECK_THROWS_AS(lambda_pow(with_mean, -1.5), std::invalid_argument);
    // s = 0 keeps the mean
    CHECK(lambda_pow(with_mean, 0.0).mean() == Catch::Approx(1.0));
}

TEST_CASE("derivatives", "[operators]") {
    const GridSpec g(32);
    CHECK(max_physical_diff(derivative(harmonic(g, 1, 0, 1), 1), harmonic(g, 1, 1, 0)) < 1e-13);
    CHECK(max_physical_diff(derivative(harmonic(g, 3, 1, 0), 2), -9.0 * harmonic(g, 3, 1, 0)) < 1e-13);
    CHECK_THROWS_AS(derivative(harmonic(g, 1, 1, 0), 0), std::invalid_argument);
}

TEST_CASE("operator identities on random zero-mean fields", "[operators]") {
    const GridSpec g(64);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const SpectralField f = oracle::random_band_limited(g, g.n_modes() - 1, rng);
        // d1 H f = Lambda f
        CHECK(oracle::max_coeff_diff(derivative(hilbert(f), 1), lambda_pow(f, 1.0)) < 1e-12);
        // H(Hf) = -f on zero-mean (interior band; Nyquist is annihilated)
        SpectralField interior = f;
        interior.raw(g.n_modes()) = 0.0;
        CHECK(oracle::max_coeff_diff(hilbert(hilbert(f)), -interior) < 1e-12);
        // d1 Lambda^{-1} f = -H f
        CHECK(oracle::max_coeff_diff(derivative(lambda_pow(f, -1.0), 1), -hilbert(f)) < 1e-12);
        // realness: physical samples of every operator image are real by
        // construction (half-spectrum storage); spot-check the round trip
        const auto p = to_physical(hilbert(f));
        const SpectralField back = to_spectral(g, p);
        CHECK(oracle::max_coeff_diff(back, hilbert(f)) < 1e-12);
    }
}

TEST_CASE("multiply: closed forms and dealiasing", "[operators]") {
    const GridSpec g(32);
    const SpectralField cosx = harmonic(g, 1, 1, 0);
    // cos^2 = (1 + cos 2x)/2
    const SpectralField sq = multiply(cosx, cosx);
    CHECK(sq.mean() == Catch::Approx(0.5));
    CHECK(std::abs(sq.coeff(2) - 0.25) < 1e-14);
    for (int k : {1, 3, 4, 5}) CHECK(std::abs(sq.coeff(k)) < 1e-14);
    // f * 0 = 0
    CHECK(sup_norm(multiply(cosx, SpectralField(g))) < 1e-15);
    // grid mismatch
    CHECK_THROWS_AS(multiply(cosx, harmonic(GridSpec(16), 1, 1, 0)), std::invalid_argument);
    // modes above the 2/3 cutoff are zeroed
    const SpectralField high = harmonic(g, 9, 1, 0);  // 9 + 9 = 18 > kc = 10
    const SpectralField prod = multiply(high, high);
    for (int k = g.dealias_cutoff() + 1; k <= g.n_modes(); ++k)
        CHECK(std::abs(prod.raw(k)) == 0.0);
}

TEST_CASE("multiply matches direct coefficient convolution", "[operators]") {
    const GridSpec g(96);  // kc = 32; inputs band-limited to n_modes/3 = 16
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const SpectralField a = oracle::random_band_limited(g, g.n_modes() / 3, rng);
        const SpectralField b = oracle::random_band_limited(g, g.n_modes() / 3, rng);
        const SpectralField p = multiply(a, b);
        for (int k = 0; k <= g.dealias_cutoff(); ++k)
            CHECK(std::abs(p.raw(k) - oracle::convolution_coeff(a, b, k)) < 1e-12);
    }
}

TEST_CASE("commutator closed forms", "[operators]") {
    const GridSpec g(32);
    // [Lambda, const] g = 0
    const SpectralField c = harmonic(g, 0, 2.5, 0);
    const SpectralField gfield = harmonic(g, 2, 0.5, 1.0);
    CHECK(sup_norm(commutator(OpTag::lambda, c, gfield)) < 1e-13);
    // [H, cos x](sin x) = 1/2
    const SpectralField r = commutator(OpTag::hilbert, harmonic(g, 1, 1, 0), harmonic(g, 1, 0, 1));
    CHECK(r.mean() == Catch::Approx(0.5));
    for (int k = 1; k <= g.n_modes(); ++k) CHECK(std::abs(r.raw(k)) < 1e-14);
    CHECK_THROWS_AS(commutator(static_cast<OpTag>(99), c, gfield), std::domain_error);
}

TEST_CASE("commutator matches dense-matrix composition", "[operators]") {
    const GridSpec g(48);  // nm = 24, kc = 16
    std::mt19937 rng(23);
    const auto lambda_mult = [](int k) {
        return std::complex<double>(std::abs(static_cast<double>(k)), 0.0);
    };
    const DenseOperator lam = DenseOperator::from_multiplier(g, lambda_mult);
    for (int trial = 0; trial < 5; ++trial) {
        // bands chosen so no product exceeds the dealias cutoff
        const SpectralField h = oracle::random_band_limited(g, 4, rng, 0.3);
        const SpectralField v = oracle::random_band_limited(g, 8, rng);
        const DenseOperator diag = DenseOperator::diagonal(to_physical(h));
        const DenseOperator comp = lam * diag - diag * lam;
        const auto dense_image = comp.apply(to_physical(v));
        const auto spectral_image = to_physical(commutator(OpTag::lambda, h, v));
        for (std::size_t j = 0; j < dense_image.size(); ++j)
            CHECK(std::abs(dense_image[j] - spectral_image[j]) < 1e-10);
    }
}

TEST_CASE("dense multiplier matrices agree with spectral operators on the basis", "[operators]") {
    for (int n : {16, 32, 64}) {
        const GridSpec g(n);
        const auto check_op = [&](const std::function<std::complex<double>(int)>& mult,
                                  const std::function<SpectralField(const SpectralField&)>& op) {
            const DenseOperator dense = DenseOperator::from_multiplier(g, mult);
            for (int k = 0; k <= g.n_modes(); ++k) {
                for (int phase = 0; phase < (k == 0 || k == g.n_modes() ? 1 : 2); ++phase) {
                    const SpectralField basis =
                        harmonic(g, k, phase == 0 ? 1.0 : 0.0, phase == 0 ? 0.0 : 1.0);
                    const auto a = dense.apply(to_physical(basis));
                    const auto b = to_physical(op(basis));
                    for (std::size_t j = 0; j < a.size(); ++j)
                        CHECK(std::abs(a[j] - b[j]) < 1e-10);
                }
            }
        };
        check_op([](int k) { return std::complex<double>(std::abs(static_cast<double>(k)), 0.0); },
                 [](const SpectralField& f) { return lambda_pow(f, 1.0); });
        check_op([](int k) { return std::complex<double>(0.0, k == 0 ? 0.0 : (k > 0 ? -1.0 : 1.0)); },
                 [](const SpectralField& f) { return hilbert(f); });
        check_op([](int k) { return std::complex<double>(-static_cast<double>(k) * k, 0.0); },
                 [](const SpectralField& f) { return derivative(f, 2); });
    }
}

TEST_CASE("tricomi identities", "[operators]") {
    const GridSpec g(64);
    // f = cos x: exact closed form
    {
        const auto [r1, r2] = tricomi_residuals(harmonic(g, 1, 1, 0), harmonic(g, 1, 1, 0));
        CHECK(r1 < 1e-12);
        CHECK(r2 < 1e-12);
    }
    // f = g = sin 2x
    {
        const auto [r1, r2] = tricomi_residuals(harmonic(g, 2, 0, 1), harmonic(g, 2, 0, 1));
        CHECK(r1 < 1e-12);
        CHECK(r2 < 1e-12);
    }
    // property: 100 random alias-free pairs
    std::mt19937 rng(29);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const SpectralField f = oracle::random_band_limited(g, g.n_modes() / 3, rng);
        const SpectralField h = oracle::random_band_limited(g, g.n_modes() / 3, rng);
        const auto [r1, r2] = tricomi_residuals(f, h);
        const double scale = (sup_norm(f) + sup_norm(h)) * (sup_norm(f) + sup_norm(h));
        worst = std::max(worst, std::max(r1, r2) / scale);
    }
    CHECK(worst < 1e-11);
}
