#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fuchsian/trigapprox.hpp"

using namespace fuchsian;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * kPi;
}  // namespace

TEST_CASE("fejer kernel pinned values") {
    CHECK(fejer_kernel(1, 0.0) == doctest::Approx(1.0));
    CHECK(fejer_kernel(4, 0.0) == doctest::Approx(4.0));
    CHECK(fejer_kernel(64, 0.0) == doctest::Approx(64.0));
    for (double u : {0.3, 1.0, 2.0, 3.0}) CHECK(fejer_kernel(1, u) == doctest::Approx(1.0));
    CHECK(fejer_kernel(2, kPi) == doctest::Approx(0.0));
    CHECK_THROWS_AS(fejer_kernel(0, 1.0), std::invalid_argument);
}

TEST_CASE("fejer kernel: nonnegative, continuous at the removable point, unit mean") {
    for (int R : {1, 2, 3, 8, 17, 64}) {
        const int G = 4096;
        double mean = 0;
        for (int i = 0; i < G; ++i) {
            const double u = kTwoPi * (i + 0.5) / G;
            const double v = fejer_kernel(R, u);
            CHECK(v >= 0.0);
            mean += v;
        }
        mean /= G;  // midpoint rule with the 1/(2 pi) normalization
        CHECK(mean == doctest::Approx(1.0).epsilon(1e-10));
        // series branch agrees with the closed form near zero
        const double eps = 1e-9;
        CHECK(fejer_kernel(R, eps) == doctest::Approx(fejer_kernel(R, 1e-4)).epsilon(1e-4));
    }
}

TEST_CASE("fejer mean of simple inputs") {
    FejerOptions opt;
    opt.grid = 128;

    // constants are fixed points for every R
    const TrigPoly2D c = fejer_mean([](double, double) { return complexd(2.5, 0); }, 8, opt);
    CHECK(c.coeff(0, 0).real() == doctest::Approx(2.5));
    CHECK(std::abs(c.eval(0.3, 1.1) - complexd(2.5, 0)) < 1e-12);
    CHECK(std::abs(c.eval(2.9, 5.2) - complexd(2.5, 0)) < 1e-12);

    // single harmonic picks up exactly its Cesaro weight
    for (int R : {8, 32}) {
        const TrigPoly2D h = fejer_mean(
            [](double a, double) { return std::polar(1.0, 2 * a); }, R, opt);
        CHECK(h.coeff(2, 0).real() == doctest::Approx(1.0 - 2.0 / R).epsilon(1e-12));
        CHECK(std::abs(h.coeff(2, 0).imag()) < 1e-12);
        double others = 0;
        for (int n = -R; n <= R; ++n)
            for (int m = -R; m <= R; ++m)
                if (n != 2 || m != 0) others = std::max(others, std::abs(h.coeff(n, m)));
        CHECK(others < 1e-12);
    }

    // mixed harmonic: weights multiply across the axes
    const int R = 16;
    const TrigPoly2D mixed = fejer_mean(
        [](double a, double b) { return complexd(std::cos(2 * a + 4 * b), 0); }, R, opt);
    const double w = (1.0 - 2.0 / R) * (1.0 - 4.0 / R);
    CHECK(mixed.coeff(2, 4).real() == doctest::Approx(w / 2).epsilon(1e-12));
    CHECK(mixed.coeff(-2, -4).real() == doctest::Approx(w / 2).epsilon(1e-12));
    CHECK(std::abs(mixed.eval(0.7, 1.3) - complexd(w * std::cos(2 * 0.7 + 4 * 1.3), 0)) < 1e-11);
}

TEST_CASE("pi-symmetric inputs keep only even frequencies") {
    FejerOptions opt;
    opt.grid = 128;
    const TrigPoly2D p = fejer_mean(
        [](double a, double b) { return complexd(std::abs(std::sin(a)) * std::cos(2 * b), 0); },
        12, opt);
    CHECK(p.even_only);
    for (int n = -12; n <= 12; ++n)
        for (int m = -12; m <= 12; ++m)
            if (n % 2 != 0 || m % 2 != 0) CHECK(std::abs(p.coeff(n, m)) < 1e-13);

    // a genuinely odd harmonic is not flagged
    const TrigPoly2D q = fejer_mean(
        [](double a, double) { return complexd(std::cos(a), 0); }, 8, opt);
    CHECK(!q.even_only);
}

TEST_CASE("coefficients of real inputs: conjugate symmetry and sup bound") {
    FejerOptions opt;
    opt.grid = 128;
    auto psi = [](double a, double b) {
        return complexd(std::abs(std::sin(a)) + 0.3 * std::cos(2 * b), 0);
    };
    const TrigPoly2D p = fejer_mean(psi, 16, opt);
    double sup = 0;
    for (int i = 0; i < 512; ++i)
        sup = std::max(sup, std::abs(psi(kTwoPi * i / 512.0, kTwoPi * ((i * 7) % 512) / 512.0)));
    for (int n = -16; n <= 16; ++n)
        for (int m = -16; m <= 16; ++m) {
            const complexd fwd = p.coeff(n, m), bwd = p.coeff(-n, -m);
            CHECK(std::abs(fwd - std::conj(bwd)) < 1e-12);
            CHECK(std::abs(fwd) <= sup * (1 + 1e-12));
        }
}

TEST_CASE("fejer mean never overshoots the sup norm") {
    FejerOptions opt;
    opt.grid = 256;
    auto psi = [](double a, double b) {
        return complexd(std::abs(std::sin(a)) * std::abs(std::cos(b)), 0);
    };
    for (int R : {4, 16, 64}) {
        const TrigPoly2D p = fejer_mean(psi, R, opt);
        const Eigen::MatrixXcd vals = synthesize_grid(p, 512, opt);
        CHECK(vals.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    }
}

TEST_CASE("under-resolved grid is rejected") {
    FejerOptions opt;
    opt.grid = 32;
    CHECK_THROWS_AS(fejer_mean([](double, double) { return complexd(1, 0); }, 16, opt),
                    std::invalid_argument);
}

TEST_CASE("fft fast path matches the dense sums") {
    auto psi = [](double a, double b) {
        return complexd(std::abs(std::sin(a)), 0.2 * std::cos(2 * b));
    };
    FejerOptions dense;
    dense.grid = 128;
    FejerOptions fast = dense;
    fast.use_fft = true;
    const TrigPoly2D pd = fejer_mean(psi, 16, dense);
    const TrigPoly2D pf = fejer_mean(psi, 16, fast);
    CHECK((pd.coeffs - pf.coeffs).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXcd sd = synthesize_grid(pd, 256, dense);
    const Eigen::MatrixXcd sf = synthesize_grid(pd, 256, fast);
    CHECK((sd - sf).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("holder rate fits recover the kernel-moment exponents") {
    FejerOptions opt;
    opt.grid = 256;
    opt.use_fft = true;  // keep the unit test quick; equality with dense is tested above
    const std::vector<int> ladder = {8, 16, 32, 64};

    const RateFit lip = holder_rate_fit(
        [](double a, double) { return complexd(std::abs(std::sin(a)), 0); }, 1.0, ladder, 1.0, opt);
    CHECK(std::abs(lip.exponent() - (-1.0)) < 0.15);
    CHECK(lip.c0 <= 10.0);
    CHECK(lip.warning.empty());
    for (std::size_t i = 0; i < ladder.size(); ++i) CHECK(lip.sup_error[i] <= lip.bound[i] * (1 + 1e-12));

    const RateFit half = holder_rate_fit(
        [](double a, double) { return complexd(std::sqrt(std::abs(std::sin(a))), 0); }, 0.5, ladder,
        1.0, opt);
    CHECK(std::abs(half.exponent() - (-0.5)) < 0.15);
    CHECK(half.c0 <= 10.0);

    // smooth input: pure Cesaro truncation, raw slope -1
    const RateFit smooth = holder_rate_fit(
        [](double a, double b) { return complexd(std::cos(2 * a) + 0.5 * std::cos(2 * b), 0); }, 1.0,
        ladder, 3.0, opt);
    CHECK(std::abs(smooth.slope_raw - (-1.0)) < 0.15);

    CHECK_THROWS_AS(holder_rate_fit([](double, double) { return complexd(0, 0); }, 1.0, {8, 16},
                                    1.0, opt),
                    estimation_error);
    CHECK_THROWS_AS(holder_rate_fit([](double, double) { return complexd(0, 0); }, 1.0,
                                    {8, 12, 16, 24}, 1.0, opt),
                    estimation_error);
}
