#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fuchsian/boundary.hpp"

using namespace fuchsian;

namespace {
constexpr double kPi = std::numbers::pi;

// integral of e^{i q theta} against the full lifted atom list
complexd lifted_moment(const BoundaryMeasure& mu, int q) {
    complexd s = 0;
    for (const auto& a : mu.atoms) s += a.weight * std::polar(1.0, q * a.theta);
    return s;
}
}  // namespace

TEST_CASE("lebesgue measure: exact fourier zeros and mass") {
    const BoundaryMeasure mu = BoundaryMeasure::lebesgue(64);
    CHECK(mu.total_mass == doctest::Approx(2.0));
    CHECK(mu.lifted);
    CHECK(fourier_coeff(mu, 0).real() == doctest::Approx(1.0));
    for (int n = 1; n <= 8; ++n) {
        CHECK(std::abs(fourier_coeff(mu, n)) < 1e-13);
        CHECK(std::abs(fourier_coeff(mu, -n)) < 1e-13);
    }
}

TEST_CASE("dirac atom evaluation") {
    const BoundaryMeasure mu = BoundaryMeasure::dirac(kPi / 4);
    const complexd c = fourier_coeff(mu, 1);
    CHECK(c.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.imag() == doctest::Approx(1.0));  // e^{i pi / 2}
    // conjugate symmetry
    const complexd cm = fourier_coeff(mu, -1);
    CHECK(cm.real() == doctest::Approx(c.real()));
    CHECK(cm.imag() == doctest::Approx(-c.imag()));
}

TEST_CASE("symmetric lift identities") {
    const OrbitSet orbit = enumerate_orbit(GroupSpec::schottky_fixture(), build_rep({1}), 3000.0);
    const BoundaryMeasure mu = ps_estimate(orbit, 0.6, PsMode::PattersonLimit);
    CHECK(mu.normalized);
    CHECK(fourier_coeff(mu, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    for (int n = 1; n <= 6; ++n) {
        // lifted integral of e^{2 i n theta} doubles the half-measure coefficient
        const complexd full = lifted_moment(mu, 2 * n);
        const complexd half = fourier_coeff(mu, n);
        CHECK(std::abs(full - 2.0 * half) < 1e-12);
        // odd frequencies vanish by the theta -> theta + pi symmetry
        CHECK(std::abs(lifted_moment(mu, 2 * n - 1)) < 1e-12);
    }
}

TEST_CASE("patterson estimator on the modular group approaches lebesgue") {
    const OrbitSet orbit = enumerate_orbit(GroupSpec::sl2z(), build_rep({1}), 300.0);
    const BoundaryMeasure emp = ps_estimate(orbit, 1.0, PsMode::EmpiricalAngular);
    CHECK(fourier_coeff(emp, 0).real() == doctest::Approx(1.0));
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(fourier_coeff(emp, n)) < 0.02);

    PsOptions popt;
    popt.delta_hint = 1.0;
    const BoundaryMeasure pat = ps_estimate(orbit, 1.05, PsMode::PattersonLimit, popt);
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(fourier_coeff(pat, n)) < 0.08);
    CHECK(pat.warning.empty());
    const BoundaryMeasure div = ps_estimate(orbit, 0.95, PsMode::PattersonLimit, popt);
    CHECK(!div.warning.empty());  // s <= delta flagged, truncated sum still returned
}

TEST_CASE("degenerate orbit falls back to a flagged dirac") {
    const OrbitSet tiny = enumerate_orbit(GroupSpec::sl2z(), build_rep({1}), 1.0);
    CHECK(tiny.elements.size() == 4);  // +-I, +-rotation
    const BoundaryMeasure mu = ps_estimate(tiny, 1.1, PsMode::PattersonLimit);
    CHECK(mu.degenerate);
    CHECK(fourier_coeff(mu, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("schottky measure: concentration and estimator cross-check") {
    const OrbitSet orbit = enumerate_orbit(GroupSpec::schottky_fixture(), build_rep({1}), 30000.0);
    const double delta = 0.545;
    PsOptions popt;
    popt.delta_hint = delta;
    const BoundaryMeasure pat = ps_estimate(orbit, delta + 0.025, PsMode::PattersonLimit, popt);
    const BoundaryMeasure emp = ps_estimate(orbit, 0.0, PsMode::EmpiricalAngular, popt);
    // the two estimators see the same limit measure
    for (int n = 1; n <= 3; ++n)
        CHECK(std::abs(fourier_coeff(pat, n) - fourier_coeff(emp, n)) < 0.1);
    // mass concentrates away from uniform: the second coefficient is large
    CHECK(std::abs(fourier_coeff(emp, 2)) > 0.2);
}

TEST_CASE("stability across the s ladder") {
    const OrbitSet orbit = enumerate_orbit(GroupSpec::schottky_fixture(), build_rep({1}), 30000.0);
    const double delta = 0.545;
    const BoundaryMeasure a = ps_estimate(orbit, delta + 0.05, PsMode::PattersonLimit);
    const BoundaryMeasure b = ps_estimate(orbit, delta + 0.025, PsMode::PattersonLimit);
    for (int n = -8; n <= 8; ++n)
        CHECK(std::abs(fourier_coeff(a, n) - fourier_coeff(b, n)) < 0.05);
}

TEST_CASE("phi0 pinned values and the harmonic-extension oracle") {
    const BoundaryMeasure leb = BoundaryMeasure::lebesgue(256);
    // kernel is 1 at the origin regardless of the measure
    CHECK(phi0(leb, 0.0, 0.3, 1.0) == doctest::Approx(1.0));
    CHECK(phi0(BoundaryMeasure::dirac(1.0), 0.0, 0.0, 1.0) == doctest::Approx(1.0));
    // harmonic extension of the constant stays 1 (midpoint rule on a smooth
    // periodic integrand is effectively exact)
    for (double r : {0.2, 0.5, 0.8}) {
        for (double th : {0.0, 0.7, 2.9}) {
            CHECK(phi0(leb, r, th, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    // dirac at 0, delta = 1: (1 - r^2) / |r - 1|^2 at theta = 0
    CHECK(phi0(BoundaryMeasure::dirac(0.0), 0.5, 0.0, 1.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(phi0(leb, 1.0, 0.0, 1.0), std::domain_error);
    // strictly positive away from delta = 1 too
    CHECK(phi0(leb, 0.6, 1.2, 0.7) > 0.0);
}

TEST_CASE("binned histogram keeps mass and low harmonics") {
    const OrbitSet orbit = enumerate_orbit(GroupSpec::schottky_fixture(), build_rep({1}), 10000.0);
    const BoundaryMeasure mu = ps_estimate(orbit, 0.6, PsMode::PattersonLimit);
    const BoundaryMeasure hist = binned(mu, 512);
    CHECK(hist.atoms.size() <= 1024);
    CHECK(fourier_coeff(hist, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 1; n <= 8; ++n) {
        // harmonic n moves by at most 2n * (half bin width) under pooling
        const double tol = 2 * n * (std::numbers::pi / 512 / 2) + 1e-12;
        CHECK(std::abs(fourier_coeff(hist, n) - fourier_coeff(mu, n)) < tol);
    }
    // lifted symmetry survives pooling
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(lifted_moment(hist, 2 * n - 1)) < 1e-12);
}

TEST_CASE("csv dumps") {
    const BoundaryMeasure mu = BoundaryMeasure::lebesgue(4);
    const std::string mcsv = measure_to_csv(mu);
    CHECK(mcsv.rfind("theta,weight\n", 0) == 0);
    CHECK(std::count(mcsv.begin(), mcsv.end(), '\n') == 9);  // header + 8 lifted atoms
    const std::string fcsv = fourier_table_csv(mu, 3);
    CHECK(fcsv.rfind("n,re,im\n", 0) == 0);
    CHECK(std::count(fcsv.begin(), fcsv.end(), '\n') == 8);  // header + n in [-3, 3]
}
