#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fuchsian/rep.hpp"

using namespace fuchsian;

namespace {

Mat2 random_word(std::mt19937_64& rng, int len) {
    const Mat2 g1{2, 1, 1, 1};
    const Mat2 g2{1, -1, -1, 2};
    std::uniform_int_distribution<int> pick(0, 3);
    Mat2 w = Mat2::identity();
    for (int i = 0; i < len; ++i) {
        switch (pick(rng)) {
            case 0: w = w * g1; break;
            case 1: w = w * g1.inverse(); break;
            case 2: w = w * g2; break;
            default: w = w * g2.inverse(); break;
        }
    }
    return w;
}

}  // namespace

TEST_CASE("irreducible building blocks") {
    const Irrep r0 = build_irrep(0);
    CHECK(r0.dim() == 1);
    CHECK(apply_irrep(r0, Mat2{2, 1, 1, 1})(0, 0) == doctest::Approx(1.0));

    const Irrep r1 = build_irrep(1);
    CHECK(r1.dim() == 2);
    CHECK(r1.weight_list == std::vector<int>{1, -1});

    const Irrep r2 = build_irrep(2);
    CHECK(r2.dim() == 3);
    // lowering normalizations c_0 = c_1 = sqrt(2) show up as basis scales
    // sqrt(binomial(2, i)) = 1, sqrt2, 1
    CHECK(r2.basis_scale[1] == doctest::Approx(std::sqrt(2.0)));

    CHECK_THROWS_AS(build_irrep(-1), std::invalid_argument);
    CHECK_THROWS_AS(build_rep({}), std::invalid_argument);
}

TEST_CASE("rep space shape and projector") {
    const RepSpace single = build_rep({1});
    CHECK(single.k == 1);
    CHECK(single.m == 1);
    CHECK(single.dimension == 2);
    const EndV P1 = single.projector_k();
    CHECK(P1(0, 0) == 1.0);
    CHECK(P1(0, 1) == 0.0);
    CHECK(P1(1, 0) == 0.0);
    CHECK(P1(1, 1) == 0.0);

    const RepSpace mix = build_rep({2, 1});
    CHECK(mix.k == 2);
    CHECK(mix.m == 1);
    CHECK(mix.dimension == 5);
    const EndV P = mix.projector_k();
    CHECK(P.diagonal().sum() == doctest::Approx(1.0));

    const RepSpace twin = build_rep({3, 3});
    CHECK(twin.k == 3);
    CHECK(twin.m == 2);
    const EndV Pt = twin.projector_k();
    // idempotent, symmetric, rank m
    CHECK(((Pt * Pt) - Pt).norm() == doctest::Approx(0.0));
    CHECK((Pt.transpose() - Pt).norm() == doctest::Approx(0.0));
    CHECK(Pt.diagonal().sum() == doctest::Approx(2.0));
}

TEST_CASE("apply pinned values") {
    const RepSpace r1 = build_rep({1});
    const RepSpace r2 = build_rep({2});

    CHECK((apply(r1, Mat2::identity()) - EndV::Identity(2, 2)).norm() == doctest::Approx(0.0));

    const EndV d = apply(r2, Mat2::diagonal_flow(1.0));
    CHECK(d(0, 0) == doctest::Approx(std::exp(1.0)));
    CHECK(d(1, 1) == doctest::Approx(1.0));
    CHECK(d(2, 2) == doctest::Approx(std::exp(-1.0)));
    CHECK(std::abs(d(0, 1)) + std::abs(d(1, 0)) + std::abs(d(0, 2)) == doctest::Approx(0.0));

    const double th = 0.71;
    const EndV k = apply(r1, Mat2::rotation(th));
    CHECK(k(0, 0) == doctest::Approx(std::cos(th)));
    CHECK(k(0, 1) == doctest::Approx(std::sin(th)));
    CHECK(k(1, 0) == doctest::Approx(-std::sin(th)));
    CHECK(k(1, 1) == doctest::Approx(std::cos(th)));
}

TEST_CASE("operator norm") {
    CHECK(op_norm(EndV::Identity(4, 4)) == doctest::Approx(1.0));
    const RepSpace r1 = build_rep({1});
    CHECK(op_norm(apply(r1, Mat2::diagonal_flow(2.0))) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    EndV diag = EndV::Zero(2, 2);
    diag(0, 0) = 3;
    diag(1, 1) = 0.5;
    CHECK(op_norm(diag) == doctest::Approx(3.0));
}

TEST_CASE("rho(-1) parity blocks") {
    const RepSpace odd = build_rep({1});
    CHECK((rho_minus_one(odd) + EndV::Identity(2, 2)).norm() == doctest::Approx(0.0));
    const RepSpace even = build_rep({2});
    CHECK((rho_minus_one(even) - EndV::Identity(3, 3)).norm() == doctest::Approx(0.0));
    const RepSpace mix = build_rep({2, 1});
    const EndV R = rho_minus_one(mix);
    for (int i = 0; i < 3; ++i) CHECK(R(i, i) == 1.0);
    for (int i = 3; i < 5; ++i) CHECK(R(i, i) == -1.0);
}

TEST_CASE("K-invariance of the standard inner product") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    for (const auto& weights : {std::vector<int>{1}, {2}, {3}, {2, 1}, {3, 3}}) {
        const RepSpace rep = build_rep(weights);
        for (int it = 0; it < 200; ++it) {
            const EndV K = apply(rep, Mat2::rotation(angle(rng)));
            CHECK((K.transpose() * K - EndV::Identity(rep.dimension, rep.dimension))
                      .cwiseAbs()
                      .maxCoeff() < 1e-9);
        }
    }
}

TEST_CASE("lie algebra matrices: adjointness, antisymmetry, derivative oracle") {
    for (const auto& weights : {std::vector<int>{1}, {2}, {4}, {2, 1}, {3, 3}}) {
        const RepSpace rep = build_rep(weights);
        const EndV E = lie_e(rep), F = lie_f(rep), H = lie_h(rep);
        CHECK((E.transpose() - F).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
        const EndV X = E - F;
        CHECK((X.transpose() + X).cwiseAbs().maxCoeff() < 1e-12);
        // bracket [E, F] = H in the standard basis
        CHECK((E * F - F * E - H).cwiseAbs().maxCoeff() < 1e-12);

        // independent oracle: central difference of the group action
        const double s = 1e-5;
        const EndV Ed = (apply(rep, Mat2{1, s, 0, 1}) - apply(rep, Mat2{1, -s, 0, 1})) / (2 * s);
        const EndV Fd = (apply(rep, Mat2{1, 0, s, 1}) - apply(rep, Mat2{1, 0, -s, 1})) / (2 * s);
        const EndV Hd = (apply(rep, Mat2{std::exp(s), 0, 0, std::exp(-s)}) -
                         apply(rep, Mat2{std::exp(-s), 0, 0, std::exp(s)})) /
                        (2 * s);
        CHECK((Ed - E).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((Fd - F).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((Hd - H).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("highest-weight norm law") {
    for (const auto& weights : {std::vector<int>{1}, {2}, {3}, {2, 1}}) {
        const RepSpace rep = build_rep(weights);
        for (double t : {0.1, 1.0, 5.0}) {
            const double expected = std::exp(rep.k * t / 2);
            const double got = op_norm(apply(rep, Mat2::diagonal_flow(t)));
            CHECK(std::abs(got - expected) < 1e-10 * expected);
        }
    }
}

TEST_CASE("second singular value gap") {
    // weight k-1 present: gap e^{-t/2}; absent: gap e^{-t}
    const RepSpace with_gap = build_rep({2, 1});
    const RepSpace without = build_rep({2});
    for (double t : {0.5, 1.0, 3.0, 6.0}) {
        {
            const EndV A = apply(with_gap, Mat2::diagonal_flow(t));
            const double diff = op_norm(EndV(A / op_norm(A) - with_gap.projector_k()));
            CHECK(diff <= std::exp(-t / 2) * (1 + 1e-9));
            CHECK(diff > std::exp(-t) * (1 + 1e-9));  // the k-1 weight really dominates
        }
        {
            const EndV A = apply(without, Mat2::diagonal_flow(t));
            const double diff = op_norm(EndV(A / op_norm(A) - without.projector_k()));
            CHECK(diff <= std::exp(-t) * (1 + 1e-9));
        }
    }
}

TEST_CASE("multiplicativity on random pairs") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len(0, 5);
    for (const auto& weights : {std::vector<int>{1}, {2}, {2, 1}}) {
        const RepSpace rep = build_rep(weights);
        for (int it = 0; it < 1000; ++it) {
            const Mat2 g = random_word(rng, len(rng)), h = random_word(rng, len(rng));
            const EndV lhs = apply(rep, g) * apply(rep, h);
            const EndV rhs = apply(rep, g * h);
            const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-8 * scale);
        }
    }
}

TEST_CASE("k = 0 degenerate rep is allowed and P_k is the identity") {
    const RepSpace trivial = build_rep({0, 0});
    CHECK(trivial.k == 0);
    CHECK(trivial.m == 2);
    CHECK((trivial.projector_k() - EndV::Identity(2, 2)).norm() == doctest::Approx(0.0));
}
