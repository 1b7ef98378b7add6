#include "fuchsian/trigapprox.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fuchsian {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Eigen::MatrixXcd sample_grid(const std::function<complexd(double, double)>& psi, int G,
                             unsigned workers) {
    Eigen::MatrixXcd vals(G, G);
    parallel_for(static_cast<std::size_t>(G), workers, [&](std::size_t a) {
        const double th1 = kTwoPi * double(a) / G;
        for (int b = 0; b < G; ++b) vals(long(a), b) = psi(th1, kTwoPi * double(b) / G);
    });
    return vals;
}

// c(n, m) = (1/G^2) sum_{a,b} psi(th_a, th_b) e^{-i(n th_a + m th_b)}, |n|,|m| <= R
Eigen::MatrixXcd analyze_dense(const Eigen::MatrixXcd& vals, int R) {
    const int G = int(vals.rows());
    Eigen::MatrixXcd E(2 * R + 1, G);
    for (int n = -R; n <= R; ++n)
        for (int a = 0; a < G; ++a)
            E(R + n, a) = std::polar(1.0, -n * kTwoPi * double(a) / G);
    Eigen::MatrixXcd B = E * vals;                 // (2R+1) x G
    Eigen::MatrixXcd C = B * E.transpose();        // (2R+1) x (2R+1); E is symmetric in (m, b)
    return C / (double(G) * double(G));
}

Eigen::MatrixXcd analyze_fft(const Eigen::MatrixXcd& vals, int R) {
    const int G = int(vals.rows());
    std::vector<std::complex<double>> in(std::size_t(G) * G), out(std::size_t(G) * G);
    for (int a = 0; a < G; ++a)
        for (int b = 0; b < G; ++b) in[std::size_t(a) * G + b] = vals(a, b);
    fftw_plan plan = fftw_plan_dft_2d(G, G, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    Eigen::MatrixXcd C(2 * R + 1, 2 * R + 1);
    auto wrap = [G](int n) { return ((n % G) + G) % G; };
    for (int n = -R; n <= R; ++n)
        for (int m = -R; m <= R; ++m)
            C(R + n, R + m) = out[std::size_t(wrap(n)) * G + wrap(m)] / (double(G) * double(G));
    return C;
}

}  // namespace

double fejer_kernel(int R, double u) {
    if (R < 1) throw std::invalid_argument("fejer_kernel: R must be >= 1");
    double w = std::remainder(u, kTwoPi);
    const double s = std::sin(w / 2);
    if (std::abs(s) < 1e-8) {
        const double v = R * (1.0 - (double(R) * R - 1.0) * w * w / 12.0);
        return std::max(v, 0.0);
    }
    const double ratio = std::sin(R * w / 2) / s;
    return ratio * ratio / R;
}

complexd TrigPoly2D::eval(double theta1, double theta2) const {
    complexd sum = 0;
    for (int n = -R; n <= R; ++n) {
        complexd inner = 0;
        for (int m = -R; m <= R; ++m) inner += coeff(n, m) * std::polar(1.0, m * theta2);
        sum += inner * std::polar(1.0, n * theta1);
    }
    return sum;
}

TrigPoly2D fejer_mean(const std::function<complexd(double, double)>& psi, int R,
                      const FejerOptions& opts) {
    if (R < 1) throw std::invalid_argument("fejer_mean: R must be >= 1");
    if (opts.grid < 4 * R)
        throw std::invalid_argument("fejer_mean: grid resolution below 4R would alias");
    const Eigen::MatrixXcd vals = sample_grid(psi, opts.grid, opts.workers);
    Eigen::MatrixXcd C = opts.use_fft ? analyze_fft(vals, R) : analyze_dense(vals, R);
    // Cesaro weights of the square partial-sum average
    for (int n = -R; n <= R; ++n)
        for (int m = -R; m <= R; ++m)
            C(R + n, R + m) *= std::max(0.0, 1.0 - std::abs(n) / double(R)) *
                               std::max(0.0, 1.0 - std::abs(m) / double(R));
    TrigPoly2D poly;
    poly.R = R;
    poly.coeffs = std::move(C);
    double odd = 0, all = 0;
    for (int n = -R; n <= R; ++n)
        for (int m = -R; m <= R; ++m) {
            const double a = std::abs(poly.coeff(n, m));
            all = std::max(all, a);
            if (n % 2 != 0 || m % 2 != 0) odd = std::max(odd, a);
        }
    poly.even_only = odd <= 1e-12 * std::max(all, 1.0);
    return poly;
}

Eigen::MatrixXcd synthesize_grid(const TrigPoly2D& poly, int F, const FejerOptions& opts) {
    const int R = poly.R;
    if (F < 2 * R + 1) throw std::invalid_argument("synthesize_grid: grid too small for the degree");
    if (opts.use_fft) {
        std::vector<std::complex<double>> in(std::size_t(F) * F, 0.0), out(std::size_t(F) * F);
        auto wrap = [F](int n) { return ((n % F) + F) % F; };
        for (int n = -R; n <= R; ++n)
            for (int m = -R; m <= R; ++m)
                in[std::size_t(wrap(n)) * F + wrap(m)] += poly.coeff(n, m);
        fftw_plan plan = fftw_plan_dft_2d(F, F, reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()),
                                          FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
        Eigen::MatrixXcd S(F, F);
        for (int a = 0; a < F; ++a)
            for (int b = 0; b < F; ++b) S(a, b) = out[std::size_t(a) * F + b];
        return S;
    }
    Eigen::MatrixXcd E(2 * R + 1, F);
    for (int n = -R; n <= R; ++n)
        for (int a = 0; a < F; ++a)
            E(R + n, a) = std::polar(1.0, n * kTwoPi * double(a) / F);
    Eigen::MatrixXcd M = poly.coeffs * E;  // (2R+1) x F
    Eigen::MatrixXcd S(F, F);
    parallel_for_ranges(static_cast<std::size_t>(F), opts.workers, [&](std::size_t lo, std::size_t hi) {
        S.middleRows(long(lo), long(hi - lo)).noalias() =
            E.middleCols(long(lo), long(hi - lo)).transpose() * M;
    });
    return S;
}

RateFit holder_rate_fit(const std::function<complexd(double, double)>& psi, double alpha,
                        const std::vector<int>& R_ladder, double holder_constant,
                        const FejerOptions& opts) {
    if (R_ladder.size() < 3) throw estimation_error("holder_rate_fit: ladder too short");
    if (!std::is_sorted(R_ladder.begin(), R_ladder.end()))
        throw std::invalid_argument("holder_rate_fit: ladder must be ascending");
    if (R_ladder.back() < 8 * R_ladder.front())
        throw estimation_error("holder_rate_fit: ladder must span at least three octaves");
    const int R_max = R_ladder.back();
    FejerOptions o = opts;
    o.grid = std::max(opts.grid, 4 * R_max);
    const int F = 4 * o.grid;

    // one analysis at R_max; per-R Cesaro weights are applied on top of it
    const Eigen::MatrixXcd vals = sample_grid(psi, o.grid, o.workers);
    const Eigen::MatrixXcd C_full = o.use_fft ? analyze_fft(vals, R_max) : analyze_dense(vals, R_max);
    const Eigen::MatrixXcd fine = sample_grid(psi, F, o.workers);

    RateFit fit;
    fit.alpha = alpha;
    fit.R_ladder = R_ladder;
    for (int R : R_ladder) {
        TrigPoly2D poly;
        poly.R = R;
        poly.coeffs = Eigen::MatrixXcd::Zero(2 * R + 1, 2 * R + 1);
        for (int n = -R; n <= R; ++n)
            for (int m = -R; m <= R; ++m)
                poly.coeffs(R + n, R + m) = C_full(R_max + n, R_max + m) *
                                            std::max(0.0, 1.0 - std::abs(n) / double(R)) *
                                            std::max(0.0, 1.0 - std::abs(m) / double(R));
        const Eigen::MatrixXcd S = synthesize_grid(poly, F, o);
        double err = 0;
        for (int a = 0; a < F; ++a)
            for (int b = 0; b < F; ++b) err = std::max(err, std::abs(S(a, b) - fine(a, b)));
        fit.sup_error.push_back(err);
    }

    std::vector<double> lx, ly_raw, ly_adj;
    for (std::size_t i = 0; i < fit.R_ladder.size(); ++i) {
        if (fit.sup_error[i] < 1e-13) {
            fit.warning = "sup-error reached the floating-point floor; fit truncated";
            break;
        }
        lx.push_back(std::log(double(fit.R_ladder[i])));
        ly_raw.push_back(std::log(fit.sup_error[i]));
        ly_adj.push_back(std::log(fit.sup_error[i] / std::log(double(fit.R_ladder[i]))));
    }
    if (lx.size() < 3) throw estimation_error("holder_rate_fit: too few usable ladder points");
    fit.slope_raw = fit_line(lx, ly_raw).slope;
    fit.slope_log_adjusted = fit_line(lx, ly_adj).slope;

    fit.c0 = 0;
    for (std::size_t i = 0; i < fit.R_ladder.size(); ++i) {
        const double shape = std::pow(double(fit.R_ladder[i]), -alpha) * std::log(double(fit.R_ladder[i]));
        fit.c0 = std::max(fit.c0, fit.sup_error[i] / (holder_constant * shape));
    }
    for (int R : fit.R_ladder)
        fit.bound.push_back(holder_constant * fit.c0 * std::pow(double(R), -alpha) * std::log(double(R)));
    return fit;
}

}  // namespace fuchsian
