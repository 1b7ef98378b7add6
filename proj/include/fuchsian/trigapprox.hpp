#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "fuchsian/util.hpp"

namespace fuchsian {

/// Fejer kernel F_R(u) = (1/R) (sin(Ru/2) / sin(u/2))^2, the removable
/// singularity handled by its Taylor expansion. Mean value 1 over the period
/// under the 1/(2pi) normalization; F_R(0) = R.
double fejer_kernel(int R, double u);

/// Trigonometric polynomial sum c(n,m) e^{i(n theta1 + m theta2)}, |n|,|m| <= R.
struct TrigPoly2D {
    int R = 0;
    Eigen::MatrixXcd coeffs;  // (2R+1) x (2R+1), index (R+n, R+m)
    bool even_only = false;   // only even frequencies present (pi-symmetric source)

    complexd coeff(int n, int m) const { return coeffs(R + n, R + m); }
    complexd eval(double theta1, double theta2) const;
};

struct FejerOptions {
    int grid = 512;        // analysis grid per axis; must be >= 4R
    bool use_fft = false;  // FFT fast path; identical to the dense sums to 1e-10
    unsigned workers = 1;
};

/// R-th Fejer mean of psi: discrete Fourier analysis on the periodic grid,
/// then Cesaro weights (1 - |n|/R)(1 - |m|/R). Throws on an under-resolved
/// grid (aliasing).
TrigPoly2D fejer_mean(const std::function<complexd(double, double)>& psi, int R,
                      const FejerOptions& opts = {});

/// Values of the polynomial on the uniform F x F grid (dense synthesis or FFT).
Eigen::MatrixXcd synthesize_grid(const TrigPoly2D& poly, int F, const FejerOptions& opts = {});

/// Sup-error decay of Fejer means over an R ladder, measured on a grid 4x
/// finer than the analysis grid. slope_raw fits log(err) against log(R);
/// slope_log_adjusted fits log(err / log R). The kernel moment carries a log
/// factor only at alpha = 1, so exponent() adjusts for it exactly there.
struct RateFit {
    std::vector<int> R_ladder;
    std::vector<double> sup_error;
    std::vector<double> bound;  // fitted c_psi C0 R^{-alpha} log R envelope
    double alpha = 1;
    double c0 = 0;              // fitted envelope constant
    double slope_raw = 0;
    double slope_log_adjusted = 0;
    std::string warning;

    double exponent() const { return alpha == 1.0 ? slope_log_adjusted : slope_raw; }
};

RateFit holder_rate_fit(const std::function<complexd(double, double)>& psi, double alpha,
                        const std::vector<int>& R_ladder, double holder_constant = 1.0,
                        const FejerOptions& opts = {});

}  // namespace fuchsian
