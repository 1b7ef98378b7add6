#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fuchsian/orbits.hpp"
#include "fuchsian/util.hpp"

namespace fuchsian {

/// Weighted atoms on [0, 2pi) standing in for the Patterson-Sullivan measure
/// on the boundary circle, in the angle convention where k_theta rotates the
/// hyperbolic plane by 2 theta. A lifted measure is symmetric under
/// theta -> theta + pi; when `normalized`, the mass on [0, pi) is 1 (so the
/// lifted total is 2, matching the lattice convention where the measure is
/// Lebesgue with total mass 2).
struct BoundaryMeasure {
    enum class Provenance { PattersonLimit, EmpiricalAngular, Lebesgue, Synthetic };
    struct Atom {
        double theta = 0;
        double weight = 0;
    };

    std::vector<Atom> atoms;
    double total_mass = 0;
    bool normalized = false;
    bool lifted = false;
    bool degenerate = false;
    Provenance provenance = Provenance::Synthetic;
    std::string warning;

    /// Uniform atoms: `per_half` midpoints on [0, pi), weight 1/per_half each,
    /// lifted symmetrically. Fourier coefficients vanish exactly for
    /// 0 < |n| < per_half.
    static BoundaryMeasure lebesgue(int per_half);
    /// Unit atom at theta (folded to [0, pi)), lifted.
    static BoundaryMeasure dirac(double theta);
};

struct PsOptions {
    /// Elements with t below this are dropped: points that close to the base
    /// point have no meaningful boundary direction and dominate the truncated
    /// sum's bias. Ignored when it would leave the measure empty.
    double core_t = 2.0;
    /// empirical-angular keeps the outermost decade: |gamma| > max/decade.
    double decade = 10.0;
    /// When finite, s <= delta_hint in patterson-limit mode sets a divergence warning.
    double delta_hint = std::numeric_limits<double>::quiet_NaN();
};

enum class PsMode { PattersonLimit, EmpiricalAngular };

/// Boundary measure from orbit data: atoms at theta1(gamma) folded to [0, pi),
/// weighted e^{-s t(gamma)} (patterson-limit) or uniformly over the outermost
/// norm decade (empirical-angular); normalized to mass 1 on [0, pi) and lifted.
BoundaryMeasure ps_estimate(const OrbitSet& orbit, double s, PsMode mode,
                            const PsOptions& opts = {});

/// mu_hat(2n) = sum over atoms in [0, pi) of w e^{2 i n theta}.
complexd fourier_coeff(const BoundaryMeasure& mu, int n);

/// Histogram form: atom weights pooled onto `bins` uniform midpoints per
/// half-period, then lifted. Fourier coefficients stay exact; this form is
/// for plotting and for quadratures that are quadratic in the atom count.
BoundaryMeasure binned(const BoundaryMeasure& mu, int bins);

/// Base eigenfunction: weighted Poisson-kernel powers
/// sum_alpha w ((1 - r^2) / |r e^{2 i theta} - e^{2 i alpha}|^2)^delta
/// over the atoms in [0, pi). Requires 0 <= r < 1.
double phi0(const BoundaryMeasure& mu, double r, double theta, double delta);

/// CSV dump `theta,weight`.
std::string measure_to_csv(const BoundaryMeasure& mu);
/// CSV table `n,re,im` of mu_hat(2n) for |n| <= n_max.
std::string fourier_table_csv(const BoundaryMeasure& mu, int n_max);

}  // namespace fuchsian
