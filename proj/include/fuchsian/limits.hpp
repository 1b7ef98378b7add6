#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fuchsian/boundary.hpp"
#include "fuchsian/orbits.hpp"
#include "fuchsian/rep.hpp"

namespace fuchsian {

/// Test function on End(V) with declared metadata. The evaluator must vanish
/// beyond `support_radius` when that is finite; `sup_norm_ball` is
/// sup_{||x|| <= 1} |f(x)|; `holder` declares a Lip-alpha modulus when known.
struct TestFunction {
    std::function<complexd(const EndV&)> evaluator;
    double support_radius = std::numeric_limits<double>::infinity();
    double sup_norm = std::numeric_limits<double>::quiet_NaN();
    double sup_norm_ball = std::numeric_limits<double>::quiet_NaN();
    struct Holder {
        double alpha = 1;
        double constant = 1;
    };
    std::optional<Holder> holder;
    std::string name;

    complexd operator()(const EndV& x) const { return evaluator(x); }
};

/// Everything needed to evaluate the explicit limit integral
///   (delta / 2k) c int f(rho(k1) t P_k rho(k2)) t^{2 delta / k - 1}
///                         dmu(k1) dt dmu(k2)
/// with atoms of the lifted measure in both angle slots and the radial
/// weight handled exactly by the substitution u = t^{2 delta / k}.
/// `mass_constant` is the empirical c_Gamma = |Gamma_T| / T^{2 delta / k}
/// standing in for the global constant; the closed-form v_gamma(delta) is
/// reported alongside but the acceptance comparisons are self-normalized.
struct LimitSpec {
    BoundaryMeasure mu;
    double delta = 1.0;
    RepSpace rep;
    double mass_constant = 1.0;
    double radial_max = 1.0;  // [0,1] for norm-ball-normalized sums, [0,R] for compact support
};

/// Per-T comparison of empirical averages against the limit value.
struct ComparisonReport {
    std::vector<double> T_ladder;
    std::vector<complexd> empirical;
    complexd limit_value = 0;
    bool self_normalized = false;
    std::vector<double> rel_error;
    double mass_constant = 0;
    double delta = 0;
    int k = 1;
};

/// 2 sqrt(pi) Gamma(delta - 1/2) / Gamma(delta + 1); finite for delta > 1/2.
double v_gamma(double delta);

/// x -> (f(x) + f(rho(-1) x)) / 2; exactly invariant under rho(-1).
TestFunction symmetrize(const TestFunction& f, const RepSpace& rep);

/// (1 / T^{2 delta / k}) sum of f(rho(gamma)/T) over Gamma_T (normalized mode)
/// or over all of Gamma within the support cone (unnormalized mode, requires
/// compact support and orbit coverage T * support_radius). Terms are summed
/// sequentially in the orbit's canonical order, so +-pairs cancel exactly and
/// annulus-partitioned evaluation is bit-identical.
complexd empirical_avg(const OrbitSet& orbit, const RepSpace& rep, const TestFunction& f,
                       double T, bool normalized, double delta);

/// Same value computed cell by cell over an annuli partition (one running
/// accumulator in the same element order); per_cell receives each cell's own
/// sub-sum when non-null.
complexd empirical_avg_partitioned(const OrbitSet& orbit, const RepSpace& rep,
                                   const TestFunction& f, double T, double delta,
                                   const AnnuliPartition& part,
                                   std::vector<complexd>* per_cell = nullptr);

/// The explicit limit integral with `nodes` Gauss-Legendre points in the
/// substituted radial variable.
complexd limit_integral(const LimitSpec& spec, const TestFunction& f, int nodes);

/// sum over one representative per +-pair of e^{2 i n theta1 + 2 i m theta2}
/// over |gamma| <= T (the |.| = e^{t/2} scale).
complexd sector_sum(const OrbitSet& orbit, int n, int m, double T);

/// Distribution of the top-left entry over Gamma_T for the standard
/// representation: empirical (1/|Gamma_T|) sum f(a/T) against the
/// self-normalized limit integral of f(t cos theta1 cos theta2).
ComparisonReport marginal_a_distribution(const OrbitSet& orbit, const std::vector<double>& T_ladder,
                                         const std::function<double(double)>& f,
                                         const BoundaryMeasure& mu, double delta, int nodes);

/// Radially scalable built-in sets: norm balls and cone sectors
/// {rho(k1) t P_k rho(k2) : t <= radius, theta_i in the windows}.
struct ScalableSet {
    enum class Kind { NormBall, ConeSector };
    Kind kind = Kind::NormBall;
    double radius = 1.0;
    double theta1_lo = 0, theta1_hi = 0;  // sector windows, mod pi
    double theta2_lo = 0, theta2_hi = 0;
};

/// Returns (limit measure of scale*E, scale^{2 delta / k} * limit measure of E);
/// the two agree within quadrature tolerance by homogeneity.
std::pair<double, double> homogeneity_check(const LimitSpec& spec, const ScalableSet& E,
                                            double scale, int nodes);

/// Measure of E under the limit integral (indicator integrand; the radial
/// integrand of these sets is piecewise constant in the substituted variable,
/// evaluated on its own radial domain so the quadrature is exact).
double limit_measure_of_set(const LimitSpec& spec, const ScalableSet& E, int nodes);

/// Matrix-entry monomials of degree <= 2, a smooth radial bump, and a
/// mollified ball indicator (Lip-1), with declared norms.
std::vector<TestFunction> standard_test_suite(const RepSpace& rep);

}  // namespace fuchsian
