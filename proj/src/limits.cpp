#include "fuchsian/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fuchsian/quadrature.hpp"

namespace fuchsian {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double theta) {
    double t = std::fmod(theta, kPi);
    if (t < 0) t += kPi;
    return t;
}

bool in_window(double theta, double lo, double hi) {
    const double t = wrap_pi(theta), a = wrap_pi(lo), b = wrap_pi(hi);
    return a <= b ? (t >= a && t <= b) : (t >= a || t <= b);
}

// precomputed rho(k_theta) per lifted atom; the integral runs over the full
// lifted list (mass 2 in each slot), matching the count normalization
struct AtomTables {
    std::vector<double> theta;
    std::vector<double> weight;
    std::vector<EndV> rot;  // rho(k_theta)
};

AtomTables atom_tables(const BoundaryMeasure& mu, const RepSpace& rep) {
    AtomTables t;
    t.theta.reserve(mu.atoms.size());
    for (const auto& a : mu.atoms) {
        t.theta.push_back(a.theta);
        t.weight.push_back(a.weight);
        t.rot.push_back(apply(rep, Mat2::rotation(a.theta)));
    }
    return t;
}

}  // namespace

double v_gamma(double delta) {
    if (!(delta > 0.5 + 1e-6))
        throw std::domain_error("v_gamma: pole at delta = 1/2; need delta > 1/2");
    return 2 * std::sqrt(kPi) * std::tgamma(delta - 0.5) / std::tgamma(delta + 1);
}

TestFunction symmetrize(const TestFunction& f, const RepSpace& rep) {
    TestFunction g = f;
    const EndV R = rep.minus_one();
    auto base = f.evaluator;
    g.evaluator = [base, R](const EndV& x) { return (base(x) + base(R * x)) / 2.0; };
    g.name = f.name.empty() ? "symmetrized" : f.name + " (symmetrized)";
    return g;
}

complexd empirical_avg(const OrbitSet& orbit, const RepSpace& rep, const TestFunction& f,
                       double T, bool normalized, double delta) {
    if (!(T > 0)) throw std::invalid_argument("empirical_avg: T must be positive");
    double reach = T;
    if (!normalized) {
        if (!std::isfinite(f.support_radius))
            throw std::invalid_argument(
                "empirical_avg: unnormalized mode needs a compactly supported test function");
        reach = T * f.support_radius;
    }
    if (orbit.T + 1e-9 * orbit.T < reach)
        throw coverage_error("empirical_avg: orbit cutoff " + std::to_string(orbit.T) +
                             " does not cover required " + std::to_string(reach));
    const std::size_t count = orbit.count_norm_le(std::min(reach, orbit.T));
    complexd sum = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const EndV m = apply(rep, orbit.elements[i].mat) / T;
        sum += f(m);
    }
    return sum / std::pow(T, 2 * delta / rep.k);
}

complexd empirical_avg_partitioned(const OrbitSet& orbit, const RepSpace& rep,
                                   const TestFunction& f, double T, double delta,
                                   const AnnuliPartition& part,
                                   std::vector<complexd>* per_cell) {
    if (std::abs(part.T - T) > 0)
        throw std::invalid_argument("empirical_avg_partitioned: partition was built for a different T");
    if (per_cell) per_cell->assign(part.cells.size(), complexd(0));
    complexd sum = 0;  // single running accumulator: bit-identical to the direct sum
    for (std::size_t j = 0; j < part.cells.size(); ++j) {
        complexd cell = 0;
        for (std::size_t i = part.cells[j].first; i < part.cells[j].second; ++i) {
            const complexd term = f(EndV(apply(rep, orbit.elements[i].mat) / T));
            sum += term;
            cell += term;
        }
        if (per_cell) (*per_cell)[j] = cell;
    }
    return sum / std::pow(T, 2 * delta / rep.k);
}

complexd limit_integral(const LimitSpec& spec, const TestFunction& f, int nodes) {
    if (spec.rep.k < 1) throw std::domain_error("limit_integral: k must be >= 1");
    if (nodes < 1) throw std::invalid_argument("limit_integral: need at least one node");
    const double q = 2 * spec.delta / spec.rep.k;
    // u = t^q turns the weight t^{q-1} dt into du / q; the leading delta/2k
    // times 1/q leaves mass_constant / 4.
    const double u_hi = std::pow(spec.radial_max, q);
    const GaussLegendre rule = gauss_legendre_on(nodes, 0.0, u_hi);
    std::vector<double> tval(nodes);
    for (int i = 0; i < nodes; ++i) tval[i] = std::pow(rule.nodes[i], 1.0 / q);

    const AtomTables at = atom_tables(spec.mu, spec.rep);
    const EndV P = spec.rep.projector_k();
    complexd total = 0;
    EndV core(spec.rep.dimension, spec.rep.dimension);
    for (std::size_t i = 0; i < at.theta.size(); ++i) {
        const EndV left = at.rot[i] * P;
        for (std::size_t j = 0; j < at.theta.size(); ++j) {
            core = left * at.rot[j];
            const double w = at.weight[i] * at.weight[j];
            complexd radial = 0;
            for (int qn = 0; qn < nodes; ++qn)
                radial += rule.weights[qn] * f(EndV(tval[qn] * core));
            total += w * radial;
        }
    }
    return total * (spec.mass_constant / 4.0);
}

complexd sector_sum(const OrbitSet& orbit, int n, int m, double T) {
    const double covered = std::pow(orbit.T, 1.0 / orbit.rep_k);
    if (covered * (1 + 1e-9) < T)
        throw coverage_error("sector_sum: orbit covers |gamma| <= " + std::to_string(covered) +
                             " < requested " + std::to_string(T));
    const std::size_t count = orbit.count_gamma_abs_le(T);
    const std::size_t step = orbit.paired ? 2 : 1;
    complexd sum = 0;
    for (std::size_t i = 0; i < count; i += step) {
        const auto& c = orbit.elements[i].cartan;
        sum += std::polar(1.0, 2.0 * (n * c.theta1 + m * c.theta2));
    }
    return sum;
}

ComparisonReport marginal_a_distribution(const OrbitSet& orbit, const std::vector<double>& T_ladder,
                                         const std::function<double(double)>& f,
                                         const BoundaryMeasure& mu, double delta, int nodes) {
    if (orbit.rep_k != 1)
        throw std::invalid_argument("marginal_a_distribution: needs the standard representation (k = 1)");
    ComparisonReport rep;
    rep.T_ladder = T_ladder;
    rep.self_normalized = true;
    rep.delta = delta;
    rep.k = 1;

    // theory side: int f(t cos th1 cos th2) t^{2 delta - 1} dmu dmu dt over
    // [0,1], self-normalized by the f == 1 value
    const double q = 2 * delta;
    const GaussLegendre rule = gauss_legendre_on(nodes, 0.0, 1.0);
    std::vector<double> tval(nodes);
    for (int i = 0; i < nodes; ++i) tval[i] = std::pow(rule.nodes[i], 1.0 / q);
    double numer = 0, denom = 0;
    for (const auto& ai : mu.atoms) {
        const double c1 = std::cos(ai.theta);
        for (const auto& aj : mu.atoms) {
            const double c12 = c1 * std::cos(aj.theta), w = ai.weight * aj.weight;
            for (int qn = 0; qn < nodes; ++qn) {
                numer += w * rule.weights[qn] * f(tval[qn] * c12);
                denom += w * rule.weights[qn];
            }
        }
    }
    rep.limit_value = numer / denom;

    for (double T : T_ladder) {
        if (orbit.T * (1 + 1e-9) < T)
            throw coverage_error("marginal_a_distribution: orbit does not cover T");
        const std::size_t count = orbit.count_norm_le(T);
        if (count == 0) throw coverage_error("marginal_a_distribution: empty ball");
        double sum = 0;
        for (std::size_t i = 0; i < count; ++i) sum += f(orbit.elements[i].mat.a / T);
        const complexd emp = sum / double(count);
        rep.empirical.push_back(emp);
        rep.rel_error.push_back(std::abs(emp - rep.limit_value) /
                                std::max(std::abs(rep.limit_value), 1e-12));
    }
    rep.mass_constant = double(orbit.count_norm_le(orbit.T)) / std::pow(orbit.T, 2 * delta);
    return rep;
}

double limit_measure_of_set(const LimitSpec& spec, const ScalableSet& E, int nodes) {
    // the indicator factorizes: radial part chi_{t <= radius} handled by the
    // radial domain, angular part an exact double sum over atoms
    const double q = 2 * spec.delta / spec.rep.k;
    const double rmax = std::min(E.radius, spec.radial_max);
    if (rmax <= 0) return 0;
    const double u_hi = std::pow(rmax, q);
    const GaussLegendre rule = gauss_legendre_on(nodes, 0.0, u_hi);
    double radial = 0;
    for (int i = 0; i < nodes; ++i) radial += rule.weights[i];

    double angular = 0;
    for (const auto& ai : spec.mu.atoms) {
        for (const auto& aj : spec.mu.atoms) {
            bool inside = true;
            if (E.kind == ScalableSet::Kind::ConeSector)
                inside = in_window(ai.theta, E.theta1_lo, E.theta1_hi) &&
                         in_window(aj.theta, E.theta2_lo, E.theta2_hi);
            if (inside) angular += ai.weight * aj.weight;
        }
    }
    return (spec.mass_constant / 4.0) * angular * radial;
}

std::pair<double, double> homogeneity_check(const LimitSpec& spec, const ScalableSet& E,
                                            double scale, int nodes) {
    if (!(scale > 0)) throw std::invalid_argument("homogeneity_check: scale must be positive");
    const double power = std::pow(scale, 2 * spec.delta / spec.rep.k);
    if (E.kind == ScalableSet::Kind::NormBall) {
        // run the ball indicators through the generic integral; each side uses
        // its own radial domain so the integrand is constant at the nodes
        TestFunction ind;
        const double R = E.radius;
        ind.evaluator = [R](const EndV& x) {
            return complexd(op_norm(x) <= R * (1 + 1e-12) ? 1.0 : 0.0, 0.0);
        };
        ind.support_radius = R;
        ind.sup_norm = ind.sup_norm_ball = 1.0;
        ind.name = "ball indicator";
        TestFunction ind_scaled;
        ind_scaled.evaluator = [R, scale](const EndV& x) {
            return complexd(op_norm(x) <= scale * R * (1 + 1e-12) ? 1.0 : 0.0, 0.0);
        };
        ind_scaled.support_radius = scale * R;
        ind_scaled.sup_norm = ind_scaled.sup_norm_ball = 1.0;
        ind_scaled.name = "scaled ball indicator";
        LimitSpec lhs_spec = spec;
        lhs_spec.radial_max = scale * R;
        LimitSpec rhs_spec = spec;
        rhs_spec.radial_max = R;
        const double lhs = limit_integral(lhs_spec, ind_scaled, nodes).real();
        const double rhs = power * limit_integral(rhs_spec, ind, nodes).real();
        return {lhs, rhs};
    }
    ScalableSet scaled = E;
    scaled.radius = E.radius * scale;
    LimitSpec wide = spec;
    wide.radial_max = std::max(spec.radial_max, scaled.radius);
    const double lhs = limit_measure_of_set(wide, scaled, nodes);
    const double rhs = power * limit_measure_of_set(wide, E, nodes);
    return {lhs, rhs};
}

std::vector<TestFunction> standard_test_suite(const RepSpace& rep) {
    std::vector<TestFunction> suite;
    const int dim = rep.dimension;

    auto entry = [](int i, int j, const std::string& name) {
        TestFunction f;
        f.evaluator = [i, j](const EndV& x) { return complexd(x(i, j), 0.0); };
        f.sup_norm = std::numeric_limits<double>::infinity();
        f.sup_norm_ball = 1.0;
        f.holder = TestFunction::Holder{1.0, 1.0};
        f.name = name;
        return f;
    };
    suite.push_back(entry(0, 0, "x11"));
    if (dim > 1) suite.push_back(entry(0, 1, "x12"));

    {
        TestFunction f;
        f.evaluator = [](const EndV& x) { return complexd(x(0, 0) * x(0, 0), 0.0); };
        f.sup_norm = std::numeric_limits<double>::infinity();
        f.sup_norm_ball = 1.0;
        f.holder = TestFunction::Holder{1.0, 2.0};
        f.name = "x11^2";
        suite.push_back(f);
    }
    {
        // smooth bump exp(1 - 1/(1 - ||x||^2)) inside the unit ball
        TestFunction f;
        f.evaluator = [](const EndV& x) {
            const double n = op_norm(x);
            if (n >= 1.0) return complexd(0.0, 0.0);
            return complexd(std::exp(1.0 - 1.0 / (1.0 - n * n)), 0.0);
        };
        f.support_radius = 1.0;
        f.sup_norm = 1.0;
        f.sup_norm_ball = 1.0;
        f.holder = TestFunction::Holder{1.0, 3.0};
        f.name = "radial bump";
        suite.push_back(f);
    }
    {
        // mollified indicator of the unit ball, Lipschitz with constant 1/0.1
        TestFunction f;
        const double eps = 0.1;
        f.evaluator = [eps](const EndV& x) {
            const double n = op_norm(x);
            return complexd(std::clamp((1.0 - n) / eps, 0.0, 1.0), 0.0);
        };
        f.support_radius = 1.0;
        f.sup_norm = 1.0;
        f.sup_norm_ball = 1.0;
        f.holder = TestFunction::Holder{1.0, 1.0 / eps};
        f.name = "mollified ball";
        suite.push_back(f);
    }
    {
        // plain unit-ball count: the self-normalizer itself
        TestFunction f;
        f.evaluator = [](const EndV& x) {
            return complexd(op_norm(x) <= 1.0 + 1e-12 ? 1.0 : 0.0, 0.0);
        };
        f.support_radius = 1.0;
        f.sup_norm = 1.0;
        f.sup_norm_ball = 1.0;
        f.name = "ball count";
        suite.push_back(f);
    }
    return suite;
}

}  // namespace fuchsian
