#include "fuchsian/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fuchsian {

namespace {

constexpr double kPi = std::numbers::pi;

double fold_half(double theta) {
    double t = std::fmod(theta, kPi);
    if (t < 0) t += kPi;
    return t;
}

// normalize weights to mass 1 on [0, pi), then add the +pi copies
void normalize_and_lift(BoundaryMeasure& mu) {
    double mass = 0;
    for (const auto& a : mu.atoms) mass += a.weight;
    if (mass <= 0) {
        mu.degenerate = true;
        mu.warning = "empty or zero-mass measure";
        return;
    }
    for (auto& a : mu.atoms) a.weight /= mass;
    const std::size_t half = mu.atoms.size();
    mu.atoms.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i)
        mu.atoms.push_back({mu.atoms[i].theta + kPi, mu.atoms[i].weight});
    mu.total_mass = 2.0;
    mu.normalized = true;
    mu.lifted = true;
}

}  // namespace

BoundaryMeasure BoundaryMeasure::lebesgue(int per_half) {
    if (per_half < 1) throw std::invalid_argument("lebesgue: need at least one atom");
    BoundaryMeasure mu;
    mu.provenance = Provenance::Lebesgue;
    mu.atoms.reserve(per_half);
    for (int i = 0; i < per_half; ++i)
        mu.atoms.push_back({(i + 0.5) * kPi / per_half, 1.0 / per_half});
    normalize_and_lift(mu);
    return mu;
}

BoundaryMeasure BoundaryMeasure::dirac(double theta) {
    BoundaryMeasure mu;
    mu.provenance = Provenance::Synthetic;
    mu.atoms.push_back({fold_half(theta), 1.0});
    normalize_and_lift(mu);
    return mu;
}

BoundaryMeasure ps_estimate(const OrbitSet& orbit, double s, PsMode mode,
                            const PsOptions& opts) {
    if (orbit.elements.empty()) throw std::invalid_argument("ps_estimate: empty orbit");
    BoundaryMeasure mu;
    mu.provenance = mode == PsMode::PattersonLimit ? BoundaryMeasure::Provenance::PattersonLimit
                                                   : BoundaryMeasure::Provenance::EmpiricalAngular;

    // one representative per +-pair; both have the same theta1 and t
    const std::size_t step = orbit.paired ? 2 : 1;
    double t_max = 0;
    for (const auto& e : orbit.elements) t_max = std::max(t_max, e.cartan.t);

    double t_floor = opts.core_t;
    if (mode == PsMode::EmpiricalAngular)
        t_floor = std::max(t_floor, t_max - 2 * std::log(opts.decade));
    if (t_max < t_floor) {
        // nothing beyond the core (e.g. the orbit is {+-I}): degenerate fall-back
        mu.degenerate = true;
        mu.warning = "orbit has no elements outside the base-point core; Dirac fallback";
        t_floor = -1.0;
    }

    for (std::size_t i = 0; i < orbit.elements.size(); i += step) {
        const auto& e = orbit.elements[i];
        if (e.cartan.t < t_floor) continue;
        const double w = mode == PsMode::PattersonLimit ? std::exp(-s * e.cartan.t) : 1.0;
        mu.atoms.push_back({fold_half(e.cartan.theta1), w});
    }
    normalize_and_lift(mu);
    if (mode == PsMode::PattersonLimit && std::isfinite(opts.delta_hint) && s <= opts.delta_hint)
        mu.warning = "s <= delta: Poincare series diverges; truncated sum returned";
    return mu;
}

BoundaryMeasure binned(const BoundaryMeasure& mu, int bins) {
    if (bins < 1) throw std::invalid_argument("binned: need at least one bin");
    BoundaryMeasure out;
    out.provenance = mu.provenance;
    out.degenerate = mu.degenerate;
    out.warning = mu.warning;
    std::vector<double> w(bins, 0.0);
    double half_mass = 0;
    for (const auto& a : mu.atoms) {
        if (a.theta >= kPi) continue;  // the lift is re-added below
        int b = static_cast<int>(a.theta / kPi * bins);
        b = std::clamp(b, 0, bins - 1);
        w[b] += a.weight;
        half_mass += a.weight;
    }
    if (half_mass <= 0) {
        out.degenerate = true;
        return out;
    }
    for (int b = 0; b < bins; ++b)
        if (w[b] > 0) out.atoms.push_back({(b + 0.5) * kPi / bins, w[b] / half_mass});
    const std::size_t half = out.atoms.size();
    for (std::size_t i = 0; i < half; ++i)
        out.atoms.push_back({out.atoms[i].theta + kPi, out.atoms[i].weight});
    out.total_mass = 2.0;
    out.normalized = true;
    out.lifted = true;
    return out;
}

complexd fourier_coeff(const BoundaryMeasure& mu, int n) {
    complexd sum = 0;
    for (const auto& a : mu.atoms) {
        if (a.theta >= kPi) continue;
        sum += a.weight * std::polar(1.0, 2.0 * n * a.theta);
    }
    return sum;
}

double phi0(const BoundaryMeasure& mu, double r, double theta, double delta) {
    if (!(r >= 0 && r < 1)) throw std::domain_error("phi0: r must lie in [0, 1)");
    const complexd z = std::polar(r, 2 * theta);
    double sum = 0;
    for (const auto& a : mu.atoms) {
        if (a.theta >= kPi) continue;
        const double d2 = std::norm(z - std::polar(1.0, 2 * a.theta));
        sum += a.weight * std::pow((1 - r * r) / d2, delta);
    }
    return sum;
}

std::string measure_to_csv(const BoundaryMeasure& mu) {
    std::ostringstream os;
    os << "theta,weight\n";
    for (const auto& a : mu.atoms)
        os << format_double(a.theta) << ',' << format_double(a.weight) << '\n';
    return os.str();
}

std::string fourier_table_csv(const BoundaryMeasure& mu, int n_max) {
    std::ostringstream os;
    os << "n,re,im\n";
    for (int n = -n_max; n <= n_max; ++n) {
        const complexd c = fourier_coeff(mu, n);
        os << n << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
    }
    return os.str();
}

}  // namespace fuchsian
