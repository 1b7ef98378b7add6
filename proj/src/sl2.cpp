#include "fuchsian/sl2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fuchsian/quadrature.hpp"

namespace fuchsian {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_2pi(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) t += kTwoPi;
    return t;
}

}  // namespace

HPoint mobius_act(const Mat2& g, const HPoint& z) {
    if (!z.valid()) throw std::invalid_argument("mobius_act: point outside the upper half-plane");
    if (!g.unimodular()) throw std::invalid_argument("mobius_act: det != 1");
    // (a z + b)(conj(c z + d)) / |c z + d|^2 with z = x + iy
    const double wx = g.c * z.x + g.d, wy = g.c * z.y;
    const double den = wx * wx + wy * wy;
    if (den < 1e-300) throw std::domain_error("mobius_act: degenerate denominator");
    const double ux = g.a * z.x + g.b, uy = g.a * z.y;
    return {(ux * wx + uy * wy) / den, (uy * wx - ux * wy) / den};
}

double hyp_dist(const HPoint& z, const HPoint& w) {
    if (!z.valid() || !w.valid()) throw std::invalid_argument("hyp_dist: invalid point");
    const double dx = z.x - w.x, dy = z.y - w.y;
    const double q = (dx * dx + dy * dy) / (2 * z.y * w.y);
    return std::acosh(1 + q);
}

CartanCoords kak_decompose(const Mat2& g) {
    if (!g.unimodular()) throw std::invalid_argument("kak_decompose: det != 1");
    // g^T g = [[p, q], [q, s]]; its larger eigenvalue is e^t.
    const double p = g.a * g.a + g.c * g.c;
    const double s = g.b * g.b + g.d * g.d;
    const double q = g.a * g.b + g.c * g.d;
    const double mean = (p + s) / 2;
    const double h = std::hypot(p - s, 2 * q);
    const double lam1 = mean + h / 2;
    const double t = lam1 > 1.0 ? std::log(lam1) : 0.0;

    CartanCoords out;
    out.t = t;
    if (t < 1e-12) {
        // g is (numerically) a rotation: report its angle alone.
        out.theta1 = wrap_2pi(std::atan2(g.b, g.a));
        out.theta2 = 0.0;
        return out;
    }
    // Right factor: g^T g = R(phi) diag(lam1, 1/lam1) R(phi)^T, k_{theta2} = R(phi)^T.
    const double phi = 0.5 * std::atan2(2 * q, p - s);
    const double vx = std::cos(phi), vy = std::sin(phi);
    // Left factor from the top singular pair; sigma1 = e^{t/2} >= 1 keeps this stable.
    const double sigma1 = std::sqrt(lam1);
    double ux = (g.a * vx + g.b * vy) / sigma1;
    double uy = (g.c * vx + g.d * vy) / sigma1;
    const double un = std::hypot(ux, uy);
    ux /= un;
    uy /= un;
    double theta1 = wrap_2pi(std::atan2(-uy, ux));
    double theta2 = wrap_2pi(phi);
    if (theta1 >= std::numbers::pi) {  // absorb -I into the right factor
        theta1 -= std::numbers::pi;
        theta2 = wrap_2pi(theta2 + std::numbers::pi);
    }
    out.theta1 = theta1;
    out.theta2 = theta2;
    return out;
}

Mat2 kak_compose(const CartanCoords& c) {
    if (c.t < 0) throw std::invalid_argument("kak_compose: t must be nonnegative");
    return Mat2::rotation(c.theta1) * Mat2::diagonal_flow(c.t) * Mat2::rotation(c.theta2);
}

double haar_integrate(const std::function<double(const CartanCoords&)>& f,
                      double t_max, int grid) {
    if (!(t_max > 0)) throw std::invalid_argument("haar_integrate: t_max must be positive");
    if (grid < 1) throw std::invalid_argument("haar_integrate: grid must be positive");
    const GaussLegendre rule = gauss_legendre_on(grid, 0.0, t_max);
    const double dtheta = kTwoPi / grid;
    double total = 0;
    for (int i = 0; i < grid; ++i) {
        const double th1 = (i + 0.5) * dtheta;
        for (int k = 0; k < grid; ++k) {
            const double t = rule.nodes[k];
            const double wt = rule.weights[k] * std::sinh(t);
            double inner = 0;
            for (int j = 0; j < grid; ++j) {
                const double th2 = (j + 0.5) * dtheta;
                inner += f(CartanCoords{th1, t, th2});
            }
            total += wt * inner * dtheta;
        }
    }
    return total * dtheta;
}

}  // namespace fuchsian
