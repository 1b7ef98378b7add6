#pragma once

#include <functional>

#include "fuchsian/util.hpp"

namespace fuchsian {

/// Element of SL(2,R) as a row-major 2x2 matrix [[a,b],[c,d]], det = 1.
struct Mat2 {
    double a = 1, b = 0, c = 0, d = 1;

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double sumsq() const { return a * a + b * b + c * c + d * d; }

    /// det == 1 up to the cancellation error floating products can carry,
    /// which grows like the square of the entry scale.
    bool unimodular(double tol = 1e-9) const {
        return std::abs(det() - 1.0) <= tol * std::max(1.0, std::abs(a * d) + std::abs(b * c));
    }

    Mat2 inverse() const { return {d, -b, -c, a}; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 negated() const { return {-a, -b, -c, -d}; }

    static Mat2 identity() { return {}; }
    /// k_theta = [[cos, sin], [-sin, cos]].
    static Mat2 rotation(double theta);
    /// a_t = diag(e^{t/2}, e^{-t/2}).
    static Mat2 diagonal_flow(double t);

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    double max_abs_diff(const Mat2& o) const;
};

/// Point of the upper half-plane, y > 0.
struct HPoint {
    double x = 0, y = 1;
    bool valid() const { return y > 0 && std::isfinite(x) && std::isfinite(y); }
    static HPoint origin() { return {0, 1}; }  // the point i, stabilized by K
};

/// Cartan coordinates: g = k_{theta1} a_t k_{theta2}, t >= 0, angles in [0, 2pi).
struct CartanCoords {
    double theta1 = 0;
    double t = 0;
    double theta2 = 0;

    /// Geodesic radius of g.o in the disc model.
    double r() const { return std::tanh(t / 2); }
    /// |g| = e^{t/2} = largest singular value.
    double gamma_abs() const { return std::exp(t / 2); }
};

/// Fractional linear action (a z + b) / (c z + d) on the upper half-plane.
/// Throws std::domain_error when the denominator degenerates.
HPoint mobius_act(const Mat2& g, const HPoint& z);

/// Hyperbolic distance on the upper half-plane.
double hyp_dist(const HPoint& z, const HPoint& w);

/// Cartan (KAK) decomposition via the closed-form symmetric eigenproblem of
/// g^T g. For t > 0 the angle pair is canonicalized to theta1 in [0, pi);
/// a pure rotation decomposes as (rotation angle, 0, 0).
CartanCoords kak_decompose(const Mat2& g);

/// k_{theta1} a_t k_{theta2}.
Mat2 kak_compose(const CartanCoords& c);

/// Integrates f over K x [0, t_max] x K against the Haar density sinh(t),
/// angles by periodic midpoint rule, t by Gauss-Legendre.
/// `grid` is the node count per axis.
double haar_integrate(const std::function<double(const CartanCoords&)>& f,
                      double t_max, int grid);

inline Mat2 Mat2::rotation(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return {c, s, -s, c};
}

inline Mat2 Mat2::diagonal_flow(double t) {
    double e = std::exp(t / 2);
    return {e, 0, 0, 1 / e};
}

inline double Mat2::max_abs_diff(const Mat2& o) const {
    double m = std::abs(a - o.a);
    m = std::max(m, std::abs(b - o.b));
    m = std::max(m, std::abs(c - o.c));
    return std::max(m, std::abs(d - o.d));
}

}  // namespace fuchsian
