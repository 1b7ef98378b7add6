#pragma once

#include <vector>

namespace fuchsian {

/// Gauss-Legendre rule on [-1, 1]; nodes ascending, weights matched.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes (and caches) the n-point Gauss-Legendre rule.
const GaussLegendre& gauss_legendre(int n);

/// Nodes/weights mapped to [lo, hi].
GaussLegendre gauss_legendre_on(int n, double lo, double hi);

}  // namespace fuchsian
