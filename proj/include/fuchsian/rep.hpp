#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fuchsian/sl2.hpp"

namespace fuchsian {

/// Matrix acting on the representation space, in the standard basis.
using EndV = Eigen::MatrixXd;

/// Irreducible representation of highest weight n on homogeneous polynomials
/// of degree n. The standard basis {v_0,...,v_n} is obtained from the highest
/// weight vector by normalized lowering, v_{i+1} = rho(f) v_i / c_i with
/// c_i = sqrt((n-i)(i+1)); in it rho(a_t) is diagonal and rho(K) orthogonal.
struct Irrep {
    int n = 0;
    std::vector<int> weight_list;        // n, n-2, ..., -n
    std::vector<double> basis_scale;     // v_i = basis_scale[i] * z1^{n-i} z2^i

    int dim() const { return n + 1; }
};

/// Builds the weight-n irreducible with its standard orthonormal basis.
Irrep build_irrep(int n);

/// Direct sum of irreducibles. k is the top highest weight, m its multiplicity,
/// and P_k projects onto the highest-weight lines of the weight-k summands.
struct RepSpace {
    std::vector<Irrep> parts;
    std::vector<int> offsets;  // block start of each part
    int dimension = 0;
    int k = 0;
    int m = 0;

    EndV projector_k() const;   // P_k: diagonal 0/1, rank m
    EndV minus_one() const;     // rho(-1): diagonal +-1 by block parity
};

RepSpace build_rep(const std::vector<int>& weights);

/// Matrix of rho(g) in the standard basis (block diagonal over parts).
EndV apply(const RepSpace& rep, const Mat2& g);

/// Matrix of rho_n(g) for a single irreducible part.
Eigen::MatrixXd apply_irrep(const Irrep& ir, const Mat2& g);

/// Largest singular value.
double op_norm(const EndV& M);

/// rho(-1) as a diagonal matrix (+1 on even-weight blocks, -1 on odd).
EndV rho_minus_one(const RepSpace& rep);

/// Lie algebra images in the standard basis: h = diag(weights),
/// e raises with coefficients d_i = sqrt(i(n-i+1)), f lowers with c_i.
EndV lie_h(const RepSpace& rep);
EndV lie_e(const RepSpace& rep);
EndV lie_f(const RepSpace& rep);

}  // namespace fuchsian
