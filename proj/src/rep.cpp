#include "fuchsian/rep.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace fuchsian {

namespace {

constexpr int kMaxWeight = 40;  // binomials stay exactly representable well past this

// Pascal row n as doubles (exact integers for n <= 52).
std::vector<double> binomial_row(int n) {
    std::vector<double> row(n + 1, 1.0);
    for (int i = 1; i <= n; ++i) row[i] = row[i - 1] * double(n - i + 1) / double(i);
    for (int i = 0; i <= n; ++i) row[i] = std::round(row[i]);
    return row;
}

}  // namespace

Irrep build_irrep(int n) {
    if (n < 0) throw std::invalid_argument("build_irrep: weight must be nonnegative");
    if (n > kMaxWeight) throw std::invalid_argument("build_irrep: weight too large");
    Irrep ir;
    ir.n = n;
    ir.weight_list.resize(n + 1);
    ir.basis_scale.resize(n + 1);
    auto binom = binomial_row(n);
    for (int i = 0; i <= n; ++i) {
        ir.weight_list[i] = n - 2 * i;
        ir.basis_scale[i] = std::sqrt(binom[i]);
    }
    return ir;
}

Eigen::MatrixXd apply_irrep(const Irrep& ir, const Mat2& g) {
    const int n = ir.n;
    // Monomial-basis matrix of the substitution action: the basis monomial
    // z1^{n-j} z2^j maps to (a z1 + c z2)^{n-j} (b z1 + d z2)^j.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    std::vector<double> apow(n + 1, 1.0), bpow(n + 1, 1.0), cpow(n + 1, 1.0), dpow(n + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        apow[i] = apow[i - 1] * g.a;
        bpow[i] = bpow[i - 1] * g.b;
        cpow[i] = cpow[i - 1] * g.c;
        dpow[i] = dpow[i - 1] * g.d;
    }
    for (int j = 0; j <= n; ++j) {
        auto bin1 = binomial_row(n - j);
        auto bin2 = binomial_row(j);
        for (int r = 0; r <= n - j; ++r) {
            const double left = bin1[r] * apow[n - j - r] * cpow[r];
            for (int s = 0; s <= j; ++s) {
                M(r + s, j) += left * bin2[s] * bpow[j - s] * dpow[s];
            }
        }
    }
    // Conjugate by the diagonal change of basis v_i = basis_scale[i] e_i.
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            M(i, j) *= ir.basis_scale[j] / ir.basis_scale[i];
    return M;
}

RepSpace build_rep(const std::vector<int>& weights) {
    if (weights.empty()) throw std::invalid_argument("build_rep: empty weight list");
    RepSpace rep;
    int off = 0;
    for (int w : weights) {
        rep.parts.push_back(build_irrep(w));
        rep.offsets.push_back(off);
        off += w + 1;
        rep.k = std::max(rep.k, w);
    }
    rep.dimension = off;
    for (int w : weights)
        if (w == rep.k) ++rep.m;
    return rep;
}

EndV RepSpace::projector_k() const {
    EndV P = EndV::Zero(dimension, dimension);
    for (size_t p = 0; p < parts.size(); ++p) {
        if (parts[p].n == k) {
            const int i = offsets[p];  // highest-weight vector sits first in its block
            P(i, i) = 1.0;
        }
    }
    return P;
}

EndV RepSpace::minus_one() const {
    EndV R = EndV::Zero(dimension, dimension);
    for (size_t p = 0; p < parts.size(); ++p) {
        const double sign = (parts[p].n % 2 == 0) ? 1.0 : -1.0;
        for (int i = 0; i <= parts[p].n; ++i) R(offsets[p] + i, offsets[p] + i) = sign;
    }
    return R;
}

EndV apply(const RepSpace& rep, const Mat2& g) {
    if (!g.unimodular()) throw std::invalid_argument("apply: det != 1");
    EndV M = EndV::Zero(rep.dimension, rep.dimension);
    for (size_t p = 0; p < rep.parts.size(); ++p) {
        M.block(rep.offsets[p], rep.offsets[p], rep.parts[p].dim(), rep.parts[p].dim()) =
            apply_irrep(rep.parts[p], g);
    }
    return M;
}

double op_norm(const EndV& M) {
    if (!M.allFinite()) throw std::invalid_argument("op_norm: non-finite entries");
    Eigen::JacobiSVD<EndV> svd(M);
    return svd.singularValues()(0);
}

EndV rho_minus_one(const RepSpace& rep) { return rep.minus_one(); }

EndV lie_h(const RepSpace& rep) {
    EndV H = EndV::Zero(rep.dimension, rep.dimension);
    for (size_t p = 0; p < rep.parts.size(); ++p)
        for (int i = 0; i <= rep.parts[p].n; ++i)
            H(rep.offsets[p] + i, rep.offsets[p] + i) = rep.parts[p].weight_list[i];
    return H;
}

EndV lie_f(const RepSpace& rep) {
    EndV F = EndV::Zero(rep.dimension, rep.dimension);
    for (size_t p = 0; p < rep.parts.size(); ++p) {
        const int n = rep.parts[p].n, off = rep.offsets[p];
        for (int i = 0; i < n; ++i)
            F(off + i + 1, off + i) = std::sqrt(double(n - i) * double(i + 1));
    }
    return F;
}

EndV lie_e(const RepSpace& rep) {
    EndV E = EndV::Zero(rep.dimension, rep.dimension);
    for (size_t p = 0; p < rep.parts.size(); ++p) {
        const int n = rep.parts[p].n, off = rep.offsets[p];
        for (int i = 1; i <= n; ++i)
            E(off + i - 1, off + i) = std::sqrt(double(i) * double(n - i + 1));
    }
    return E;
}

}  // namespace fuchsian
