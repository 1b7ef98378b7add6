#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuchsian/rep.hpp"
#include "fuchsian/sl2.hpp"

namespace fuchsian {

enum class GroupKind { ArithmeticLattice, FreeGroup, Schottky };

/// Specification of a discrete subgroup of SL(2,R).
///
/// arithmetic-lattice means SL(2,Z) itself (enumerated by exhaustive
/// bounded-entry search); free-group and schottky are free on their
/// generators and must carry a ping-pong certificate: the isometric circles
/// of all generators and inverses are pairwise disjoint discs centered on
/// the real axis. A single hyperbolic generator is accepted as the
/// (elementary) cyclic case.
struct GroupSpec {
    GroupKind kind = GroupKind::ArithmeticLattice;
    std::vector<Mat2> generators;
    bool include_minus_one = true;

    static GroupSpec sl2z();
    static GroupSpec free_group(std::vector<Mat2> gens, bool include_minus_one = true);
    static GroupSpec schottky(std::vector<Mat2> gens, bool include_minus_one = true);

    /// Generator pairing the disc C(center1, radius) onto C(center2, radius);
    /// these discs are exactly its isometric circles.
    static Mat2 disc_pairing(double center1, double center2, double radius);

    /// The Schottky pair fixed for the test suite: discs C(-1,.9)->C(1,.9)
    /// and C(-3,.9)->C(3,.9); critical exponent ~ 0.54.
    static GroupSpec schottky_fixture();
};

/// Ford ping-pong data for a free generator set. kappa < 1 is the certified
/// one-step contraction factor of isometric-circle radii along reduced words:
/// appending a letter multiplies the radius 1/|c| by at most kappa, which
/// bounds every descendant's norm from below and makes BFS pruning safe.
struct PingPongCertificate {
    struct Disc {
        double center = 0;
        double radius = 0;
    };
    std::vector<Disc> discs;  // letter order: g1, g1^{-1}, g2, g2^{-1}, ...
    double kappa = 0;
};

/// Validates the generator set and produces the certificate.
/// Throws group_spec_error when the discs are undefined or overlap.
PingPongCertificate certify_ping_pong(const std::vector<Mat2>& generators);

/// One orbit element: matrix, Cartan data, norm in the chosen representation,
/// and word provenance. Words are generator indices (1-based, negative for
/// inverses); a leading 0 marks a -I factor. Lattice elements carry exact
/// integer entries and no word.
struct GroupElement {
    Mat2 mat;
    CartanCoords cartan;
    double norm = 1;                     // ||rho(gamma)|| = e^{k t / 2}
    std::vector<std::int8_t> word;
    bool has_exact = false;
    std::array<std::int64_t, 4> exact{};  // a, b, c, d
};

/// All gamma with ||rho(gamma)|| <= T, duplicate-free, in canonical order:
/// ascending (t, entries of the sign-canonical representative), with each
/// -I pair stored adjacently (positive representative first).
struct OrbitSet {
    std::vector<GroupElement> elements;
    double T = 0;
    int rep_k = 1;
    std::size_t dedup_count = 0;
    bool paired = false;  // elements come in exact +-gamma pairs

    /// Number of elements with norm <= cutoff (prefix of the canonical order).
    std::size_t count_norm_le(double cutoff) const;
    /// Number of elements with |gamma| = e^{t/2} <= cutoff.
    std::size_t count_gamma_abs_le(double cutoff) const;
};

struct EnumerationOptions {
    std::size_t budget_elements = 50'000'000;
    unsigned workers = 1;
};

/// Enumerates Gamma_T = {gamma : ||rho(gamma)|| <= T}. Complete by
/// construction: bounded-entry search for the lattice, certified-pruning BFS
/// on reduced words for free/Schottky groups. T < 1 yields the empty set.
OrbitSet enumerate_orbit(const GroupSpec& spec, const RepSpace& rep, double T,
                         const EnumerationOptions& opts = {});

enum class ExponentMethod { GrowthFit, PoincareAbscissa };

struct ExponentEstimate {
    double delta_hat = 0;
    double stderr_ = 0;
    ExponentMethod method = ExponentMethod::GrowthFit;
    double T_min = 0, T_max = 0;
    std::string warning;  // set when the instance is elementary or delta <= 1/2
};

/// Estimates the critical exponent from orbit growth up to |gamma| <= T_max,
/// either by the log-log slope of N(T) over a dyadic ladder or by locating
/// the abscissa where truncated Poincare shell sums stop growing.
ExponentEstimate estimate_exponent(const GroupSpec& spec, ExponentMethod method,
                                   double T_max, const EnumerationOptions& opts = {});

/// Radial partition of Gamma_T into N norm annuli S_{T,j}, plus the model
/// cell masses M_{T,j} = (T/N)^{2 delta / k} ((j+1)^{2 delta/k} - j^{2 delta/k}).
struct AnnuliPartition {
    int N = 1;
    double T = 0;
    /// Half-open index ranges [begin, end) into the orbit's canonical order.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    std::vector<double> M_values;

    std::size_t cell_size(int j) const { return cells[j].second - cells[j].first; }
};

AnnuliPartition partition_annuli(const OrbitSet& orbit, int N, double delta);

/// CSV dump, header `word,a,b,c,d,theta1,t,theta2,norm`, 17 significant digits.
std::string orbit_to_csv(const OrbitSet& orbit);

}  // namespace fuchsian
