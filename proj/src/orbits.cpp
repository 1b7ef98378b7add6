#include "fuchsian/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace fuchsian {

namespace {

// sigma_max of a general 2x2 (det need not be 1)
double sigma_max(double a, double b, double c, double d) {
    const double ss = a * a + b * b + c * c + d * d;
    const double det = a * d - b * c;
    const double disc = std::max(ss * ss - 4 * det * det, 0.0);
    return std::sqrt((ss + std::sqrt(disc)) / 2);
}

struct RawElement {
    Mat2 mat;
    std::vector<std::int8_t> word;
    bool has_exact = false;
    std::array<std::int64_t, 4> exact{};
};

// a*x + c*y = gcd(a, c), gcd returned nonnegative
std::int64_t ext_gcd(std::int64_t a, std::int64_t c, std::int64_t& x, std::int64_t& y) {
    std::int64_t old_r = a, r = c;
    std::int64_t old_x = 1, xx = 0, old_y = 0, yy = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x; y = old_y;
    return old_r;
}

// All sign-canonical gamma in SL(2,Z) with sum of squared entries <= bound.
// Canonical: a > 0, or a == 0 and b > 0. Column scan: for each coprime
// first column (a, c), the admissible second columns form a k-interval of
// (b0 + k a, d0 + k c).
std::vector<RawElement> scan_sl2z(double bound, const EnumerationOptions& opts) {
    const auto lim = static_cast<std::int64_t>(std::floor(std::sqrt(bound)));
    std::vector<std::vector<RawElement>> buckets(static_cast<std::size_t>(lim) + 1);
    std::atomic<std::size_t> total{0};
    std::atomic<bool> over_budget{false};

    parallel_for(static_cast<std::size_t>(lim) + 1, opts.workers, [&](std::size_t ai) {
        const auto a = static_cast<std::int64_t>(ai);
        auto& out = buckets[ai];
        for (std::int64_t c = -lim; c <= lim; ++c) {
            if (a == 0 && c == 0) continue;
            if (double(a * a + c * c) > bound) continue;
            std::int64_t x, y;
            if (ext_gcd(a, c, x, y) != 1) continue;
            // a*d - c*b = 1 with d0 = x, b0 = -y
            const std::int64_t b0 = -y, d0 = x;
            const double A = double(a * a + c * c);
            const double B = 2.0 * double(a * b0 + c * d0);
            const double C = double(b0 * b0 + d0 * d0) - (bound - double(a * a + c * c));
            const double disc = B * B - 4 * A * C;
            if (disc < 0) continue;
            const double sq = std::sqrt(disc);
            const auto klo = static_cast<std::int64_t>(std::ceil((-B - sq) / (2 * A) - 1e-9));
            const auto khi = static_cast<std::int64_t>(std::floor((-B + sq) / (2 * A) + 1e-9));
            for (std::int64_t k = klo; k <= khi; ++k) {
                const std::int64_t b = b0 + k * a, d = d0 + k * c;
                if (double(a * a + b * b + c * c + d * d) > bound) continue;
                if (a == 0 && b <= 0) continue;  // sign-canonical half only
                RawElement e;
                e.mat = {double(a), double(b), double(c), double(d)};
                e.has_exact = true;
                e.exact = {a, b, c, d};
                out.push_back(std::move(e));
                if (++total > opts.budget_elements) {
                    over_budget = true;
                    return;
                }
            }
        }
    });
    if (over_budget)
        throw resource_error("enumerate_orbit: element budget exceeded after " +
                             std::to_string(total.load()) + " lattice elements");
    std::vector<RawElement> all;
    all.reserve(total);
    for (auto& b : buckets)
        for (auto& e : b) all.push_back(std::move(e));
    return all;
}

// Reduced-word BFS with certified pruning. A node whose isometric-circle
// radius satisfies 1/|c| < 1/(kappa T2) cannot have any descendant of norm
// <= T2, since appending a reduced letter multiplies the radius by at most
// kappa and every entry of a matrix is bounded by its top singular value.
std::vector<RawElement> scan_free(const std::vector<Mat2>& gens,
                                  const PingPongCertificate& cert, double T2,
                                  const EnumerationOptions& opts) {
    struct Node {
        Mat2 mat;
        std::vector<std::int8_t> word;
    };
    const int nl = static_cast<int>(gens.size()) * 2;
    std::vector<Mat2> letter(nl);
    std::vector<std::int8_t> letter_label(nl);
    for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
        letter[2 * i] = gens[i];
        letter[2 * i + 1] = gens[i].inverse();
        letter_label[2 * i] = static_cast<std::int8_t>(i + 1);
        letter_label[2 * i + 1] = static_cast<std::int8_t>(-(i + 1));
    }
    const double expand_cut = cert.kappa * T2 * (1 + 1e-9);
    const double accept_cut = T2 * (1 + 1e-9);

    std::vector<RawElement> out;
    out.push_back({Mat2::identity(), {}, false, {}});
    std::vector<Node> frontier;
    for (int l = 0; l < nl; ++l) frontier.push_back({letter[l], {letter_label[l]}});

    auto visit = [&](std::vector<Node>& acc_front, std::vector<RawElement>& acc_out, const Node& nd) {
        const Mat2& m = nd.mat;
        if (sigma_max(m.a, m.b, m.c, m.d) <= accept_cut)
            acc_out.push_back({m, nd.word, false, {}});
        if (std::abs(m.c) > expand_cut) return;
        const int last = std::abs(int(nd.word.back())) - 1;
        const int forbidden = (nd.word.back() > 0) ? 2 * last + 1 : 2 * last;
        for (int l = 0; l < nl; ++l) {
            if (l == forbidden) continue;
            Node child{m * letter[l], nd.word};
            child.word.push_back(letter_label[l]);
            acc_front.push_back(std::move(child));
        }
    };

    while (!frontier.empty()) {
        if (out.size() + frontier.size() > opts.budget_elements)
            throw resource_error("enumerate_orbit: element budget exceeded after " +
                                 std::to_string(out.size()) + " elements (frontier " +
                                 std::to_string(frontier.size()) + ")");
        std::vector<Node> next;
        if (opts.workers > 1 && frontier.size() > 4096) {
            const unsigned W = opts.workers;
            std::vector<std::vector<Node>> nf(W);
            std::vector<std::vector<RawElement>> no(W);
            const std::size_t chunk = (frontier.size() + W - 1) / W;
            parallel_for(W, W, [&](std::size_t w) {
                const std::size_t lo = w * chunk, hi = std::min(frontier.size(), lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) visit(nf[w], no[w], frontier[i]);
            });
            for (unsigned w = 0; w < W; ++w) {
                for (auto& e : no[w]) out.push_back(std::move(e));
                for (auto& n : nf[w]) next.push_back(std::move(n));
            }
        } else {
            for (const auto& nd : frontier) visit(next, out, nd);
        }
        frontier = std::move(next);
    }
    return out;
}

// Powers of a single hyperbolic generator. sigma(g^n) >= lambda^n / cond(Q)
// for the eigenbasis Q, so the walk stops with a certificate.
std::vector<RawElement> scan_cyclic(const Mat2& g, double T2, const EnumerationOptions& opts) {
    const double tr = std::abs(g.trace());
    if (tr <= 2.0 + 1e-12)
        throw group_spec_error("free-group: single generator must be hyperbolic (|trace| > 2)");
    const double lambda = (tr + std::sqrt(tr * tr - 4)) / 2;
    // eigenvectors of g for eigenvalues lambda, 1/lambda
    double qa, qb, qc, qd;
    if (std::abs(g.b) > 1e-14 || std::abs(g.c) > 1e-14) {
        const double l1 = (g.trace() > 0) ? lambda : -lambda;
        const double l2 = 1.0 / l1;
        if (std::abs(g.b) >= std::abs(g.c)) {
            qa = g.b; qc = l1 - g.a; qb = g.b; qd = l2 - g.a;
        } else {
            qa = l1 - g.d; qc = g.c; qb = l2 - g.d; qd = g.c;
        }
    } else {
        qa = 1; qb = 0; qc = 0; qd = 1;  // already diagonal
    }
    const double cond = sigma_max(qa, qb, qc, qd) *
                        sigma_max(qd, -qb, -qc, qa) / std::abs(qa * qd - qb * qc);

    std::vector<RawElement> out;
    out.push_back({Mat2::identity(), {}, false, {}});
    for (int dir = 0; dir < 2; ++dir) {
        Mat2 step = dir == 0 ? g : g.inverse();
        const std::int8_t label = dir == 0 ? 1 : -1;
        Mat2 cur = Mat2::identity();
        std::vector<std::int8_t> word;
        for (int n = 1;; ++n) {
            cur = cur * step;
            word.push_back(label);
            if (sigma_max(cur.a, cur.b, cur.c, cur.d) <= T2 * (1 + 1e-9))
                out.push_back({cur, word, false, {}});
            if (std::pow(lambda, n + 1) / cond > T2 * (1 + 1e-9)) break;
            if (out.size() > opts.budget_elements)
                throw resource_error("enumerate_orbit: element budget exceeded (cyclic)");
        }
    }
    return out;
}

bool element_key_less(const GroupElement& x, const GroupElement& y) {
    if (x.cartan.t != y.cartan.t) return x.cartan.t < y.cartan.t;
    if (x.mat.a != y.mat.a) return x.mat.a < y.mat.a;
    if (x.mat.b != y.mat.b) return x.mat.b < y.mat.b;
    if (x.mat.c != y.mat.c) return x.mat.c < y.mat.c;
    return x.mat.d < y.mat.d;
}

}  // namespace

GroupSpec GroupSpec::sl2z() {
    GroupSpec s;
    s.kind = GroupKind::ArithmeticLattice;
    s.generators = {Mat2{0, 1, -1, 0}, Mat2{1, 1, 0, 1}};
    s.include_minus_one = true;
    return s;
}

GroupSpec GroupSpec::free_group(std::vector<Mat2> gens, bool minus_one) {
    GroupSpec s;
    s.kind = GroupKind::FreeGroup;
    s.generators = std::move(gens);
    s.include_minus_one = minus_one;
    return s;
}

GroupSpec GroupSpec::schottky(std::vector<Mat2> gens, bool minus_one) {
    GroupSpec s = free_group(std::move(gens), minus_one);
    s.kind = GroupKind::Schottky;
    return s;
}

Mat2 GroupSpec::disc_pairing(double center1, double center2, double radius) {
    if (!(radius > 0)) throw std::invalid_argument("disc_pairing: radius must be positive");
    const double c = 1.0 / radius;
    const double a = center2 / radius;
    const double d = -center1 / radius;
    const double b = (a * d - 1.0) / c;
    return {a, b, c, d};
}

GroupSpec GroupSpec::schottky_fixture() {
    return schottky({disc_pairing(-1.0, 1.0, 0.9), disc_pairing(-3.0, 3.0, 0.9)}, true);
}

PingPongCertificate certify_ping_pong(const std::vector<Mat2>& generators) {
    if (generators.empty()) throw group_spec_error("ping-pong: no generators");
    PingPongCertificate cert;
    for (const auto& g : generators) {
        if (!g.unimodular()) throw group_spec_error("ping-pong: generator det != 1");
        if (std::abs(g.c) < 1e-14)
            throw group_spec_error("ping-pong: generator fixes infinity (c = 0), isometric circle undefined");
        cert.discs.push_back({-g.d / g.c, 1.0 / std::abs(g.c)});        // disc of g
        const Mat2 gi = g.inverse();
        cert.discs.push_back({-gi.d / gi.c, 1.0 / std::abs(gi.c)});     // disc of g^{-1}
    }
    const int nl = static_cast<int>(cert.discs.size());
    double kappa = 0;
    for (int u = 0; u < nl; ++u) {
        for (int v = 0; v < nl; ++v) {
            if (v == (u ^ 1)) continue;
            const auto& du = cert.discs[u ^ 1];  // disc of u^{-1}
            const auto& dv = cert.discs[v];
            const double sep = std::abs(du.center - dv.center) - dv.radius;
            if (sep <= cert.discs[u].radius)
                throw group_spec_error("ping-pong: isometric circles are not pairwise disjoint");
            kappa = std::max(kappa, cert.discs[u].radius / sep);
        }
    }
    if (nl > 2) {
        // pairwise disjointness of all discs (the kappa loop only checks the pairs
        // reachable by reduced extension)
        for (int u = 0; u < nl; ++u)
            for (int v = u + 1; v < nl; ++v) {
                const double gap = std::abs(cert.discs[u].center - cert.discs[v].center) -
                                   cert.discs[u].radius - cert.discs[v].radius;
                if (gap <= 0) throw group_spec_error("ping-pong: isometric circles overlap");
            }
    }
    cert.kappa = kappa;
    return cert;
}

OrbitSet enumerate_orbit(const GroupSpec& spec, const RepSpace& rep, double T,
                         const EnumerationOptions& opts) {
    if (rep.k < 1) throw std::invalid_argument("enumerate_orbit: representation must have k >= 1");
    OrbitSet orbit;
    orbit.T = T;
    orbit.rep_k = rep.k;
    orbit.paired = spec.include_minus_one;
    if (T < 1.0) return orbit;  // even the identity has norm 1

    const double T2 = std::pow(T, 1.0 / rep.k);  // cutoff for |gamma| = e^{t/2}
    std::vector<RawElement> raw;
    switch (spec.kind) {
        case GroupKind::ArithmeticLattice: {
            for (const auto& g : spec.generators)
                if (std::abs(g.det() - 1.0) > 1e-12 ||
                    g.a != std::round(g.a) || g.b != std::round(g.b) ||
                    g.c != std::round(g.c) || g.d != std::round(g.d))
                    throw group_spec_error("arithmetic-lattice: generators must be integer unimodular");
            raw = scan_sl2z(T2 * T2 + 1.0 / (T2 * T2), opts);
            break;
        }
        case GroupKind::FreeGroup:
        case GroupKind::Schottky: {
            if (spec.generators.size() == 1) {
                raw = scan_cyclic(spec.generators[0], T2, opts);
            } else {
                const auto cert = certify_ping_pong(spec.generators);
                raw = scan_free(spec.generators, cert, T2, opts);
            }
            break;
        }
    }

    // Cartan data, the authoritative norm filter, then canonical ordering.
    std::vector<GroupElement> reps;
    reps.reserve(raw.size());
    for (auto& r : raw) {
        GroupElement e;
        e.mat = r.mat;
        e.cartan = kak_decompose(r.mat);
        e.norm = std::exp(rep.k * e.cartan.t / 2);
        if (e.norm > T) continue;
        e.word = std::move(r.word);
        e.has_exact = r.has_exact;
        e.exact = r.exact;
        reps.push_back(std::move(e));
    }
    std::sort(reps.begin(), reps.end(), element_key_less);

    if (spec.include_minus_one) {
        orbit.elements.reserve(reps.size() * 2);
        for (auto& e : reps) {
            GroupElement neg;
            neg.mat = e.mat.negated();
            neg.cartan = kak_decompose(neg.mat);
            neg.norm = e.norm;
            neg.word.reserve(e.word.size() + 1);
            neg.word.push_back(0);
            neg.word.insert(neg.word.end(), e.word.begin(), e.word.end());
            neg.has_exact = e.has_exact;
            if (e.has_exact)
                neg.exact = {-e.exact[0], -e.exact[1], -e.exact[2], -e.exact[3]};
            orbit.elements.push_back(std::move(e));
            orbit.elements.push_back(std::move(neg));
        }
    } else {
        orbit.elements = std::move(reps);
    }
    return orbit;
}

std::size_t OrbitSet::count_norm_le(double cutoff) const {
    auto it = std::upper_bound(elements.begin(), elements.end(), cutoff,
                               [](double v, const GroupElement& e) { return v < e.norm; });
    return static_cast<std::size_t>(it - elements.begin());
}

std::size_t OrbitSet::count_gamma_abs_le(double cutoff) const {
    auto it = std::upper_bound(elements.begin(), elements.end(), cutoff,
                               [](double v, const GroupElement& e) { return v < e.cartan.gamma_abs(); });
    return static_cast<std::size_t>(it - elements.begin());
}

ExponentEstimate estimate_exponent(const GroupSpec& spec, ExponentMethod method,
                                   double T_max, const EnumerationOptions& opts) {
    if (T_max < 8)
        throw estimation_error("estimate_exponent: need at least two decades of T");
    const RepSpace std_rep = build_rep({1});
    const OrbitSet orbit = enumerate_orbit(spec, std_rep, T_max, opts);
    const bool elementary = spec.kind != GroupKind::ArithmeticLattice && spec.generators.size() == 1;

    ExponentEstimate est;
    est.method = method;
    est.T_max = T_max;
    if (method == ExponentMethod::GrowthFit) {
        std::vector<double> lx, ly;
        const int points = 5;
        for (int j = points - 1; j >= 0; --j) {
            const double Tj = T_max / std::pow(2.0, j);
            const auto n = orbit.count_norm_le(Tj);
            if (n < 4) continue;
            lx.push_back(std::log(Tj));
            ly.push_back(std::log(double(n)));
        }
        if (lx.size() < 3)
            throw estimation_error("estimate_exponent: too few usable ladder points");
        est.T_min = std::exp(lx.front());
        const LineFit f = fit_line(lx, ly);
        est.delta_hat = f.slope / 2;
        est.stderr_ = f.stderr_slope / 2;
    } else {
        // shell sums of the truncated Poincare series; the abscissa is the s
        // where the shell masses stop growing
        std::vector<double> tvals;
        for (const auto& e : orbit.elements) tvals.push_back(e.cartan.t);
        const double t_hi = 2 * std::log(T_max);
        std::vector<double> centers;
        std::vector<std::vector<double>> shells;
        for (double lo = 2.0; lo + 1.0 <= t_hi + 1e-9; lo += 1.0) {
            std::vector<double> sh;
            for (double t : tvals)
                if (t >= lo && t < lo + 1.0) sh.push_back(t);
            if (sh.size() >= 4) {
                centers.push_back(lo + 0.5);
                shells.push_back(std::move(sh));
            }
        }
        if (shells.size() < 4)
            throw estimation_error("estimate_exponent: too few populated shells for the Poincare proxy");
        est.T_min = std::exp(centers.front() / 2);
        auto shell_slope = [&](double s) {
            std::vector<double> ly;
            for (std::size_t i = 0; i < shells.size(); ++i) {
                // log of sum_{t in shell} e^{-s t}, kept stable by factoring
                // out the shell center
                double sum = 0;
                for (double t : shells[i]) sum += std::exp(-s * (t - centers[i]));
                ly.push_back(std::log(sum) - s * centers[i]);
            }
            return fit_line(centers, ly);
        };
        double lo = 1e-3, hi = 1.5;
        if (shell_slope(lo).slope <= 0) {
            est.delta_hat = 1e-3;
        } else if (shell_slope(hi).slope >= 0) {
            est.delta_hat = hi;
        } else {
            for (int it = 0; it < 60; ++it) {
                const double mid = (lo + hi) / 2;
                (shell_slope(mid).slope > 0 ? lo : hi) = mid;
            }
            est.delta_hat = (lo + hi) / 2;
        }
        est.stderr_ = shell_slope(est.delta_hat).stderr_slope;
    }

    if (elementary) {
        est.warning = "elementary group: polynomial orbit growth; not a valid instance of the limit theorems";
        est.delta_hat = std::max(est.delta_hat, 1e-3);
    }
    est.delta_hat = std::clamp(est.delta_hat, 1e-3, 1.0);
    if (est.warning.empty() && est.delta_hat <= 0.5)
        est.warning = "critical exponent <= 1/2: outside the delta > 1/2 regime of the limit theorems";
    return est;
}

AnnuliPartition partition_annuli(const OrbitSet& orbit, int N, double delta) {
    if (N < 1) throw std::invalid_argument("partition_annuli: N must be >= 1");
    AnnuliPartition part;
    part.N = N;
    part.T = orbit.T;
    const double q = 2 * delta / orbit.rep_k;
    const double scale = std::pow(orbit.T / N, q);
    for (int j = 0; j < N; ++j) {
        const double blo = orbit.T * (double(j) / N);
        const double bhi = (j + 1 == N) ? orbit.T : orbit.T * (double(j + 1) / N);
        const std::size_t lo = orbit.count_norm_le(blo);
        const std::size_t hi = orbit.count_norm_le(bhi);
        part.cells.emplace_back(lo, hi);
        part.M_values.push_back(scale * (std::pow(j + 1.0, q) - std::pow(double(j), q)));
    }
    return part;
}

std::string orbit_to_csv(const OrbitSet& orbit) {
    std::ostringstream os;
    os << "word,a,b,c,d,theta1,t,theta2,norm\n";
    for (const auto& e : orbit.elements) {
        if (!e.word.empty()) {
            os << '"';
            for (std::size_t i = 0; i < e.word.size(); ++i) {
                if (i) os << ',';
                os << int(e.word[i]);
            }
            os << '"';
        }
        os << ',' << format_double(e.mat.a) << ',' << format_double(e.mat.b) << ','
           << format_double(e.mat.c) << ',' << format_double(e.mat.d) << ','
           << format_double(e.cartan.theta1) << ',' << format_double(e.cartan.t) << ','
           << format_double(e.cartan.theta2) << ',' << format_double(e.norm) << '\n';
    }
    return os.str();
}

}  // namespace fuchsian
