#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fuchsian {

using complexd = std::complex<double>;

/// Orbit or integral requested beyond the range covered by the available data.
struct coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element-count or memory budget exceeded; message carries partial progress.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Group specification is invalid (bad determinant, failed ping-pong certificate, ...).
struct group_spec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Not enough data range to fit an exponent.
struct estimation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs fn(i) for i in [0, n), split across `workers` threads.
/// Each index is processed exactly once; callers own any merging.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

/// Chunked variant: fn(begin, end) over disjoint ranges covering [0, n).
void parallel_for_ranges(std::size_t n, unsigned workers,
                         const std::function<void(std::size_t, std::size_t)>& fn);

/// Least-squares slope and intercept of y against x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need at least two matched samples");
    const std::size_t n = x.size();
    double xm = 0, ym = 0;
    for (std::size_t i = 0; i < n; ++i) { xm += x[i]; ym += y[i]; }
    xm /= double(n); ym /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    if (sxx == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = ym - f.slope * xm;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.stderr_slope = n > 2 ? std::sqrt(ss / (double(n - 2) * sxx)) : 0.0;
    return f;
}

/// FNV-1a over a byte buffer; used for manifest content hashes.
inline std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Shortest round-trip-exact decimal form of a double (17 significant digits).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
}

inline void parallel_for_ranges(std::size_t n, unsigned workers,
                                const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers <= 1 || n < 2) {
        fn(0, n);
        return;
    }
    std::vector<std::jthread> pool;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
}

}  // namespace fuchsian
