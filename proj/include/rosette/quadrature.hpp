#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "rosette/errors.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

struct QuadratureConfig {
    int n_samples = 1 << 14;        // power of two, enables halving studies
    double guard_halfwidth = 1e-4;  // excluded halfwidth around declared singular parameters
    int richardson_levels = 3;
    double tolerance = 1e-10;       // target accuracy; NonConvergent past 100x this
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int n_samples = 0;
};

namespace detail {

/// Deterministic pairwise (tree) summation; serial and chunked-parallel
/// evaluations agree bitwise.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

/// Nodes/weights of 16-point Gauss-Legendre on [-1,1], computed once by
/// Newton iteration on the Legendre polynomial.
inline const std::array<std::array<double, 16>, 2>& gauss16() {
    static const std::array<std::array<double, 16>, 2> nw = [] {
        std::array<std::array<double, 16>, 2> out{};
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                const double dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            out[0][i] = x;
            out[1][i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return out;
    }();
    return nw;
}

inline double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const auto& nw = gauss16();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::array<double, 16> vals{};
    for (int i = 0; i < 16; ++i) vals[i] = nw[1][i] * f(mid + half * nw[0][i]);
    return half * pairwise_sum(vals.data(), vals.size());
}

/// Composite Gauss-Legendre on [a,b]; endpoints flagged singular get
/// geometrically graded panels so integrable endpoint blow-ups converge.
inline double gauss_segment(const std::function<double(double)>& f, double a, double b,
                            bool left_singular = false, bool right_singular = false,
                            int panels = 8, int grade_levels = 12) {
    if (b <= a) return 0.0;
    std::vector<double> knots;
    knots.push_back(a);
    if (left_singular) {
        // a + (b-a)/2^k toward a
        for (int k = grade_levels; k >= 1; --k) {
            const double t = a + (b - a) * std::ldexp(1.0, -k) * 0.5;
            if (t > knots.back()) knots.push_back(t);
        }
    }
    const double inner_lo = knots.back();
    double inner_hi = b;
    std::vector<double> tail;
    if (right_singular) {
        for (int k = 1; k <= grade_levels; ++k) {
            const double t = b - (b - a) * std::ldexp(1.0, -k) * 0.5;
            if (t > inner_lo && t < b) tail.push_back(t);
        }
        if (!tail.empty()) inner_hi = tail.front();
    }
    for (int i = 1; i < panels; ++i) {
        const double t = inner_lo + (inner_hi - inner_lo) * i / panels;
        knots.push_back(t);
    }
    knots.push_back(inner_hi);
    for (double t : tail)
        if (t > knots.back()) knots.push_back(t);
    if (knots.back() < b) knots.push_back(b);

    std::vector<double> parts;
    parts.reserve(knots.size());
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        parts.push_back(gauss_panel(f, knots[i], knots[i + 1]));
    return pairwise_sum(parts);
}

}  // namespace detail

/// Composite trapezoid over one period; spectrally accurate for smooth
/// periodic integrands. Error estimate from the n/2 subsample.
inline IntegralResult integrate_periodic(const std::function<double(double)>& f, double period,
                                         const QuadratureConfig& cfg = {}) {
    const int n = cfg.n_samples;
    const double h = period / n;
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = f(i * h);
    const double full = detail::pairwise_sum(vals) * h;
    std::vector<double> evens(n / 2);
    for (int i = 0; i < n / 2; ++i) evens[i] = vals[2 * i];
    const double half = detail::pairwise_sum(evens) * (2.0 * h);
    IntegralResult res;
    res.value = full;
    res.error_estimate = std::abs(full - half);
    res.n_samples = n;
    if (res.error_estimate > 100.0 * cfg.tolerance * (1.0 + std::abs(full)))
        throw NonConvergent("integrate_periodic: refinement disagreement " +
                            std::to_string(res.error_estimate));
    return res;
}

/// Integral over one period with guard intervals removed around the given
/// points, Richardson/Aitken extrapolated in the guard halfwidth. Handles
/// integrable endpoint singularities and bounded jumps at the guard points.
inline IntegralResult integrate_with_guards(const std::function<double(double)>& f, double period,
                                            std::vector<double> guard_points,
                                            const QuadratureConfig& cfg = {}) {
    if (guard_points.empty()) {
        auto seg = [&] {
            return detail::gauss_segment(f, 0.0, period, false, false, 64);
        }();
        IntegralResult res;
        res.value = seg;
        res.error_estimate = 0.0;
        res.n_samples = cfg.n_samples;
        return res;
    }
    for (auto& g : guard_points) g = wrap_angle(g, period);
    std::sort(guard_points.begin(), guard_points.end());

    auto guarded = [&](double g) {
        // Split [p0, p0+period] at the guard points; each sub-segment is
        // integrated with graded panels at both (singular) ends.
        std::vector<double> parts;
        const std::size_t k = guard_points.size();
        for (std::size_t i = 0; i < k; ++i) {
            const double a = guard_points[i] + g;
            const double b = (i + 1 < k ? guard_points[i + 1] : guard_points[0] + period) - g;
            // grading deep enough to resolve structure on the scale of the
            // smallest guard halfwidth used in the extrapolation
            if (b > a) parts.push_back(detail::gauss_segment(f, a, b, true, true, 48, 28));
        }
        return detail::pairwise_sum(parts);
    };

    std::vector<double> seq;
    double g = cfg.guard_halfwidth;
    const int levels = std::max(5, cfg.richardson_levels + 2);
    for (int l = 0; l < levels; ++l, g *= 0.5) seq.push_back(guarded(g));

    // Aitken extrapolation on each consecutive triple, assuming the guard
    // deficit shrinks geometrically in g; the spread of the extrapolants is
    // the error estimate.
    std::vector<double> extrap;
    for (std::size_t i = 2; i < seq.size(); ++i) {
        const double d1 = seq[i - 1] - seq[i - 2];
        const double d2 = seq[i] - seq[i - 1];
        double a = seq[i];
        if (std::abs(d1 - d2) > 1e-300) {
            const double q = d2 / d1;
            if (std::isfinite(q) && std::abs(q) < 0.97) a = seq[i] + d2 * q / (1.0 - q);
        }
        extrap.push_back(a);
    }
    const double value = extrap.back();
    const double resid = extrap.size() >= 2
                             ? std::abs(extrap.back() - extrap[extrap.size() - 2])
                             : std::abs(seq.back() - seq[seq.size() - 2]);
    IntegralResult res;
    res.value = value;
    res.error_estimate = std::max(resid, 1e-16);
    res.n_samples = cfg.n_samples;
    if (res.error_estimate > 100.0 * std::max(cfg.tolerance, 1e-8) * (1.0 + std::abs(value)))
        throw NonConvergent("integrate_with_guards: extrapolation residual " +
                            std::to_string(res.error_estimate));
    return res;
}

/// Bisection to bracket width 1e-13.
inline double refine_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BadBracket("refine_root: f has the same sign at both bracket ends");
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// All sign-change roots of f on [lo, hi) from a uniform scan, refined by
/// bisection. Returns sorted roots.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                      int n) {
    std::vector<double> roots;
    double prev_t = lo, prev_v = f(lo);
    for (int i = 1; i <= n; ++i) {
        const double t = lo + (hi - lo) * i / n;
        const double v = f(t);
        if (prev_v == 0.0) {
            roots.push_back(prev_t);
        } else if (v != 0.0 && (prev_v > 0.0) != (v > 0.0)) {
            roots.push_back(refine_root(f, prev_t, t));
        }
        prev_t = t;
        prev_v = v;
    }
    return roots;
}

}  // namespace rosette
