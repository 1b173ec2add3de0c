#pragma once

#include <cmath>
#include <vector>

#include "rosette/errors.hpp"
#include "rosette/quadrature.hpp"
#include "rosette/rosette.hpp"

namespace rosette {

namespace detail {

/// lambda_k(theta) = kappa(theta)/(kappa(theta)+kappa(theta+k pi))
///                 = rho(theta+k pi)/(rho(theta)+rho(theta+k pi)),
/// and its theta-derivatives up to order 3, by the quotient rule.
inline double singular_lambda(const Rosette& r, int k, double theta, int order = 0) {
    const double ts = theta + k * kPi;
    const double n0 = r.radius(ts), d0 = r.radius(theta) + n0;
    const double l0 = n0 / d0;
    if (order == 0) return l0;
    const double n1 = r.radius(ts, 1), d1 = r.radius(theta, 1) + n1;
    const double l1 = (n1 - l0 * d1) / d0;
    if (order == 1) return l1;
    const double n2 = r.radius(ts, 2), d2 = r.radius(theta, 2) + n2;
    const double l2 = (n2 - 2.0 * l1 * d1 - l0 * d2) / d0;
    if (order == 2) return l2;
    const double n3 = r.radius(ts, 3), d3 = r.radius(theta, 3) + n3;
    const double l3 = (n3 - 3.0 * l2 * d1 - 3.0 * l1 * d2 - l0 * d3) / d0;
    if (order == 3) return l3;
    throw std::invalid_argument("singular_lambda supports orders 0..3");
}

/// Zeros of f on [0, domain), scanned at 8192*m samples, each refined to
/// 1e-13. Throws DegenerateZero for non-sign-changing near-zeros (including
/// the identically-zero case).
inline std::vector<double> cusp_roots(const std::function<double(double)>& f, double domain,
                                      int m, double scale) {
    const int n = 8192 * m;
    double fmax = 0.0;
    for (int i = 0; i < n; ++i) fmax = std::max(fmax, std::abs(f(domain * i / n)));
    if (fmax < 1e-9 * scale)
        throw DegenerateZero("cusp scan: function vanishes identically on the branch");

    auto roots = scan_roots(f, 0.0, domain, n);
    // A grazing zero (local extremum touching zero) has no sign change; the
    // scan cannot refine it and the count below would silently miss it.
    const double h = domain / n;
    for (int i = 0; i < n; ++i) {
        const double tm = domain * i / n;
        const double v0 = f(tm), vl = f(tm - h), vr = f(tm + h);
        const bool interior_min = std::abs(v0) <= std::abs(vl) && std::abs(v0) <= std::abs(vr);
        if (!interior_min || std::abs(v0) > 1e-7 * scale) continue;
        bool near_root = false;
        for (double rt : roots)
            if (std::abs(angle_distance(rt, tm, domain)) < 2.0 * h) near_root = true;
        if (!near_root && vl * vr > 0.0)
            throw DegenerateZero("cusp scan: non-sign-changing zero near theta = " +
                                 std::to_string(tm));
    }
    // Drop a wrap duplicate if a root sits at both ends of the domain.
    if (roots.size() >= 2 && roots.front() < 1e-10 && domain - roots.back() < 1e-10)
        roots.pop_back();
    return roots;
}

}  // namespace detail

/// One branch of the affine lambda-equidistant of a rosette. Branch k uses
/// the chord theta -> theta + k*pi for k <= m; for k > m the convex weights
/// are swapped and the chord is (k-m)*pi.
class EquidistantBranch {
  public:
    EquidistantBranch(Rosette parent, double lambda, int k)
        : parent_(std::move(parent)), lambda_(lambda), k_(k), derived_sf_(make_support()) {}

    const Rosette& parent() const { return parent_; }
    double lambda() const { return lambda_; }
    int k() const { return k_; }
    const SupportFunction& derived_support() const { return derived_sf_; }

    /// Chord offset and convex weight on gamma(theta) for this branch.
    double chord() const { return (k_ <= parent_.rotation_number() ? k_ : k_ - parent_.rotation_number()) * kPi; }
    double weight() const { return k_ <= parent_.rotation_number() ? lambda_ : 1.0 - lambda_; }

    /// Fundamental theta-domain: [0, m*pi) for the Wigner-caustic branch
    /// k = m (its support is (anti)periodic with m*pi), else [0, 2*m*pi).
    double domain() const {
        const int m = parent_.rotation_number();
        return (lambda_ == 0.5 && k_ == m) ? m * kPi : kTwoPi * m;
    }

    /// Convex-combination route: w*gamma(theta) + (1-w)*gamma(theta+chord).
    Vec2 point(double theta) const {
        const double w = weight();
        return w * parent_.point(theta) + (1.0 - w) * parent_.point(theta + chord());
    }

    /// Same point generated from the branch support function.
    Vec2 derived_point(double theta) const {
        const double p = derived_sf_.eval(theta), p1 = derived_sf_.eval(theta, 1);
        const double c = std::cos(theta), s = std::sin(theta);
        return {p * c - p1 * s, p * s + p1 * c};
    }

    /// Signed radius of curvature of the branch (zero exactly at cusps).
    double radius(double theta, int order = 0) const {
        return derived_sf_.radius_of_curvature(theta, order);
    }

    /// All cusp parameters in [0, domain): simple zeros of the branch radius.
    /// Only chords of odd multiple of pi can produce cusps.
    std::vector<double> cusps() const {
        const int parity = (k_ <= parent_.rotation_number()) ? k_ : k_ - parent_.rotation_number();
        if (parity % 2 == 0) return {};
        return detail::cusp_roots([this](double t) { return radius(t); }, domain(),
                                  parent_.rotation_number(), parent_.rho_min());
    }

  private:
    SupportFunction make_support() const {
        const int m = parent_.rotation_number();
        const bool half = lambda_ == 0.5;
        const int kmax = half ? m : 2 * m - 1;
        if (k_ < 1 || k_ > kmax)
            throw std::invalid_argument("equidistant branch index out of range");
        const SupportFunction& p = parent_.support();
        if (k_ <= m) {
            const double sign = (k_ % 2 == 0) ? 1.0 : -1.0;
            return SupportFunction::combine(lambda_, p, sign * (1.0 - lambda_),
                                            p.shifted(k_ * kPi));
        }
        const int kc = k_ - m;
        const double sign = (kc % 2 == 0) ? 1.0 : -1.0;
        return SupportFunction::combine(1.0 - lambda_, p, sign * lambda_,
                                        p.shifted(kc * kPi));
    }

    Rosette parent_;
    double lambda_;
    int k_;
    SupportFunction derived_sf_;
};

/// One branch of the Centre Symmetry Set: the envelope of chords through
/// parallel pairs (gamma(theta), gamma(theta+k*pi)), k odd.
class CssBranch {
  public:
    CssBranch(Rosette parent, int k) : parent_(std::move(parent)), k_(k) {
        const int m = parent_.rotation_number();
        const int kmax = 2 * ((m + 1) / 2) - 1;
        if (k_ < 1 || k_ > kmax || k_ % 2 == 0)
            throw std::invalid_argument("CSS branch index must be odd in [1, 2*ceil(m/2)-1]");
    }

    const Rosette& parent() const { return parent_; }
    int k() const { return k_; }

    double domain() const {
        const int m = parent_.rotation_number();
        return (k_ == m) ? m * kPi : kTwoPi * m;
    }

    /// Chord-weight of the envelope point on gamma(theta), and derivatives.
    double lambda(double theta, int order = 0) const {
        return detail::singular_lambda(parent_, k_, theta, order);
    }

    /// Curvature-weighted convex combination of the parallel pair.
    Vec2 point(double theta) const {
        const double l = lambda(theta);
        return l * parent_.point(theta) + (1.0 - l) * parent_.point(theta + k_ * kPi);
    }

    /// Analytic tangent: the weighted-tangent term cancels on the envelope,
    /// leaving lambda'(theta) times the (reversed) chord.
    Vec2 derivative(double theta) const {
        return lambda(theta, 1) * (parent_.point(theta) - parent_.point(theta + k_ * kPi));
    }

    /// Signed curvature by the closed-form expression in the parallel-pair
    /// parameterization.
    double curvature(double theta) const {
        const double ts = theta + k_ * kPi;
        const double rho = parent_.radius(theta), rhs = parent_.radius(ts);
        const double rho1 = parent_.radius(theta, 1), rhs1 = parent_.radius(ts, 1);
        const double ka = 1.0 / rho, kb = 1.0 / rhs;
        const double ka1 = -rho1 / (rho * rho), kb1 = -rhs1 / (rhs * rhs);
        const double denom_core = std::abs(kb1 * ka - ka1 * kb);
        const double scale = std::abs(kb1 * ka) + std::abs(ka1 * kb);
        if (denom_core < 1e-10 * std::max(scale, 1e-300))
            throw CuspSingularity("css curvature: cusp at theta = " + std::to_string(theta));
        const double w = width(theta), w1 = width(theta, 1);
        const double ksum = ka + kb;
        return -(ksum * ksum * ksum) / (ka * kb * denom_core) * w /
               std::pow(w * w + w1 * w1, 1.5);
    }

    /// All cusp parameters: zeros of (kappa(theta+k pi)/kappa(theta))'.
    std::vector<double> cusps() const {
        auto ratio_deriv = [this](double t) {
            const double ts = t + k_ * kPi;
            const double rho = parent_.radius(t), rhs = parent_.radius(ts);
            const double rho1 = parent_.radius(t, 1), rhs1 = parent_.radius(ts, 1);
            // (rho/rhs)' up to the positive factor 1/rhs^2
            return rho1 * rhs - rho * rhs1;
        };
        return detail::cusp_roots(ratio_deriv, domain(), parent_.rotation_number(),
                                  parent_.rho_min() * parent_.rho_min());
    }

    /// Chord length generator w_k and derivatives (k odd here).
    double width(double theta, int order = 0) const {
        return parent_.support().eval(theta, order) +
               parent_.support().eval(theta + k_ * kPi, order);
    }

  private:
    Rosette parent_;
    int k_;
};

/// Branch count of E_lambda: m for lambda=1/2, 2m-1 otherwise (0,1 excluded).
inline int equidistant_branch_count(const Rosette& r, double lambda) {
    const int m = r.rotation_number();
    if (lambda == 0.0 || lambda == 1.0) return m;
    return (lambda == 0.5) ? m : 2 * m - 1;
}

inline int css_branch_count(const Rosette& r) {
    return 2 * ((r.rotation_number() + 1) / 2) - 1;
}

}  // namespace rosette
