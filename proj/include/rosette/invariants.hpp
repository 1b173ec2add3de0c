#pragma once

#include <atomic>
#include <cmath>

#include "rosette/errors.hpp"
#include "rosette/quadrature.hpp"
#include "rosette/wavefront.hpp"

namespace rosette {

/// k-width of a rosette, w_k(theta) = p(theta) - (-1)^k p(theta+k*pi), with
/// exact derivatives.
class WidthFunction {
  public:
    WidthFunction(Rosette parent, int k) : parent_(std::move(parent)), k_(k) {
        if (k_ < 1 || k_ > parent_.rotation_number())
            throw std::invalid_argument("width index out of [1, m]");
    }

    const Rosette& parent() const { return parent_; }
    int k() const { return k_; }
    double period() const { return parent_.period(); }

    double operator()(double theta, int order = 0) const {
        const double sign = (k_ % 2 == 0) ? -1.0 : 1.0;
        return parent_.support().eval(theta, order) +
               sign * parent_.support().eval(theta + k_ * kPi, order);
    }

  private:
    Rosette parent_;
    int k_;
};

namespace detail {

inline std::atomic<long>& acos_clamp_counter() {
    static std::atomic<long> n{0};
    return n;
}

inline double clamped_acos(double x) {
    if (x < -1.0 || x > 1.0) {
        acos_clamp_counter().fetch_add(1, std::memory_order_relaxed);
        x = std::clamp(x, -1.0, 1.0);
    }
    return std::acos(x);
}

inline void require_cuspidal_edge(const FrontBranch& b, double theta) {
    const double r = b.curvature_ratio(theta);
    if (std::abs(b.curvature_ratio(theta, 1)) < 1e-8 * (1.0 + std::abs(r)))
        throw SwallowtailPoint("invariant undefined at a swallowtail, theta = " +
                               std::to_string(theta));
}

}  // namespace detail

inline long acos_clamp_count() { return detail::acos_clamp_counter().load(); }

/// Geodesic curvature of the slice {lambda} x S^1, closed form
/// w_k/(|s| sqrt(1+w_k^2)).
inline double geodesic_curvature(const FrontBranch& b, double lambda, double theta) {
    if (std::abs(lambda - b.singular_lambda(theta)) < 1e-6)
        throw NearSingular("geodesic curvature: slice point inside the singular guard band");
    const double w = b.width(theta);
    return w / (std::abs(b.s(lambda, theta)) * std::sqrt(1.0 + w * w));
}

/// Same quantity by the definitional determinant route
/// det(gamma', gamma'', nu)/|gamma'|^3 along the slice.
inline double geodesic_curvature_det(const FrontBranch& b, double lambda, double theta) {
    if (std::abs(lambda - b.singular_lambda(theta)) < 1e-6)
        throw NearSingular("geodesic curvature: slice point inside the singular guard band");
    const Rosette& r = b.parent();
    const double s = b.s(lambda, theta);
    const double s1 = lambda * r.radius(theta, 1) - (1.0 - lambda) * r.radius(theta + b.k() * kPi, 1);
    const Frame fr = r.frame(theta);
    const Vec3 d1{0.0, s * fr.t};
    const Vec3 d2{0.0, s1 * fr.t + s * fr.n};
    return det(d1, d2, b.normal(theta)) / std::pow(std::abs(s), 3.0);
}

/// Integrand of the slice geodesic-curvature integral per d(theta): the
/// arclength factor |s| cancels, leaving w_k/sqrt(1+w_k^2) for every slice.
inline double geodesic_measure(const FrontBranch& b, double theta) {
    const double w = b.width(theta);
    return w / std::sqrt(1.0 + w * w);
}

/// Singular curvature on a cuspidal edge: the CSS-curvature closed form.
inline double singular_curvature(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    CssBranch css(b.parent(), b.k());
    const double w = b.width(theta), w1 = b.width(theta, 1);
    const double q = (w * w + w1 * w1) / (1.0 + w * w + w1 * w1);
    return css.curvature(theta) * std::sqrt(1.0 + w * w) / w * std::pow(q, 1.5);
}

/// Singular curvature by its definition: sgn(d lambda_psi(eta)) times
/// mu(psi(sigma'), D psi(sigma'))/|psi(sigma')|^3 along the singular curve.
inline double singular_curvature_def(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    const double l1 = b.singular_lambda(theta, 1);
    // eta = sgn(lambda_k') d/dtheta makes (sigma', eta) positively oriented;
    // d lambda_psi(eta) = sgn(lambda_k') s_theta sqrt(1+w^2) with
    // s_theta = -lambda_k'(rho+rho~) on the singular set, hence sign -1.
    const double w = b.width(theta);
    const double s_t = b.singular_lambda(theta) * b.parent().radius(theta, 1) -
                       (1.0 - b.singular_lambda(theta)) * b.parent().radius(theta + b.k() * kPi, 1);
    const double dlpsi = (l1 > 0.0 ? 1.0 : -1.0) * s_t * std::sqrt(1.0 + w * w);
    const double sgn = (dlpsi > 0.0) ? 1.0 : -1.0;
    const Vec3 g1 = b.singular_image(theta, 1);
    const Vec3 g2 = b.singular_image(theta, 2);
    // mu(X, Y) = det(X, Y, nu); the nu-component of the covariant derivative
    // drops out of the determinant, so no explicit projection is needed.
    return sgn * det(g1, g2, b.normal(theta)) / std::pow(g1.norm(), 3.0);
}

/// Integrand of the total singular-curvature integral per d(theta): the
/// kappa_s dtau measure, combined analytically so the |r'| blow-up of
/// kappa_s cancels against the vanishing arclength factor at swallowtails.
inline double singular_measure(const FrontBranch& b, double theta) {
    const double w = b.width(theta), w1 = b.width(theta, 1), w2 = b.width(theta, 2);
    return -(w + w2) * std::sqrt(1.0 + w * w) / (1.0 + w * w + w1 * w1);
}

/// Limiting normal curvature <gamma_hat'', nu>/|gamma_hat'|^2 along the
/// image singular curve, with finite-difference derivatives so the test is
/// genuinely numeric (the analytic value collapses to 0 identically).
inline double limiting_normal_curvature(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    auto g = [&](double t) { return b.singular_image(t); };
    auto at = [&](double h) {
        const Vec3 g1 = (g(theta - 2.0 * h) - 8.0 * g(theta - h) + 8.0 * g(theta + h) -
                         g(theta + 2.0 * h)) /
                        (12.0 * h);
        const Vec3 g2 = (-g(theta - 2.0 * h) + 16.0 * g(theta - h) - 30.0 * g(theta) +
                         16.0 * g(theta + h) - g(theta + 2.0 * h)) /
                        (12.0 * h * h);
        return g2.dot(b.normal(theta)) / g1.dot(g1);
    };
    // fourth-order stencils at h and h/2, Richardson-combined
    const double h = 2e-3;
    return (16.0 * at(0.5 * h) - at(h)) / 15.0;
}

/// Cuspidal curvature along the edge, closed form
/// 2 sqrt(kappa~ (kappa+kappa~)/kappa) / sqrt|r'| * (1+w^2+w'^2)^{3/4}/(1+w^2)^{5/4}.
inline double cuspidal_curvature(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    const double ka = b.parent().curvature(theta);
    const double kb = b.parent().curvature(theta + b.k() * kPi);
    const double r1 = b.curvature_ratio(theta, 1);
    const double w = b.width(theta), w1 = b.width(theta, 1);
    return 2.0 * std::sqrt(kb * (ka + kb) / ka) / std::sqrt(std::abs(r1)) *
           std::pow(1.0 + w * w + w1 * w1, 0.75) / std::pow(1.0 + w * w, 1.25);
}

namespace detail {

/// f_{eta eta} and related eta-derivatives at the singular point
/// (lambda_k(theta), theta); eta = e d/dtheta with e = sgn(lambda_k').
struct EtaDerivatives {
    Vec3 f_ee;   // f_theta_theta (e^2 = 1)
    Vec3 f_eee;  // e * f_theta_theta_theta
    Vec3 f_ee_along;  // d/dtheta of f_theta_theta along the singular curve
};

inline EtaDerivatives eta_derivatives(const FrontBranch& b, double theta) {
    const Rosette& r = b.parent();
    const double ts = theta + b.k() * kPi;
    const double l0 = b.singular_lambda(theta), l1 = b.singular_lambda(theta, 1);
    const double e = (l1 > 0.0) ? 1.0 : -1.0;
    const double s0 = b.s(l0, theta);
    const double s_t = l0 * r.radius(theta, 1) - (1.0 - l0) * r.radius(ts, 1);
    const double s_tt = l0 * r.radius(theta, 2) - (1.0 - l0) * r.radius(ts, 2);
    const double s_l = r.radius(theta) + r.radius(ts);
    const double s_tl = r.radius(theta, 1) + r.radius(ts, 1);
    const Frame fr = r.frame(theta);
    const Vec2 er{std::cos(theta), std::sin(theta)};
    EtaDerivatives d;
    d.f_ee = {0.0, s_t * fr.t - s0 * er};
    d.f_eee = e * Vec3{0.0, (s_tt - s0) * fr.t - 2.0 * s_t * er};
    // d/dtheta f_theta_theta(lambda_k(theta), theta) = l' f_theta_theta_lambda + f_theta_theta_theta
    d.f_ee_along = l1 * Vec3{0.0, s_tl * fr.t - s_l * er} +
                   Vec3{0.0, (s_tt - s0) * fr.t - 2.0 * s_t * er};
    return d;
}

}  // namespace detail

/// Cuspidal curvature by its definition,
/// |g'|^{3/2} det(g', f_ee, f_eee)/|g' x f_ee|^{5/2} with g = gamma_hat.
inline double cuspidal_curvature_def(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    const Vec3 g1 = b.singular_image(theta, 1);
    const auto d = detail::eta_derivatives(b, theta);
    return std::pow(g1.norm(), 1.5) * det(g1, d.f_ee, d.f_eee) /
           std::pow(cross(g1, d.f_ee).norm(), 2.5);
}

/// Cusp-directional torsion, closed form
/// -(kappa+kappa~)^2/(kappa^2 r') * 1/(1+w^2).
inline double cusp_directional_torsion(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    const double ka = b.parent().curvature(theta);
    const double kb = b.parent().curvature(theta + b.k() * kPi);
    const double r1 = b.curvature_ratio(theta, 1);
    const double w = b.width(theta);
    return -(ka + kb) * (ka + kb) / (ka * ka * r1) / (1.0 + w * w);
}

/// Cusp-directional torsion by its definition (two-determinant formula).
inline double cusp_directional_torsion_def(const FrontBranch& b, double theta) {
    detail::require_cuspidal_edge(b, theta);
    const Vec3 g1 = b.singular_image(theta, 1);
    const Vec3 g2 = b.singular_image(theta, 2);
    const auto d = detail::eta_derivatives(b, theta);
    const double cx2 = cross(g1, d.f_ee).dot(cross(g1, d.f_ee));
    return det(g1, d.f_ee, d.f_ee_along) / cx2 -
           det(g1, d.f_ee, g2) * g1.dot(d.f_ee) / (g1.dot(g1) * cx2);
}

/// Integrand of the total cusp-directional-torsion integral per d(theta):
/// kappa_t |gamma_hat'| = -sgn(r') sqrt(1+w^2+w'^2)/(1+w^2), bounded with a
/// jump at each swallowtail.
inline double kt_measure(const FrontBranch& b, double theta) {
    const double r1 = b.curvature_ratio(theta, 1);
    const double w = b.width(theta), w1 = b.width(theta, 1);
    return -(r1 > 0.0 ? 1.0 : -1.0) * std::sqrt(1.0 + w * w + w1 * w1) / (1.0 + w * w);
}

/// Space-curve torsion of the image singular curve, from analytic
/// derivatives of gamma_hat.
inline double torsion(const FrontBranch& b, double theta) {
    const Vec3 g1 = b.singular_image(theta, 1);
    const Vec3 g2 = b.singular_image(theta, 2);
    const Vec3 g3 = b.singular_image(theta, 3);
    const Vec3 c = cross(g1, g2);
    const double c2 = c.dot(c);
    if (c2 < 1e-30)
        throw DegenerateSingularity("torsion: vanishing curvature of the singular image");
    return det(g1, g2, g3) / c2;
}

/// Total torsion of the image singular curve over the closed fundamental
/// domain, guarded at the swallowtail parameters.
inline IntegralResult total_torsion(const FrontBranch& b, const QuadratureConfig& cfg = {}) {
    auto integrand = [&](double t) { return torsion(b, t) * b.singular_image(t, 1).norm(); };
    return integrate_with_guards(integrand, b.domain(), b.swallowtails(), cfg);
}

/// Total cusp-directional torsion over the closed singular curve.
inline IntegralResult total_cusp_directional_torsion(const FrontBranch& b,
                                                     const QuadratureConfig& cfg = {}) {
    auto integrand = [&](double t) { return kt_measure(b, t); };
    return integrate_with_guards(integrand, b.domain(), b.swallowtails(), cfg);
}

/// cos of the angle between the rosette tangent at gamma(theta) and the
/// chord gamma(theta+k*pi) - gamma(theta): -w'/sqrt(w^2+w'^2).
inline double beta_angle(const FrontBranch& b, double theta) {
    const double w = b.width(theta), w1 = b.width(theta, 1);
    return detail::clamped_acos(-w1 / std::sqrt(w * w + w1 * w1));
}

/// Sector angle alpha_+ at a singular point on the half slice {1/2} x S^1.
inline double alpha_plus(const FrontBranch& b, double theta) {
    if (std::abs(b.singular_lambda(theta) - 0.5) > 1e-10)
        throw NotOnSlice("alpha_plus: theta is not a half-slice singular parameter");
    const double w = b.width(theta), w1 = b.width(theta, 1);
    const double amp = std::sqrt((w * w + w1 * w1) / (1.0 + w * w + w1 * w1));
    return detail::clamped_acos(amp * std::cos(beta_angle(b, theta)));
}

}  // namespace rosette
