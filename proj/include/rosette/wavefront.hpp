#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "rosette/equidistant.hpp"
#include "rosette/errors.hpp"
#include "rosette/rosette.hpp"

namespace rosette {

enum class SingularKind { CuspidalEdge, Swallowtail };
enum class PeakSign { NotAPeak, Positive, Negative };

struct SingularPoint {
    double theta = 0.0;
    double lambda = 0.0;  // = lambda_k(theta)
    SingularKind kind = SingularKind::CuspidalEdge;
    PeakSign peak = PeakSign::NotAPeak;  // swallowtails are the peaks here
    Vec3 location3d;
    Vec2 css_shadow;
};

/// A point of the parameter domain M = [0,1] x S^1.
struct SurfacePoint {
    double lambda = 0.0;
    double theta = 0.0;
};

/// C^1 path t -> M; velocity is optional (finite differences otherwise).
struct ParamCurve {
    std::function<SurfacePoint(double)> position;
    std::function<SurfacePoint(double)> velocity;
};

/// One branch of the extended affine wave front of a rosette:
/// f(lambda,theta) = (lambda, lambda*gamma(theta) + (1-lambda)*gamma(theta+k*pi)),
/// a ruled surface in R x R^2 which is a front for odd k.
class FrontBranch {
  public:
    FrontBranch(Rosette parent, int k) : parent_(std::move(parent)), k_(k) {
        if (k_ < 1 || k_ > parent_.rotation_number() || k_ % 2 == 0)
            throw std::invalid_argument("front branch index must be odd in [1, m]");
    }

    const Rosette& parent() const { return parent_; }
    int k() const { return k_; }
    double domain() const { return parent_.period(); }

    /// Chord-length generator w_k = p(theta) + p(theta + k*pi) (k odd) and
    /// its exact derivatives.
    double width(double theta, int order = 0) const {
        return parent_.support().eval(theta, order) +
               parent_.support().eval(theta + k_ * kPi, order);
    }

    /// gamma(theta) - gamma(theta+k*pi) = w e_r + w' t in the moving frame.
    Vec2 chord(double theta) const {
        return parent_.point(theta) - parent_.point(theta + k_ * kPi);
    }

    Vec3 f(double lambda, double theta) const {
        return {lambda, lambda * parent_.point(theta) +
                            (1.0 - lambda) * parent_.point(theta + k_ * kPi)};
    }

    Vec3 f_lambda(double theta) const { return {1.0, chord(theta)}; }

    /// Radius of curvature of the lambda-slice; f_theta = s(lambda,theta) t.
    double s(double lambda, double theta) const {
        return lambda * parent_.radius(theta) - (1.0 - lambda) * parent_.radius(theta + k_ * kPi);
    }

    Vec3 f_theta(double lambda, double theta) const {
        return {0.0, s(lambda, theta) * parent_.frame(theta).t};
    }

    Vec3 f_lambda_theta(double theta) const {
        const double rr = parent_.radius(theta) + parent_.radius(theta + k_ * kPi);
        return {0.0, rr * parent_.frame(theta).t};
    }

    /// Unit normal (w_k, n(theta))/sqrt(1+w_k^2); independent of lambda. With
    /// this sign the signed area density is already negative on
    /// M^- = {lambda < lambda_k}, so no global flip is applied.
    Vec3 normal(double theta) const {
        const double w = width(theta);
        const Vec3 nu{w, parent_.frame(theta).n};
        return nu / std::sqrt(1.0 + w * w);
    }

    /// det(f_lambda, f_theta, nu) = s(lambda,theta) sqrt(1+w^2); vanishes
    /// exactly on the singular set.
    double signed_area_density(double lambda, double theta) const {
        const double w = width(theta);
        return s(lambda, theta) * std::sqrt(1.0 + w * w);
    }

    /// lambda_k(theta) = kappa(theta)/(kappa(theta)+kappa(theta+k pi)) and
    /// derivatives up to order 3.
    double singular_lambda(double theta, int order = 0) const {
        return detail::singular_lambda(parent_, k_, theta, order);
    }

    /// r = kappa(theta+k pi)/kappa(theta) = rho(theta)/rho(theta+k pi);
    /// lambda_k = 1/(1+r). Orders 0..2.
    double curvature_ratio(double theta, int order = 0) const {
        const double rho = parent_.radius(theta), rhs = parent_.radius(theta + k_ * kPi);
        if (order == 0) return rho / rhs;
        const double rho1 = parent_.radius(theta, 1), rhs1 = parent_.radius(theta + k_ * kPi, 1);
        if (order == 1) return (rho1 * rhs - rho * rhs1) / (rhs * rhs);
        const double rho2 = parent_.radius(theta, 2), rhs2 = parent_.radius(theta + k_ * kPi, 2);
        if (order == 2)
            return (rho2 * rhs - rho * rhs2) / (rhs * rhs) -
                   2.0 * rhs1 * (rho1 * rhs - rho * rhs1) / (rhs * rhs * rhs);
        throw std::invalid_argument("curvature_ratio supports orders 0..2");
    }

    SingularPoint classify(double theta) const {
        const double r = curvature_ratio(theta);
        const double r1 = curvature_ratio(theta, 1);
        const double r2 = curvature_ratio(theta, 2);
        const double tol = 1e-7 * (1.0 + std::abs(r));
        SingularPoint sp;
        sp.theta = theta;
        sp.lambda = singular_lambda(theta);
        sp.location3d = f(sp.lambda, theta);
        sp.css_shadow = sp.location3d.planar();
        if (std::abs(r1) > tol) {
            sp.kind = SingularKind::CuspidalEdge;
            return sp;
        }
        if (std::abs(r2) <= tol)
            throw DegenerateSingularity("front classify: r' and r'' both vanish at theta = " +
                                        std::to_string(theta));
        sp.kind = SingularKind::Swallowtail;
        // lambda_k'' = -r''/(1+r)^2 at the critical point: r'' > 0 puts a
        // local maximum of lambda_k there, which is a positive peak.
        sp.peak = (r2 > 0.0) ? PeakSign::Positive : PeakSign::Negative;
        return sp;
    }

    /// Swallowtail parameters: zeros of r' on [0, 2m pi).
    std::vector<double> swallowtails() const {
        auto ratio_deriv = [this](double t) {
            const double rho = parent_.radius(t), rhs = parent_.radius(t + k_ * kPi);
            return parent_.radius(t, 1) * rhs - rho * parent_.radius(t + k_ * kPi, 1);
        };
        return detail::cusp_roots(ratio_deriv, domain(), parent_.rotation_number(),
                                  parent_.rho_min() * parent_.rho_min());
    }

    std::vector<SingularPoint> singular_points() const {
        std::vector<SingularPoint> out;
        for (double t : swallowtails()) out.push_back(classify(t));
        return out;
    }

    /// Image of the singular curve, gamma_hat(theta) = f(lambda_k(theta), theta),
    /// with analytic derivatives up to order 3 from the quotient-rule
    /// derivatives of lambda_k.
    Vec3 singular_image(double theta, int order = 0) const {
        const double l0 = singular_lambda(theta);
        if (order == 0) return f(l0, theta);
        const double l1 = singular_lambda(theta, 1);
        const Vec3 fl = f_lambda(theta);
        if (order == 1) return l1 * fl + f_theta(l0, theta);
        const double l2 = singular_lambda(theta, 2);
        const Vec3 flt = f_lambda_theta(theta);
        const Frame fr = parent_.frame(theta);
        const double s0 = s(l0, theta);
        const double s_t = l0 * parent_.radius(theta, 1) -
                           (1.0 - l0) * parent_.radius(theta + k_ * kPi, 1);
        if (order == 2)
            return l2 * fl + 2.0 * l1 * flt + Vec3{0.0, s_t * fr.t + s0 * fr.n};
        const double l3 = singular_lambda(theta, 3);
        const double s_l = parent_.radius(theta) + parent_.radius(theta + k_ * kPi);
        const double s_tl = parent_.radius(theta, 1) + parent_.radius(theta + k_ * kPi, 1);
        const double s_tt = l0 * parent_.radius(theta, 2) -
                            (1.0 - l0) * parent_.radius(theta + k_ * kPi, 2);
        const Vec3 flt_prime{0.0, s_tl * fr.t - s_l * Vec2{std::cos(theta), std::sin(theta)}};
        const Vec2 er{std::cos(theta), std::sin(theta)};
        if (order == 3)
            return l3 * fl + 3.0 * l2 * flt + 2.0 * l1 * flt_prime +
                   Vec3{0.0, (l1 * s_tl + s_tt - s0) * fr.t - (l1 * s_l + 2.0 * s_t) * er};
        throw std::invalid_argument("singular_image supports orders 0..3");
    }

    /// Numeric Gaussian curvature by finite-difference partials of f and the
    /// determinant form of the second fundamental form. Exists as an oracle:
    /// the surface is flat wherever it is regular.
    double gaussian_curvature_numeric(double lambda, double theta) const {
        if (std::abs(lambda - singular_lambda(theta)) < 1e-6)
            throw NearSingular("gaussian curvature: point inside the singular guard band");
        const double h = 1e-3;
        auto F = [&](double l, double t) { return f(l, t); };
        const Vec3 fl = (F(lambda + h, theta) - F(lambda - h, theta)) / (2.0 * h);
        const Vec3 ft = (F(lambda, theta + h) - F(lambda, theta - h)) / (2.0 * h);
        const Vec3 fll =
            (F(lambda + h, theta) - 2.0 * F(lambda, theta) + F(lambda - h, theta)) / (h * h);
        const Vec3 ftt =
            (F(lambda, theta + h) - 2.0 * F(lambda, theta) + F(lambda, theta - h)) / (h * h);
        const Vec3 flt = (F(lambda + h, theta + h) - F(lambda + h, theta - h) -
                          F(lambda - h, theta + h) + F(lambda - h, theta - h)) /
                         (4.0 * h * h);
        const double e = fl.dot(fl), g = ft.dot(ft), fdot = fl.dot(ft);
        const double metric = e * g - fdot * fdot;
        if (metric < 1e-20)
            throw NearSingular("gaussian curvature: degenerate first fundamental form");
        const double num = det(fll, fl, ft) * det(ftt, fl, ft) - det(flt, fl, ft) * det(flt, fl, ft);
        return num / (metric * metric);
    }

    /// E-initial vector of a C^1 curve into M ending at a singular point at
    /// t=0: the t->0+ limit of the normalized push-forward of the velocity,
    /// projected onto the fiber (the nu-orthogonal plane) at the endpoint.
    /// The projection realizes the covariant-derivative limit in the case of
    /// a null initial velocity; for a non-null velocity it is a no-op in the
    /// limit.
    Vec3 initial_vector(const ParamCurve& curve) const {
        const SurfacePoint p0 = curve.position(0.0);
        const Vec3 nu = normal(p0.theta);
        auto push = [&](double t) {
            SurfacePoint v;
            if (curve.velocity) {
                v = curve.velocity(t);
            } else {
                const double h = std::max(0.25 * t, 1e-9);
                const SurfacePoint a = curve.position(t - h), b = curve.position(t + h);
                v = {(b.lambda - a.lambda) / (2.0 * h), (b.theta - a.theta) / (2.0 * h)};
            }
            const SurfacePoint q = curve.position(t);
            return v.lambda * f_lambda(q.theta) + v.theta * f_theta(q.lambda, q.theta);
        };
        Vec3 prev;
        bool have_prev = false;
        int stable = 0;
        for (int n = 4; n <= 44; ++n) {
            const double t = std::ldexp(1.0, -n);
            Vec3 v = push(t);
            v = v - v.dot(nu) * nu;
            const double len = v.norm();
            if (len < 1e-300) continue;
            const Vec3 u = v / len;
            if (have_prev && (u - prev).norm() < 5e-7) {
                if (++stable >= 2) return u;
            } else {
                stable = 0;
            }
            prev = u;
            have_prev = true;
        }
        throw NoLimit("initial_vector: the normalized limit did not stabilize");
    }

  private:
    Rosette parent_;
    int k_;
};

}  // namespace rosette
