#pragma once

#include <cmath>
#include <utility>

#include "rosette/errors.hpp"
#include "rosette/fourier.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

struct Frame {
    Vec2 t;  // unit tangent, gamma'(theta) = rho(theta) * t(theta)
    Vec2 n;  // unit normal, n(theta) = -(cos theta, sin theta)
};

/// Planar m-rosette given by a validated support function. The canonical
/// parameter domain is [0, 2*m*pi); angles are never reduced mod 2*pi.
class Rosette {
  public:
    explicit Rosette(SupportFunction sf) : sf_(std::move(sf)) {
        const auto cert = is_rosette(sf_);
        if (!cert.ok) throw NotARosette(cert.theta_min, cert.rho_min);
        rho_min_ = cert.rho_min;
    }

    const SupportFunction& support() const { return sf_; }
    int rotation_number() const { return sf_.rotation_number(); }
    double period() const { return sf_.period(); }
    double rho_min() const { return rho_min_; }

    /// gamma(theta) = (p cos - p' sin, p sin + p' cos).
    Vec2 point(double theta) const {
        const double p = sf_.eval(theta), p1 = sf_.eval(theta, 1);
        const double c = std::cos(theta), s = std::sin(theta);
        return {p * c - p1 * s, p * s + p1 * c};
    }

    /// d^order gamma / d theta^order for order 1..3, analytic:
    /// gamma'   = rho t
    /// gamma''  = rho' t - rho e_r
    /// gamma''' = (rho'' - rho) t - 2 rho' e_r
    Vec2 derivative(double theta, int order) const {
        const double c = std::cos(theta), s = std::sin(theta);
        const Vec2 er{c, s}, t{-s, c};
        switch (order) {
            case 1:
                return radius(theta) * t;
            case 2:
                return radius(theta, 1) * t - radius(theta) * er;
            case 3:
                return (radius(theta, 2) - radius(theta)) * t - 2.0 * radius(theta, 1) * er;
            default:
                throw std::invalid_argument("Rosette::derivative supports orders 1..3");
        }
    }

    Frame frame(double theta) const {
        const double c = std::cos(theta), s = std::sin(theta);
        return {{-s, c}, {-c, -s}};
    }

    /// rho(theta) = p + p'' and its theta-derivatives, exact.
    double radius(double theta, int order = 0) const {
        return sf_.radius_of_curvature(theta, order);
    }

    double curvature(double theta) const { return 1.0 / radius(theta); }

    /// theta + k*pi; gamma(theta), gamma(theta + k*pi) is a parallel pair.
    double parallel_partner(double theta, int k) const {
        if (k < 1 || k > rotation_number())
            throw std::invalid_argument("parallel_partner: k out of 1..m");
        return theta + k * kPi;
    }

    /// Winding number of the unit tangent over [0, period), by accumulated
    /// turning angle. For a rosette this equals m exactly.
    int winding_number(int samples = 4096) const {
        const int n = samples * rotation_number();
        double total = 0.0;
        Vec2 prev = frame(0.0).t;
        for (int i = 1; i <= n; ++i) {
            const Vec2 cur = frame(period() * i / n).t;
            total += std::atan2(det(prev, cur), prev.dot(cur));
            prev = cur;
        }
        return static_cast<int>(std::lround(total / kTwoPi));
    }

  private:
    SupportFunction sf_;
    double rho_min_ = 0.0;
};

}  // namespace rosette
