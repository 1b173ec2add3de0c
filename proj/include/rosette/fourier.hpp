#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rosette/errors.hpp"
#include "rosette/geometry.hpp"

namespace rosette {

/// One harmonic a*cos(j*theta/m) + b*sin(j*theta/m) of a support function.
struct FourierTerm {
    int j = 0;  // harmonic index; frequency is j/m
    double a = 0.0;
    double b = 0.0;
};

/// Truncated Fourier series p(theta) = a0 + sum_j a_j cos(j theta/m) + b_j sin(j theta/m),
/// 2*m*pi periodic. Derivatives of any order are evaluated exactly from the
/// coefficients; no numerical differentiation happens anywhere in this class.
class SupportFunction {
  public:
    static constexpr int kMaxDerivativeOrder = 6;

    SupportFunction(int m, double a0, std::vector<FourierTerm> terms)
        : m_(m), a0_(a0), terms_(std::move(terms)) {
        if (m_ < 1) throw std::invalid_argument("rotation number m must be positive");
        for (const auto& t : terms_) {
            if (t.j < 1) throw std::invalid_argument("harmonic index must be positive");
        }
        normalize();
    }

    int rotation_number() const { return m_; }
    double constant_term() const { return a0_; }
    const std::vector<FourierTerm>& terms() const { return terms_; }
    double period() const { return kTwoPi * m_; }

    /// Highest frequency present (in units of 1/theta), i.e. max j / m.
    double bandwidth() const {
        int jmax = 0;
        for (const auto& t : terms_) jmax = std::max(jmax, t.j);
        return static_cast<double>(jmax) / m_;
    }

    /// d^order p / d theta^order, evaluated analytically.
    double eval(double theta, int order = 0) const {
        if (order < 0 || order > kMaxDerivativeOrder)
            throw std::invalid_argument("derivative order out of range [0,6]");
        double v = (order == 0) ? a0_ : 0.0;
        for (const auto& t : terms_) {
            const double f = static_cast<double>(t.j) / m_;
            double a = t.a, b = t.b;
            // d/dtheta [a cos(f th) + b sin(f th)] = (b f) cos(f th) + (-a f) sin(f th)
            for (int o = 0; o < order; ++o) {
                const double an = b * f;
                b = -a * f;
                a = an;
            }
            v += a * std::cos(f * theta) + b * std::sin(f * theta);
        }
        return v;
    }

    double operator()(double theta, int order = 0) const { return eval(theta, order); }

    /// rho(theta) = p(theta) + p''(theta), and its exact theta-derivatives.
    double radius_of_curvature(double theta, int order = 0) const {
        return eval(theta, order) + eval(theta, order + 2);
    }

    /// p(theta + delta) expressed in the same Fourier basis.
    SupportFunction shifted(double delta) const {
        std::vector<FourierTerm> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            const double phi = static_cast<double>(t.j) / m_ * delta;
            const double c = std::cos(phi), s = std::sin(phi);
            out.push_back({t.j, t.a * c + t.b * s, -t.a * s + t.b * c});
        }
        return SupportFunction(m_, a0_, std::move(out));
    }

    SupportFunction scaled(double c) const {
        std::vector<FourierTerm> out = terms_;
        for (auto& t : out) {
            t.a *= c;
            t.b *= c;
        }
        return SupportFunction(m_, c * a0_, std::move(out));
    }

    /// ca*p + cb*q for support functions with the same rotation number.
    static SupportFunction combine(double ca, const SupportFunction& p, double cb,
                                   const SupportFunction& q) {
        if (p.m_ != q.m_)
            throw std::invalid_argument("combine requires equal rotation numbers");
        std::vector<FourierTerm> out;
        out.reserve(p.terms_.size() + q.terms_.size());
        for (const auto& t : p.terms_) out.push_back({t.j, ca * t.a, ca * t.b});
        for (const auto& t : q.terms_) out.push_back({t.j, cb * t.a, cb * t.b});
        return SupportFunction(p.m_, ca * p.a0_ + cb * q.a0_, std::move(out));
    }

  private:
    void normalize() {
        // Merge duplicate harmonics and drop vanishing ones.
        std::map<int, std::pair<double, double>> acc;
        for (const auto& t : terms_) {
            acc[t.j].first += t.a;
            acc[t.j].second += t.b;
        }
        terms_.clear();
        for (const auto& [j, ab] : acc) {
            if (ab.first != 0.0 || ab.second != 0.0)
                terms_.push_back({j, ab.first, ab.second});
        }
    }

    int m_;
    double a0_;
    std::vector<FourierTerm> terms_;
};

struct RosetteCertificate {
    bool ok = false;
    double theta_min = 0.0;  // minimizing angle found
    double rho_min = 0.0;    // minimum radius of curvature found
};

/// Checks min_theta rho(theta) > 0 by dense scan plus golden-section refinement.
/// The scan density exceeds twice the top frequency of rho, so a sign change
/// cannot slip between samples.
inline RosetteCertificate is_rosette(const SupportFunction& sf, int samples_per_turn = 4096) {
    const double period = sf.period();
    const int n = samples_per_turn * sf.rotation_number();
    double best_theta = 0.0;
    double best = sf.radius_of_curvature(0.0);
    for (int i = 1; i < n; ++i) {
        const double th = period * i / n;
        const double r = sf.radius_of_curvature(th);
        if (r < best) {
            best = r;
            best_theta = th;
        }
    }
    // Golden-section refinement around the best sample.
    double lo = best_theta - period / n;
    double hi = best_theta + period / n;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = sf.radius_of_curvature(c);
    double fd = sf.radius_of_curvature(d);
    for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = sf.radius_of_curvature(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = sf.radius_of_curvature(d);
        }
    }
    const double theta_min = 0.5 * (lo + hi);
    const double rho_min = sf.radius_of_curvature(theta_min);
    RosetteCertificate cert;
    cert.theta_min = (rho_min < best) ? theta_min : best_theta;
    cert.rho_min = std::min(rho_min, best);
    cert.ok = cert.rho_min > 0.0;
    return cert;
}

}  // namespace rosette
