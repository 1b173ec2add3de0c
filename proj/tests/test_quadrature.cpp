#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "helpers.hpp"
#include "rosette/quadrature.hpp"

using namespace rosette;

TEST_CASE("periodic trapezoid is spectrally exact on smooth integrands") {
    const auto r1 = integrate_periodic([](double t) { return std::sin(t) * std::sin(t); },
                                       kTwoPi);
    CHECK(std::abs(r1.value - kPi) < 1e-14);

    const auto r2 = integrate_periodic([](double t) { return 1.0 / (2.0 + std::cos(t)); },
                                       kTwoPi);
    CHECK(std::abs(r2.value - kTwoPi / std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("band-limited integrands are exact at the default sampling") {
    const auto r = integrate_periodic(
        [](double t) {
            return 3.0 + std::cos(7.0 * t) - 2.0 * std::sin(11.0 * t) + std::cos(40.0 * t);
        },
        kTwoPi);
    CHECK(std::abs(r.value - 3.0 * kTwoPi) < 1e-13);
    CHECK(r.error_estimate < 1e-12);
}

TEST_CASE("halving the sample count leaves smooth integrals unchanged") {
    QuadratureConfig coarse;
    coarse.n_samples = 1 << 13;
    auto f = [](double t) { return std::exp(std::cos(t)); };
    const double full = integrate_periodic(f, kTwoPi).value;
    const double half = integrate_periodic(f, kTwoPi, coarse).value;
    CHECK(std::abs(full - half) < 1e-13 * std::abs(full));
}

TEST_CASE("pairwise summation totals match a compensated reference") {
    std::vector<double> v(100000);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::sin(0.001 * static_cast<double>(i)) * 1e-3;
    long double ref = 0.0L;
    for (double x : v) ref += x;
    CHECK(std::abs(detail::pairwise_sum(v) - static_cast<double>(ref)) < 1e-12);
    // tree summation splits at the midpoint, so the halves recombine exactly
    const double left = detail::pairwise_sum(v.data(), v.size() / 2);
    const double right = detail::pairwise_sum(v.data() + v.size() / 2, v.size() - v.size() / 2);
    CHECK(detail::pairwise_sum(v) == left + right);
}

TEST_CASE("guarded integration recovers an integrable endpoint singularity") {
    // int_0^{2pi} sin(t/2)^{-1/2} dt = 2 sqrt(pi) Gamma(1/4)/Gamma(3/4),
    // singular at both ends of the period (one wrapped guard point).
    auto f = [](double t) { return 1.0 / std::sqrt(std::abs(std::sin(0.5 * t))); };
    QuadratureConfig cfg;
    cfg.tolerance = 1e-8;
    const auto r = integrate_with_guards(f, kTwoPi, {0.0}, cfg);
    const double ref = 2.0 * std::sqrt(kPi) * std::tgamma(0.25) / std::tgamma(0.75);
    CHECK(std::abs(r.value - ref) < 1e-6 * std::abs(ref));
    CHECK(r.error_estimate < 1e-4);
}

TEST_CASE("guarded integration reproduces smooth results") {
    auto f = [](double t) { return std::exp(std::sin(t)); };
    const double plain = integrate_periodic(f, kTwoPi).value;
    const double guarded = integrate_with_guards(f, kTwoPi, {1.0, 4.0}).value;
    CHECK(std::abs(plain - guarded) < 1e-10 * std::abs(plain));
}

TEST_CASE("root refinement and scanning") {
    auto f = [](double t) { return std::sin(t); };
    CHECK(std::abs(refine_root(f, 3.0, 3.3) - kPi) < 1e-12);
    CHECK_THROWS_AS(refine_root(f, 0.5, 1.0), BadBracket);

    const auto roots = scan_roots([](double t) { return std::cos(3.0 * t); }, 0.0, kTwoPi, 4096);
    REQUIRE(roots.size() == 6);
    for (std::size_t i = 0; i < roots.size(); ++i)
        CHECK(std::abs(roots[i] - (kPi / 6.0 + static_cast<double>(i) * kPi / 3.0)) < 1e-11);
}

TEST_CASE("non-convergent refinement is reported") {
    // White-noise-like integrand: the n and n/2 trapezoid sums disagree.
    auto f = [](double t) { return std::sin(1e7 * t * t); };
    QuadratureConfig cfg;
    cfg.tolerance = 1e-12;
    CHECK_THROWS_AS(integrate_periodic(f, kTwoPi, cfg), NonConvergent);
}
