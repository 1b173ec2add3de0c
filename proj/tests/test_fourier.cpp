#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rosette/fourier.hpp"

using rosette::FourierTerm;
using rosette::SupportFunction;
using rosette::is_rosette;
using rosette::kPi;
using rosette::kTwoPi;

TEST_CASE("analytic derivatives match finite differences") {
    const SupportFunction p = rosette_two();
    for (int order = 1; order <= 4; ++order) {
        for (double t : {0.3, 1.7, 4.0, 6.1, 11.2}) {
            const double fd = fd1([&](double u) { return p.eval(u, order - 1); }, t);
            CHECK(std::abs(p.eval(t, order) - fd) < 1e-7 * (1.0 + std::abs(fd)));
        }
    }
}

TEST_CASE("sixth derivative is supported, seventh is not") {
    const SupportFunction p = oval_a();
    CHECK(std::abs(p.eval(0.7, 6) - (-std::pow(5.0, 6) * std::sin(5 * 0.7) -
                                     2.0 * std::pow(2.0, 6) * std::cos(2 * 0.7))) < 1e-9);
    CHECK_THROWS_AS(p.eval(0.7, 7), std::invalid_argument);
}

TEST_CASE("shifted support evaluates the translated argument") {
    const SupportFunction p = rosette_two();
    const SupportFunction q = p.shifted(kPi);
    for (int order = 0; order <= 3; ++order)
        for (double t : {0.0, 0.9, 2.5, 7.3, 12.0})
            CHECK(std::abs(q.eval(t, order) - p.eval(t + kPi, order)) < 1e-12);
}

TEST_CASE("scaled and combined supports are linear in the coefficients") {
    const SupportFunction p = oval_a();
    const SupportFunction q = oval_b();
    const SupportFunction c = SupportFunction::combine(0.3, p, -0.7, q);
    for (double t : {0.1, 2.0, 5.5}) {
        CHECK(std::abs(p.scaled(2.5).eval(t) - 2.5 * p.eval(t)) < 1e-12);
        CHECK(std::abs(c.eval(t, 1) - (0.3 * p.eval(t, 1) - 0.7 * q.eval(t, 1))) < 1e-12);
    }
    CHECK_THROWS_AS(SupportFunction::combine(1.0, oval_a(), 1.0, rosette_two()),
                    std::invalid_argument);
}

TEST_CASE("radius of curvature is p plus its second derivative") {
    const SupportFunction p = oval_b();
    for (double t : {0.2, 1.1, 3.9})
        CHECK(std::abs(p.radius_of_curvature(t) - (p.eval(t) + p.eval(t, 2))) < 1e-12);
}

TEST_CASE("duplicate harmonics merge and zero harmonics drop") {
    const SupportFunction p(1, 5.0, {{2, 1.0, 0.0}, {2, 1.5, -1.0}, {3, 0.0, 0.0}});
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].j == 2);
    CHECK(p.terms()[0].a == 2.5);
    CHECK(p.terms()[0].b == -1.0);
    CHECK(p.bandwidth() == 2.0);
}

TEST_CASE("rosette certificate accepts positive curvature radius") {
    CHECK(is_rosette(oval_a()).ok);
    CHECK(is_rosette(oval_b()).ok);
    CHECK(is_rosette(rosette_two()).ok);
    const auto cert = is_rosette(circle(4.0));
    CHECK(cert.ok);
    CHECK(std::abs(cert.rho_min - 4.0) < 1e-12);
}

TEST_CASE("rosette certificate rejects curvature sign changes") {
    // rho = 1 - 6 cos 2t takes both signs
    const auto cert = is_rosette(SupportFunction(1, 1.0, {{2, 2.0, 0.0}}));
    CHECK_FALSE(cert.ok);
    CHECK(cert.rho_min < 0.0);
    CHECK(std::abs(SupportFunction(1, 1.0, {{2, 2.0, 0.0}})
                       .radius_of_curvature(cert.theta_min) -
                   cert.rho_min) < 1e-10);
}

TEST_CASE("period and rotation number") {
    CHECK(rosette_two().period() == 2.0 * kTwoPi);
    CHECK(rosette_two().rotation_number() == 2);
    CHECK_THROWS_AS(SupportFunction(0, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(SupportFunction(1, 1.0, {{0, 1.0, 0.0}}), std::invalid_argument);
}
