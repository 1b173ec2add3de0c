#pragma once

#include <cmath>

#include "rosette/fourier.hpp"
#include "rosette/rosette.hpp"

// The three reference curves used across the suite:
//   oval A:    p = 31 + 2 cos 2t + sin 5t
//   oval B:    p = 11 - 0.5 cos 2t + sin 3t
//   2-rosette: p = 11 + sin(t/2) - 7 cos(3t/2) - 0.5 sin 2t
inline rosette::SupportFunction oval_a() {
    return rosette::SupportFunction(1, 31.0, {{2, 2.0, 0.0}, {5, 0.0, 1.0}});
}

inline rosette::SupportFunction oval_b() {
    return rosette::SupportFunction(1, 11.0, {{2, -0.5, 0.0}, {3, 0.0, 1.0}});
}

inline rosette::SupportFunction rosette_two() {
    return rosette::SupportFunction(2, 11.0, {{1, 0.0, 1.0}, {3, -7.0, 0.0}, {4, 0.0, -0.5}});
}

inline rosette::SupportFunction circle(double radius) {
    return rosette::SupportFunction(1, radius, {});
}

/// Fourth-order central difference of a scalar function.
template <class F>
double fd1(F&& f, double t, double h = 1e-5) {
    return (f(t - 2.0 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2.0 * h)) / (12.0 * h);
}

template <class F>
double fd2(F&& f, double t, double h = 1e-4) {
    return (-f(t - 2.0 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) -
            f(t + 2.0 * h)) /
           (12.0 * h * h);
}
