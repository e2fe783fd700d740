#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace supnorm {

using cplx = std::complex<double>;

/// A point x + iy of the upper half plane, y > 0.
struct UHPoint {
    double x = 0.0;
    double y = 1.0;

    UHPoint() = default;
    UHPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw std::invalid_argument("UHPoint: Im z must be positive");
    }
    explicit UHPoint(cplx z) : UHPoint(z.real(), z.imag()) {}

    cplx as_complex() const { return cplx(x, y); }
};

/// u(z,w) = |z-w|^2 / (4 Im z Im w); cosh d(z,w) = 2u + 1.
inline double u_distance(const UHPoint& z, const UHPoint& w) {
    double dx = z.x - w.x, dy = z.y - w.y;
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

inline double hyperbolic_distance(const UHPoint& z, const UHPoint& w) {
    return std::acosh(2.0 * u_distance(z, w) + 1.0);
}

}  // namespace supnorm
