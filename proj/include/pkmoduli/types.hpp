#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace pkmoduli {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using cplx = std::complex<double>;

// Point z = x + iy of the upper half-plane.
struct UhpPoint {
    double x = 0.0;
    double y = 1.0;

    bool valid() const { return y > 0.0; }
};

// Global coordinate (z, w) on the moduli space, z in the upper half-plane
// and w the fibre coordinate of the quartic-differential bundle.
struct ModuliPoint {
    UhpPoint z;
    cplx w = 0.0;
};

// Member f of the deformation family: f(0) = 0 and f'(t) < 0 for t >= 0.
struct DeformationFunction {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> derivative;

    double operator()(double t) const { return value(t); }
    double prime(double t) const { return derivative(t); }

    static DeformationFunction linear();   // f(t) = -t
    static DeformationFunction sqrt();     // f(t) = 1 - sqrt(1 + t)
    static DeformationFunction by_name(const std::string& name);
};

struct base_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct malformed_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace pkmoduli
