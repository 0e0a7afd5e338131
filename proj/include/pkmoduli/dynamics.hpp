#pragma once

// Hamiltonian circle and SL(2,R) actions on the coordinate model: moment
// maps, Hamiltonian vector fields from the symplectic matrix, flows with
// conserved-quantity logging, and the Lagrangian fibration (H1, H2).

#include <functional>
#include <vector>

#include "pkmoduli/kahler.hpp"

namespace pkmoduli {

struct LieAlgebraElement {
    Mat2 m;

    explicit LieAlgebraElement(const Mat2& mat);

    static LieAlgebraElement xi1();  // J0
    static LieAlgebraElement xi2();  // diag(1,-1)
    static LieAlgebraElement xi3();  // offdiag(1,1)
};

struct integration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Circle action: w -> e^{i theta} w in coordinates, U -> cos(theta) U -
// sin(theta) U J on tensors, and its differential on tangents.
ModuliPoint circle_act(double theta, const ModuliPoint& p);
UTensor circle_act_U(double theta, const UTensor& U);
ModuliTangent circle_act_tangent(double theta, const ModuliTangent& t);

// H1 = f(y^4 |w|^2) / 2 and H2 = 2 (x/y) (1 - f(y^4 |w|^2)).
double hamiltonian_h1(const ModuliPoint& p, const DeformationFunction& f);
double hamiltonian_h2(const ModuliPoint& p, const DeformationFunction& f);

// mu^X(z, w) = (1 - f(y^4 |w|^2)) tr(j(z) X).
double moment_map_sl2(const LieAlgebraElement& X, const ModuliPoint& p,
                      const DeformationFunction& f);

// Closed-form coordinate gradients of H1 and H2 in (x, y, u, v).
Vec4 grad_h1(const ModuliPoint& p, const DeformationFunction& f);
Vec4 grad_h2(const ModuliPoint& p, const DeformationFunction& f);

// Central-difference gradient of an arbitrary Hamiltonian (oracle).
Vec4 gradient_fd(const std::function<double(const ModuliPoint&)>& H,
                 const ModuliPoint& p, double h = 1e-6);

// Solve omega(X_H, .) = dH for X_H at p, given the gradient of H.
Vec4 hamiltonian_vector_field(const Vec4& gradH, const ModuliPoint& p,
                              const DeformationFunction& f);
Vec4 hamiltonian_vector_field(const std::function<double(const ModuliPoint&)>& H,
                              const ModuliPoint& p, const DeformationFunction& f,
                              double h = 1e-6);

Vec4 hvf_h1(const ModuliPoint& p, const DeformationFunction& f);
Vec4 hvf_h2(const ModuliPoint& p, const DeformationFunction& f);

enum class FlowKind { H1, H2 };
enum class IntegratorKind { RungeKutta4, ImplicitMidpoint };

struct Trajectory {
    std::vector<double> times;
    std::vector<ModuliPoint> points;
    // Per-sample (H1, H2) for drift inspection.
    std::vector<std::pair<double, double>> invariant_log;
};

Trajectory flow(FlowKind which, const ModuliPoint& start, double t_end,
                int steps, const DeformationFunction& f,
                IntegratorKind integrator = IntegratorKind::RungeKutta4);

// Closed-form flows: rotation of w, and (e^{2t} z, e^{-4t} w). The exponent
// -4 follows from the generator 2(x dx + y dy) - 4(u du + v dv) and from
// the diagonal group action; the alternative -3 is ruled out numerically
// (see the verification report note).
ModuliPoint closed_form_h1_flow(const ModuliPoint& start, double t);
ModuliPoint closed_form_h2_flow(const ModuliPoint& start, double t);

struct FibrationValue {
    double h1 = 0.0;
    double h2 = 0.0;
};

struct FiberProbe {
    double dh_cross_residual;    // max |dH_i(X_{H_j})| over i != j
    double omega_span_residual;  // |omega(X_{H1}, X_{H2})|
    double independence;         // smallest singular value of [X_{H1} | X_{H2}]
    bool independent;
};

FibrationValue fibration(const ModuliPoint& p, const DeformationFunction& f);
FiberProbe fiber_probe(const ModuliPoint& p, const DeformationFunction& f);

}  // namespace pkmoduli
