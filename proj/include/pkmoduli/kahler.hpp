#pragma once

// The pseudo-Kahler family (g_f, I, omega_f): coordinate matrices in the
// frame (d/dx, d/dy, d/du, d/dv), the intrinsic metric on tangent pairs,
// determinant and signature, and the finite-difference closedness check.

#include <functional>

#include "pkmoduli/tangent.hpp"

namespace pkmoduli {

struct MetricAtPoint {
    Mat4 m;
};

struct TwoFormAtPoint {
    Mat4 m;
};

// The argument of f: y^4 |w|^2 = ||U||^2 / 2 at (z, w).
double fiber_norm_sq(const ModuliPoint& p);

// The coordinate matrix of g_f at (z, w). A nonzero perturb_eps multiplies
// the (0,0) entry by (1 + eps) — the fault-injection hook used to show the
// downstream identities actually discriminate.
MetricAtPoint metric_matrix(const ModuliPoint& p, const DeformationFunction& f,
                            double perturb_eps = 0.0);

// omega_f = g_f(., I.) as a matrix: g-matrix times the I-matrix.
TwoFormAtPoint symplectic_matrix(const ModuliPoint& p,
                                 const DeformationFunction& f,
                                 double perturb_eps = 0.0);

// The coordinate matrix of the complex structure: blockdiag(J0, J0).
Mat4 complex_structure_matrix(const ModuliPoint& p);

// Closed form y^4 (f')^2 (1 - f)^2 for det g_f.
double metric_determinant_closed_form(const ModuliPoint& p,
                                      const DeformationFunction& f);

// (positive, negative) eigenvalue counts, threshold 1e-12.
std::pair<int, int> metric_signature(const MetricAtPoint& g);

// g_f on intrinsic tangents:
// (1 - f(||U||^2/2)) <Jdot,Jdot'> + (f'/2)(<Udot_0,Udot_0'> - <Udot_tr,Udot_tr'>).
double intrinsic_metric(const ModuliTangent& a, const ModuliTangent& b,
                        const DeformationFunction& f);

// omega_f(a, b) = g_f(a, I b) on intrinsic tangents.
double intrinsic_omega(const ModuliTangent& a, const ModuliTangent& b,
                       const DeformationFunction& f);

// Max over the four independent coefficients of the central-difference
// exterior derivative of a 2-form field; expected O(h^2) for closed forms.
double d2form_residual(
    const std::function<Mat4(const ModuliPoint&)>& two_form,
    const ModuliPoint& p, double h);

// d(omega_f) residual at p by central differences with step h.
double exterior_derivative_residual(const ModuliPoint& p,
                                    const DeformationFunction& f, double h,
                                    double perturb_eps = 0.0);

}  // namespace pkmoduli
