#pragma once

// The space J(R^2) of area-form-compatible linear complex structures on R^2,
// its Kahler structure, the isometry with the upper half-plane, and the
// SL(2,R) action by conjugation.

#include "pkmoduli/types.hpp"

namespace pkmoduli {

// Standard area form rho0 = dx0 ^ dy0.
inline double area_form(const Vec2& a, const Vec2& b) {
    return a(0) * b(1) - a(1) * b(0);
}

// Linear complex structure J compatible with rho0: J^2 = -1, rho0(v, Jv) > 0.
struct LinearComplexStructure {
    Mat2 m;

    explicit LinearComplexStructure(const Mat2& mat);

    Vec2 operator*(const Vec2& v) const { return m * v; }
};

// Tangent vector Jdot at J: anti-commutes with J, carries its base point.
struct TangentAtJ {
    Mat2 m;
    LinearComplexStructure base;

    TangentAtJ(const Mat2& mat, const LinearComplexStructure& at);
};

// g_J(v, w) = rho0(v, Jw); positive definite, J-orthogonal.
double metric_gJ(const LinearComplexStructure& J, const Vec2& v, const Vec2& w);

// The Kahler isometry from the upper half-plane, sending i to J0.
LinearComplexStructure uhp_to_J(const UhpPoint& z);

// Standard complex structure J0 = uhp_to_J(i).
LinearComplexStructure standard_J0();

// Differential of uhp_to_J at z in direction (xdot, ydot), as a tangent at j(z).
TangentAtJ uhp_to_J_diff(const UhpPoint& z, double xdot, double ydot);

// <Jdot, Jdot'> = 1/2 tr(Jdot Jdot').
double inner_JJ(const TangentAtJ& a, const TangentAtJ& b);

// Omega(Jdot, Jdot') = -<Jdot, J Jdot'>.
double omega_JJ(const TangentAtJ& a, const TangentAtJ& b);

// The complex structure on tangents: Jdot -> -J Jdot.
TangentAtJ I_of(const TangentAtJ& a);

struct KahlerAtJ {
    double inner;
    double omega;
    TangentAtJ I_image;
};

KahlerAtJ kahler_at_J(const LinearComplexStructure& J, const TangentAtJ& a,
                      const TangentAtJ& b);

// Residuals of the product identity
//   Jdot Jdot' = <Jdot,Jdot'> 1 - <J Jdot, Jdot'> J
// and of the vanishing triple traces tr(Jdot Jdot' Jdot'') and
// tr(J Jdot Jdot' Jdot'').
struct LemmaDotJResiduals {
    double product_identity;
    double triple_trace;
    double triple_trace_with_J;
};

LemmaDotJResiduals lemma_dotJ_check(const LinearComplexStructure& J,
                                    const TangentAtJ& a, const TangentAtJ& b,
                                    const TangentAtJ& c);

// Conjugation action A . J = A J A^{-1}, A in SL(2,R).
LinearComplexStructure sl2_act_J(const Mat2& A, const LinearComplexStructure& J);
TangentAtJ sl2_act_tangentJ(const Mat2& A, const TangentAtJ& t);

// Mobius action on the upper half-plane.
UhpPoint mobius(const Mat2& A, const UhpPoint& z);

void require_unimodular(const Mat2& A);
void require_same_base(const LinearComplexStructure& a,
                       const LinearComplexStructure& b);

}  // namespace pkmoduli
