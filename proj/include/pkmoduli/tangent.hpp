#pragma once

// Tangent vectors (Jdot, Udot) to the bundle of (J, U) pairs: the split of
// Udot into its endomorphism trace-less part (with the E-correction in the
// last bilinear slot) and its trace part, the trace constraint, the inner
// products, and the intrinsic complex structure on tangents.

#include "pkmoduli/quartic.hpp"

namespace pkmoduli {

// Symmetric-bilinear-form-indexed triple of 2x2 endomorphism blocks: the
// values on the canonical frame pairs (f1,f1), (f1,f2), (f2,f2), with the
// endomorphisms written in frame coordinates.
struct SymEndo2 {
    Mat2 m11, m12, m22;
};

// The invariant pairing 1/4 (tr(m11 m11') + 2 tr(m12 m12') + tr(m22 m22')).
double quarter_contraction(const SymEndo2& a, const SymEndo2& b);

// U itself as a block triple (U1, U2, -U1).
SymEndo2 u_blocks(const UTensor& U);

// Tangent vector at (J, U): Jdot in standard coordinates, Udot split into
// the full trace-less part s0 (whose (f2,f2) block carries the correction
// 2E - (Udot_1)_0 with E = U1 J Jdot diag(-1,1)) and the scalar trace part.
struct ModuliTangent {
    TangentAtJ jdot;
    SymEndo2 s0;
    SymEndo2 str;
    UTensor baseU;

    // Decomposes the raw Udot blocks (values on the frame pairs, frame
    // coordinates) and validates the trace constraint
    //   tr(Udot(X,Y)) = -tr(J Jdot U(X,Y))
    // and the E-correction shape of the (f2,f2) block.
    ModuliTangent(const TangentAtJ& jd, const Mat2& mdot11, const Mat2& mdot12,
                  const Mat2& mdot22, const UTensor& at, bool validate = true);

    Mat2 u0_1() const { return s0.m11; }
    Mat2 u0_2() const { return s0.m12; }
    Mat2 u0_corr() const { return s0.m22; }
    Mat2 utr_1() const { return str.m11; }
    Mat2 utr_2() const { return str.m12; }

    // Recombined block s0 + str on a frame pair; indices in {0,1}.
    Mat2 udot_block(int a, int b) const;

    // Udot(X, Y) as an endomorphism in standard coordinates.
    Mat2 endo_dot(const Vec2& x, const Vec2& y) const;
};

// Tangent at (z, w) with coordinate velocities (xdot, ydot, udot, vdot),
// built at the pinned base point (i, y^2 w) and pushed by the SL(2,R)
// transport taking i to z.
ModuliTangent coordinate_tangent(const ModuliPoint& p, double xdot, double ydot,
                                 double udot, double vdot);

// Same tangent by direct evaluation of the coordinate tensor derivative at
// (z, w); kept as an independent oracle for the transported construction.
ModuliTangent coordinate_tangent_direct(const ModuliPoint& p, double xdot,
                                        double ydot, double udot, double vdot);

// <Udot_0, Udot_0'> and <Udot_tr, Udot_tr'>.
double inner_u0(const ModuliTangent& a, const ModuliTangent& b);
double inner_utr(const ModuliTangent& a, const ModuliTangent& b);

// Max block residual of Udot J + U Jdot = Udot_0 J + Udot_tr(., J.).
double decomposition_lemma_residual(const ModuliTangent& t);

// The intrinsic complex structure (Jdot, Udot) -> (-J Jdot, -Udot J - U Jdot).
ModuliTangent I_tangent(const ModuliTangent& t);

ModuliTangent sl2_act_tangent(const Mat2& A, const ModuliTangent& t);

void require_same_base(const UTensor& a, const UTensor& b);

}  // namespace pkmoduli
