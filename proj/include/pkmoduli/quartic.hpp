#pragma once

// The bundle M(R^2) of pairs (J, T) with T a totally symmetric (0,4) tensor
// satisfying T(J., J., ., .) = -T, the metric-raised U tensor, the
// quartic-differential evaluators, the coordinate model H^2 x C, and the
// SL(2,R) action in both models.

#include <vector>

#include "pkmoduli/jspace.hpp"
#include "pkmoduli/types.hpp"

namespace pkmoduli {

// Totally symmetric (0,4) tensor stored by its five independent components
// in the standard basis of R^2, together with its base complex structure.
struct QuarticTensor {
    double t1111, t1112, t1122, t1222, t2222;
    LinearComplexStructure base;

    QuarticTensor(double a, double b, double c, double d, double e,
                  const LinearComplexStructure& J, bool validate = true);

    // Component by total symmetry; indices in {0,1}.
    double component(int i, int j, int k, int l) const;
    double eval(const Vec2& x, const Vec2& y, const Vec2& z, const Vec2& w) const;

    // Max-norm residual of the membership condition T(J., J., ., .) = -T.
    double membership_residual() const;
};

// Deterministic g_J-orthonormal frame (f1, f2 = J f1) with f1 along e1.
// Columns of the returned matrix are the frame vectors.
Mat2 gJ_frame(const LinearComplexStructure& J);

// U = g_J^{-1} T expressed in the canonical frame: u1 = U(f1,f1),
// u2 = U(f1,f2) as matrices in frame coordinates (where g_J is the identity
// and J acts as J0).
struct UTensor {
    Mat2 u1, u2;
    Mat2 frame;
    LinearComplexStructure base;

    UTensor(const Mat2& u1_, const Mat2& u2_, const Mat2& frame_,
            const LinearComplexStructure& J, bool validate = true);

    // Endomorphism U(X,Y) in standard coordinates.
    Mat2 endo(const Vec2& x, const Vec2& y) const;
};

UTensor raise_index(const QuarticTensor& T);
QuarticTensor lower_index(const UTensor& U);

// The coordinate tensor T_(z,w) = Re(wbar (dx0 - zbar dy0)^4).
QuarticTensor tensor_from_coordinates(const ModuliPoint& p);

// Closed-form time derivative of tensor_from_coordinates along
// (xdot, ydot, udot, vdot); the five components, not validated as a tensor.
void tensor_from_coordinates_dot(const ModuliPoint& p, double xdot, double ydot,
                                 double udot, double vdot, double out[5]);

// q = T(.,.,.,.) - i T(.,.,.,J.).
cplx quartic_eval(const QuarticTensor& T, const Vec2& a, const Vec2& b,
                  const Vec2& c, const Vec2& d);
cplx quartic_tau(const QuarticTensor& T, const Vec2& v);

// phi(z,w)(v) = wbar (v1 - zbar v2)^4.
cplx fibre_map_phi(const ModuliPoint& p, const Vec2& v);

// <U, U'> = 1/2 (tr(U1 U1') + tr(U2 U2')); ||U||^2 = tr(U1^2).
double inner_U(const UTensor& a, const UTensor& b);
double norm_sq_U(const UTensor& a);

// SL(2,R) action in the two models.
ModuliPoint sl2_act_zw(const Mat2& A, const ModuliPoint& p);
QuarticTensor sl2_act_T(const Mat2& A, const QuarticTensor& T);
UTensor sl2_act_U(const Mat2& A, const UTensor& U);

// Field of tensors sampled on an nx x ny grid over the flat square torus,
// row-major in (ix, iy), grid spacing h.
struct TensorGrid {
    int nx = 0, ny = 0;
    double h = 0.0;
    std::vector<QuarticTensor> values;
};

// Max-norm of the discrete Codazzi (Cauchy-Riemann) system by central
// differences; evaluated wherever the stencil fits inside the grid.
double codazzi_residual(const TensorGrid& grid);

}  // namespace pkmoduli
