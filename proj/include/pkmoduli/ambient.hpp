#pragma once

// Ambient R^{2,3} with its signature-(2,3) quadratic form, the quadric model
// of H^{2,2}, and the full extrinsic verification of the explicit flat
// maximal Barbot surface: frame, second fundamental form, shape operator,
// and the associated constant quartic differential.

#include <array>

#include "pkmoduli/quartic.hpp"
#include "pkmoduli/types.hpp"

namespace pkmoduli {

struct SurfaceParam {
    double x = 0.0;
    double y = 0.0;
};

// eta = diag(+1, +1, -1, -1, -1).
double eta_form(const Vec5& a, const Vec5& b);

// The standard Barbot surface f0(x, y), lying in the quadric eta = -1.
Vec5 barbot_embed(const SurfaceParam& p);
Vec5 barbot_dx(const SurfaceParam& p);
Vec5 barbot_dy(const SurfaceParam& p);
Vec5 barbot_dxx(const SurfaceParam& p);
Vec5 barbot_dxy(const SurfaceParam& p);
Vec5 barbot_dyy(const SurfaceParam& p);

struct ExtrinsicFrame {
    Vec5 position;
    Vec5 tangent1, tangent2;   // coordinate tangents df0/dx, df0/dy
    Vec5 normal1, normal2;     // eta-orthonormal, eta(n_i, n_j) = -delta_ij
};

// Tangents plus a deterministic eta-orthonormal normal frame.
ExtrinsicFrame extrinsic_frame(const SurfaceParam& p);

// II(e_i, e_j) in the normal frame, indexed [i][j][normal], where e_1, e_2
// is the g_T-orthonormal frame tangent_i / sqrt(2).
struct SecondFundamentalValue {
    std::array<std::array<std::array<double, 2>, 2>, 2> coefficients;

    Vec5 vector(const ExtrinsicFrame& f, int i, int j) const;
};

SecondFundamentalValue second_fundamental_form(const SurfaceParam& p);

// Trace of II with respect to the induced metric (vanishes: maximality).
double maximality_residual(const SurfaceParam& p);

// Full tensor norm ||II||^2 = sum_ij -g_N(II(e_i,e_j), II(e_i,e_j)) in the
// g_T-orthonormal frame; the Gauss equation K = -1 + ||II||^2 / 2 then
// closes with K = 0 for the flat Barbot surface.
double norm_sq_II(const SurfaceParam& p);

// Shape operator coefficients B(e_i, n_a) in the tangent frame, indexed
// [i][a][tangent component], defined by g_N(II(X,Y), xi) = -g_T(Y, B(X,xi)).
using ShapeOperator = std::array<std::array<std::array<double, 2>, 2>, 2>;
ShapeOperator shape_operator(const SurfaceParam& p, const ExtrinsicFrame& f);

// Max residual of the defining relation of the shape operator over all
// frame vector pairs.
double shape_relation_residual(const SurfaceParam& p, const ExtrinsicFrame& f);

// The quartic tensor T = g_N(II(.,.), II(.,.)) - g_N(II(.,J.), II(.,J.))
// of the Barbot surface (components in the coordinate frame d/dx, d/dy, base
// J0) and the complex value q(e1,e1,e1,e1) in the unit frame of the induced
// metric. The value is constant over the surface.
std::pair<QuarticTensor, cplx> quartic_from_embedding(const SurfaceParam& p);

// The four light-like points where the surface meets the boundary at infinity.
std::array<Vec5, 4> boundary_points();

}  // namespace pkmoduli
