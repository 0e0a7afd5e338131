#include "pkmoduli/ambient.hpp"

#include <cmath>

namespace pkmoduli {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

double eta_form(const Vec5& a, const Vec5& b) {
    return a(0) * b(0) + a(1) * b(1) - a(2) * b(2) - a(3) * b(3) - a(4) * b(4);
}

Vec5 barbot_embed(const SurfaceParam& p) {
    Vec5 v;
    v << kSqrt2 * std::sinh(2.0 * p.y), kSqrt2 * std::sinh(2.0 * p.x),
        std::cosh(2.0 * p.x) + std::cosh(2.0 * p.y),
        std::cosh(2.0 * p.x) - std::cosh(2.0 * p.y), 0.0;
    return 0.5 * v;
}

Vec5 barbot_dx(const SurfaceParam& p) {
    Vec5 v;
    v << 0.0, kSqrt2 * std::cosh(2.0 * p.x), std::sinh(2.0 * p.x),
        std::sinh(2.0 * p.x), 0.0;
    return v;
}

Vec5 barbot_dy(const SurfaceParam& p) {
    Vec5 v;
    v << kSqrt2 * std::cosh(2.0 * p.y), 0.0, std::sinh(2.0 * p.y),
        -std::sinh(2.0 * p.y), 0.0;
    return v;
}

Vec5 barbot_dxx(const SurfaceParam& p) {
    Vec5 v;
    v << 0.0, 2.0 * kSqrt2 * std::sinh(2.0 * p.x), 2.0 * std::cosh(2.0 * p.x),
        2.0 * std::cosh(2.0 * p.x), 0.0;
    return v;
}

Vec5 barbot_dxy(const SurfaceParam&) { return Vec5::Zero(); }

Vec5 barbot_dyy(const SurfaceParam& p) {
    Vec5 v;
    v << 2.0 * kSqrt2 * std::sinh(2.0 * p.y), 0.0, 2.0 * std::cosh(2.0 * p.y),
        -2.0 * std::cosh(2.0 * p.y), 0.0;
    return v;
}

ExtrinsicFrame extrinsic_frame(const SurfaceParam& p) {
    ExtrinsicFrame f;
    f.position = barbot_embed(p);
    f.tangent1 = barbot_dx(p);
    f.tangent2 = barbot_dy(p);

    // eta-Gram-Schmidt on deterministic seeds against position and tangents.
    // e3 is parallel to the position at the origin, so e4 serves as fallback.
    Vec5 seeds[3] = {Vec5::Unit(2), Vec5::Unit(4), Vec5::Unit(3)};
    Vec5 span[3] = {f.position, f.tangent1, f.tangent2};
    double span_norm[3] = {eta_form(span[0], span[0]), eta_form(span[1], span[1]),
                           eta_form(span[2], span[2])};
    Vec5 normals[2];
    int found = 0;
    for (const Vec5& seed : seeds) {
        if (found == 2) break;
        Vec5 r = seed;
        for (int k = 0; k < 3; ++k)
            r -= (eta_form(r, span[k]) / span_norm[k]) * span[k];
        for (int k = 0; k < found; ++k)
            r += eta_form(r, normals[k]) * normals[k];  // eta(n,n) = -1
        double nn = eta_form(r, r);
        if (std::abs(nn) < 1e-14) continue;  // degenerate seed, try the next
        if (nn > 0.0) throw malformed_input("normal candidate is not time-like");
        normals[found++] = r / std::sqrt(-nn);
    }
    if (found < 2) throw malformed_input("degenerate normal frame");
    f.normal1 = normals[0];
    f.normal2 = normals[1];
    return f;
}

Vec5 SecondFundamentalValue::vector(const ExtrinsicFrame& f, int i, int j) const {
    return coefficients[i][j][0] * f.normal1 + coefficients[i][j][1] * f.normal2;
}

SecondFundamentalValue second_fundamental_form(const SurfaceParam& p) {
    ExtrinsicFrame f = extrinsic_frame(p);
    // Unit-frame second derivatives: e_i = tangent_i / sqrt(2).
    Vec5 d[2][2] = {{0.5 * barbot_dxx(p), 0.5 * barbot_dxy(p)},
                    {0.5 * barbot_dxy(p), 0.5 * barbot_dyy(p)}};
    SecondFundamentalValue II;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            II.coefficients[i][j][0] = -eta_form(d[i][j], f.normal1);
            II.coefficients[i][j][1] = -eta_form(d[i][j], f.normal2);
        }
    return II;
}

double maximality_residual(const SurfaceParam& p) {
    SecondFundamentalValue II = second_fundamental_form(p);
    double r = 0.0;
    for (int a = 0; a < 2; ++a)
        r = std::max(r, std::abs(II.coefficients[0][0][a] + II.coefficients[1][1][a]));
    return r;
}

double norm_sq_II(const SurfaceParam& p) {
    ExtrinsicFrame f = extrinsic_frame(p);
    SecondFundamentalValue II = second_fundamental_form(p);
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Vec5 v = II.vector(f, i, j);
            s -= eta_form(v, v);
        }
    return s;
}

ShapeOperator shape_operator(const SurfaceParam& p, const ExtrinsicFrame& f) {
    SecondFundamentalValue II = second_fundamental_form(p);
    ShapeOperator B{};
    for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k < 2; ++k) {
                Vec5 n = (a == 0) ? f.normal1 : f.normal2;
                B[i][a][k] = -eta_form(II.vector(f, i, k), n);
            }
    return B;
}

double shape_relation_residual(const SurfaceParam& p, const ExtrinsicFrame& f) {
    SecondFundamentalValue II = second_fundamental_form(p);
    ShapeOperator B = shape_operator(p, f);
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            for (int a = 0; a < 2; ++a) {
                Vec5 n = (a == 0) ? f.normal1 : f.normal2;
                double gN = eta_form(II.vector(f, i, k), n);
                double gT = B[i][a][k];  // unit tangent frame: g_T = identity
                r = std::max(r, std::abs(gN + gT));
            }
    return r;
}

std::pair<QuarticTensor, cplx> quartic_from_embedding(const SurfaceParam& p) {
    ExtrinsicFrame f = extrinsic_frame(p);
    SecondFundamentalValue II = second_fundamental_form(p);
    // II in the unit frame, with J e1 = e2, J e2 = -e1.
    auto vec = [&](int i, int j) { return II.vector(f, i, j); };
    auto vecJ = [&](int i, int j) {
        return (j == 0) ? vec(i, 1) : Vec5(-vec(i, 0));
    };
    auto that = [&](int a, int b, int c, int d) {
        return eta_form(vec(a, b), vec(c, d)) - eta_form(vecJ(a, b), vecJ(c, d));
    };
    double h1111 = that(0, 0, 0, 0);
    double h1112 = that(0, 0, 0, 1);
    double h1122 = that(0, 0, 1, 1);
    double h1222 = that(0, 1, 1, 1);
    double h2222 = that(1, 1, 1, 1);
    // Coordinate-frame components: each slot rescales by sqrt(2).
    QuarticTensor T(4.0 * h1111, 4.0 * h1112, 4.0 * h1122, 4.0 * h1222,
                    4.0 * h2222, standard_J0());
    return {T, cplx(h1111, -h1112)};
}

std::array<Vec5, 4> boundary_points() {
    std::array<Vec5, 4> pts;
    pts[0] << 0.0, kSqrt2, 1.0, 1.0, 0.0;
    pts[1] << 0.0, -kSqrt2, 1.0, 1.0, 0.0;
    pts[2] << kSqrt2, 0.0, 1.0, -1.0, 0.0;
    pts[3] << -kSqrt2, 0.0, 1.0, -1.0, 0.0;
    return pts;
}

}  // namespace pkmoduli
