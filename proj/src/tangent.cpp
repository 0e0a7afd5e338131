#include "pkmoduli/tangent.hpp"

#include <cmath>

namespace pkmoduli {

namespace {
constexpr double kTangentTol = 1e-10;

Mat2 J0_mat() {
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}

double eval4(const double c[5], const Vec2& x, const Vec2& y, const Vec2& z,
             const Vec2& w) {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    s += x(i) * y(j) * z(k) * w(l) * c[i + j + k + l];
    return s;
}
}  // namespace

double quarter_contraction(const SymEndo2& a, const SymEndo2& b) {
    return 0.25 * ((a.m11 * b.m11).trace() + 2.0 * (a.m12 * b.m12).trace() +
                   (a.m22 * b.m22).trace());
}

SymEndo2 u_blocks(const UTensor& U) { return SymEndo2{U.u1, U.u2, -U.u1}; }

void require_same_base(const UTensor& a, const UTensor& b) {
    require_same_base(a.base, b.base);
    double scale = 1.0 + a.u1.norm() + a.u2.norm();
    if ((a.u1 - b.u1).norm() > 1e-12 * scale ||
        (a.u2 - b.u2).norm() > 1e-12 * scale)
        throw base_mismatch("tangent vectors live over different U tensors");
}

ModuliTangent::ModuliTangent(const TangentAtJ& jd, const Mat2& mdot11,
                             const Mat2& mdot12, const Mat2& mdot22,
                             const UTensor& at, bool validate)
    : jdot(jd), baseU(at) {
    const Mat2 raw[3] = {mdot11, mdot12, mdot22};
    Mat2* s0b[3] = {&s0.m11, &s0.m12, &s0.m22};
    Mat2* strb[3] = {&str.m11, &str.m12, &str.m22};
    for (int k = 0; k < 3; ++k) {
        double t = 0.5 * raw[k].trace();
        *strb[k] = t * Mat2::Identity();
        *s0b[k] = raw[k] - *strb[k];
    }
    if (!validate) return;

    require_same_base(jd.base, at.base);
    Mat2 F = at.frame, Finv = F.inverse();
    Mat2 jdot_f = Finv * jd.m * F;
    Mat2 J0 = J0_mat();
    double scale = 1.0 + mdot11.norm() + mdot12.norm() + mdot22.norm() +
                   jdot_f.norm() * (at.u1.norm() + at.u2.norm());
    const Mat2 ub[3] = {at.u1, at.u2, -at.u1};
    for (int k = 0; k < 3; ++k) {
        double res = std::abs(raw[k].trace() + (J0 * jdot_f * ub[k]).trace());
        if (res > kTangentTol * scale)
            throw malformed_input("Udot violates the trace constraint");
    }
    Mat2 D;
    D << -1.0, 0.0, 0.0, 1.0;
    Mat2 E = at.u1 * J0 * jdot_f * D;
    if ((s0.m22 - (2.0 * E - s0.m11)).norm() > kTangentTol * scale)
        throw malformed_input("Udot last block is not the E-corrected one");
}

Mat2 ModuliTangent::udot_block(int a, int b) const {
    if (a + b == 0) return s0.m11 + str.m11;
    if (a + b == 1) return s0.m12 + str.m12;
    return s0.m22 + str.m22;
}

Mat2 ModuliTangent::endo_dot(const Vec2& x, const Vec2& y) const {
    Mat2 F = baseU.frame, Finv = F.inverse();
    Vec2 xf = Finv * x, yf = Finv * y;
    Mat2 mf = xf(0) * yf(0) * udot_block(0, 0) +
              (xf(0) * yf(1) + xf(1) * yf(0)) * udot_block(0, 1) +
              xf(1) * yf(1) * udot_block(1, 1);
    return F * mf * Finv;
}

ModuliTangent coordinate_tangent_direct(const ModuliPoint& p, double xdot,
                                        double ydot, double udot, double vdot) {
    UTensor U = raise_index(tensor_from_coordinates(p));
    TangentAtJ jd = uhp_to_J_diff(p.z, xdot, ydot);
    double td[5];
    tensor_from_coordinates_dot(p, xdot, ydot, udot, vdot, td);
    Vec2 f1 = U.frame.col(0), f2 = U.frame.col(1);
    const Vec2 f[2] = {f1, f2};
    Mat2 m[3];
    for (int k = 0; k < 3; ++k) {
        int a = (k > 0) ? 1 : 0;          // pairs (0,0), (0,1), (1,1)
        int first = (k == 2) ? 1 : 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                m[k](r, c) = eval4(td, f[first], f[a], f[c], f[r]);
    }
    return ModuliTangent(jd, m[0], m[1], m[2], U);
}

ModuliTangent coordinate_tangent(const ModuliPoint& p, double xdot, double ydot,
                                 double udot, double vdot) {
    if (!p.z.valid()) throw malformed_input("coordinate_tangent: Im z <= 0");
    const double x = p.z.x, y = p.z.y;
    double ry = std::sqrt(y);
    Mat2 A;
    A << ry, x / ry, 0.0, 1.0 / ry;
    ModuliPoint pinned{UhpPoint{0.0, 1.0}, y * y * p.w};
    ModuliTangent t0 = coordinate_tangent_direct(pinned, xdot / y, ydot / y,
                                                 y * y * udot, y * y * vdot);
    return sl2_act_tangent(A, t0);
}

ModuliTangent sl2_act_tangent(const Mat2& A, const ModuliTangent& t) {
    require_unimodular(A);
    UTensor newU = sl2_act_U(A, t.baseU);
    TangentAtJ newJdot = sl2_act_tangentJ(A, t.jdot);
    Mat2 Ainv = A.inverse();
    Vec2 g1 = newU.frame.col(0), g2 = newU.frame.col(1);
    const Vec2 g[2] = {g1, g2};
    Mat2 Fn = newU.frame, Fninv = Fn.inverse();
    Mat2 m[3];
    for (int k = 0; k < 3; ++k) {
        int a = (k > 0) ? 1 : 0;
        int first = (k == 2) ? 1 : 0;
        Mat2 pushed = A * t.endo_dot(Ainv * g[first], Ainv * g[a]) * Ainv;
        m[k] = Fninv * pushed * Fn;
    }
    return ModuliTangent(newJdot, m[0], m[1], m[2], newU);
}

double inner_u0(const ModuliTangent& a, const ModuliTangent& b) {
    require_same_base(a.baseU, b.baseU);
    return quarter_contraction(a.s0, b.s0);
}

double inner_utr(const ModuliTangent& a, const ModuliTangent& b) {
    require_same_base(a.baseU, b.baseU);
    return quarter_contraction(a.str, b.str);
}

double decomposition_lemma_residual(const ModuliTangent& t) {
    Mat2 F = t.baseU.frame, Finv = F.inverse();
    Mat2 jdot_f = Finv * t.jdot.m * F;
    Mat2 J0 = J0_mat();
    const Mat2 ub[2][2] = {{t.baseU.u1, t.baseU.u2},
                           {t.baseU.u2, -t.baseU.u1}};
    const Mat2 strv[2][2] = {{t.str.m11, t.str.m12}, {t.str.m12, t.str.m22}};
    auto s0_block = [&](int a, int b) {
        if (a + b == 0) return t.s0.m11;
        if (a + b == 1) return t.s0.m12;
        return t.s0.m22;
    };
    double r = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Mat2 lhs = t.udot_block(a, b) * J0 + ub[a][b] * jdot_f;
            // Udot_tr(f_a, J0 f_b): J0 f1 = f2, J0 f2 = -f1.
            Mat2 repaired = (b == 0) ? strv[a][1] : Mat2(-strv[a][0]);
            Mat2 rhs = s0_block(a, b) * J0 + repaired;
            r = std::max(r, (lhs - rhs).norm());
        }
    return r;
}

ModuliTangent I_tangent(const ModuliTangent& t) {
    TangentAtJ newJdot(-t.baseU.base.m * t.jdot.m, t.jdot.base);
    Mat2 F = t.baseU.frame, Finv = F.inverse();
    Mat2 jdot_f = Finv * t.jdot.m * F;
    Mat2 J0 = J0_mat();
    const Mat2 ub[3] = {t.baseU.u1, t.baseU.u2, -t.baseU.u1};
    Mat2 m[3];
    for (int k = 0; k < 3; ++k) {
        int a = (k > 0) ? 1 : 0, b = (k == 2) ? 1 : 0;
        m[k] = -t.udot_block(b, a) * J0 - ub[k] * jdot_f;
    }
    return ModuliTangent(newJdot, m[0], m[1], m[2], t.baseU);
}

}  // namespace pkmoduli
