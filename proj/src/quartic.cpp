#include "pkmoduli/quartic.hpp"

#include <cmath>

namespace pkmoduli {

namespace {
constexpr double kTensorTol = 1e-10;

double scale_of(const QuarticTensor& T) {
    return 1.0 + std::abs(T.t1111) + std::abs(T.t1112) + std::abs(T.t1122) +
           std::abs(T.t1222) + std::abs(T.t2222);
}
}  // namespace

QuarticTensor::QuarticTensor(double a, double b, double c, double d, double e,
                             const LinearComplexStructure& J, bool validate)
    : t1111(a), t1112(b), t1122(c), t1222(d), t2222(e), base(J) {
    if (validate && membership_residual() > kTensorTol * scale_of(*this))
        throw malformed_input("tensor violates T(J.,J.,.,.) = -T");
}

double QuarticTensor::component(int i, int j, int k, int l) const {
    switch (i + j + k + l) {
        case 0: return t1111;
        case 1: return t1112;
        case 2: return t1122;
        case 3: return t1222;
        default: return t2222;
    }
}

double QuarticTensor::eval(const Vec2& x, const Vec2& y, const Vec2& z,
                           const Vec2& w) const {
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    s += x(i) * y(j) * z(k) * w(l) * component(i, j, k, l);
    return s;
}

double QuarticTensor::membership_residual() const {
    Vec2 e[2] = {Vec2(1.0, 0.0), Vec2(0.0, 1.0)};
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    double lhs = eval(base.m * e[i], base.m * e[j], e[k], e[l]);
                    double rhs = -eval(e[i], e[j], e[k], e[l]);
                    r = std::max(r, std::abs(lhs - rhs));
                }
    return r;
}

Mat2 gJ_frame(const LinearComplexStructure& J) {
    Vec2 e1(1.0, 0.0);
    double n = metric_gJ(J, e1, e1);
    Vec2 f1 = e1 / std::sqrt(n);
    Vec2 f2 = J.m * f1;
    Mat2 F;
    F.col(0) = f1;
    F.col(1) = f2;
    return F;
}

UTensor::UTensor(const Mat2& u1_, const Mat2& u2_, const Mat2& frame_,
                 const LinearComplexStructure& J, bool validate)
    : u1(u1_), u2(u2_), frame(frame_), base(J) {
    if (!validate) return;
    double scale = 1.0 + u1.norm() + u2.norm();
    Mat2 J0;
    J0 << 0.0, -1.0, 1.0, 0.0;
    bool ok = std::abs(u1.trace()) <= kTensorTol * scale &&
              std::abs(u2.trace()) <= kTensorTol * scale &&
              (u1 - u1.transpose()).norm() <= kTensorTol * scale &&
              (u2 - u2.transpose()).norm() <= kTensorTol * scale &&
              (J0 * u2 - u1).norm() <= kTensorTol * scale;
    if (!ok) throw malformed_input("U tensor violates its invariants");
}

Mat2 UTensor::endo(const Vec2& x, const Vec2& y) const {
    Mat2 Finv = frame.inverse();
    Vec2 xf = Finv * x, yf = Finv * y;
    // U = U1 (x) sigma1 + U2 (x) sigma2 in the frame, so U(f2,f2) = -U1.
    Mat2 mf = xf(0) * yf(0) * u1 + (xf(0) * yf(1) + xf(1) * yf(0)) * u2 -
              xf(1) * yf(1) * u1;
    return frame * mf * Finv;
}

UTensor raise_index(const QuarticTensor& T) {
    Mat2 F = gJ_frame(T.base);
    Vec2 f1 = F.col(0), f2 = F.col(1);
    Mat2 u1, u2;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Vec2 fa = F.col(a), fb = F.col(b);
            u1(a, b) = T.eval(f1, f1, fb, fa);
            u2(a, b) = T.eval(f1, f2, fb, fa);
        }
    return UTensor(u1, u2, F, T.base);
}

QuarticTensor lower_index(const UTensor& U) {
    Vec2 e1(1.0, 0.0), e2(0.0, 1.0);
    auto t = [&](const Vec2& x, const Vec2& y, const Vec2& z, const Vec2& w) {
        return metric_gJ(U.base, U.endo(x, y) * z, w);
    };
    return QuarticTensor(t(e1, e1, e1, e1), t(e1, e1, e1, e2), t(e1, e1, e2, e2),
                         t(e1, e2, e2, e2), t(e2, e2, e2, e2), U.base);
}

QuarticTensor tensor_from_coordinates(const ModuliPoint& p) {
    const double x = p.z.x, y = p.z.y;
    const double u = p.w.real(), v = p.w.imag();
    double t1111 = u;
    double t1112 = -x * u + y * v;
    double t1122 = u * (x * x - y * y) - 2.0 * x * y * v;
    double t1222 = -u * x * x * x - v * y * y * y +
                   3.0 * (u * y * y * x + x * x * y * v);
    double t2222 = u * (x * x * x * x - 6.0 * x * x * y * y + y * y * y * y) +
                   4.0 * v * (x * y * y * y - x * x * x * y);
    return QuarticTensor(t1111, t1112, t1122, t1222, t2222, uhp_to_J(p.z));
}

void tensor_from_coordinates_dot(const ModuliPoint& p, double xd, double yd,
                                 double ud, double vd, double out[5]) {
    const double x = p.z.x, y = p.z.y;
    const double u = p.w.real(), v = p.w.imag();
    out[0] = ud;
    out[1] = -xd * u - x * ud + yd * v + y * vd;
    out[2] = ud * (x * x - y * y) + u * (2.0 * x * xd - 2.0 * y * yd) -
             2.0 * (xd * y + x * yd) * v - 2.0 * x * y * vd;
    out[3] = -ud * x * x * x - 3.0 * u * x * x * xd - vd * y * y * y -
             3.0 * v * y * y * yd +
             3.0 * (ud * y * y * x + u * (2.0 * y * yd * x + y * y * xd) +
                    vd * x * x * y + v * (2.0 * x * xd * y + x * x * yd));
    out[4] = ud * (x * x * x * x - 6.0 * x * x * y * y + y * y * y * y) +
             u * (4.0 * x * x * x * xd - 12.0 * x * xd * y * y -
                  12.0 * x * x * y * yd + 4.0 * y * y * y * yd) +
             4.0 * vd * (x * y * y * y - x * x * x * y) +
             4.0 * v * (xd * y * y * y + 3.0 * x * y * y * yd -
                        3.0 * x * x * xd * y - x * x * x * yd);
}

cplx quartic_eval(const QuarticTensor& T, const Vec2& a, const Vec2& b,
                  const Vec2& c, const Vec2& d) {
    return cplx(T.eval(a, b, c, d), -T.eval(a, b, c, T.base.m * d));
}

cplx quartic_tau(const QuarticTensor& T, const Vec2& v) {
    return quartic_eval(T, v, v, v, v);
}

cplx fibre_map_phi(const ModuliPoint& p, const Vec2& v) {
    cplx z(p.z.x, p.z.y);
    cplx base = v(0) - std::conj(z) * v(1);
    cplx b2 = base * base;
    return std::conj(p.w) * b2 * b2;
}

double inner_U(const UTensor& a, const UTensor& b) {
    require_same_base(a.base, b.base);
    return 0.5 * ((a.u1 * b.u1).trace() + (a.u2 * b.u2).trace());
}

double norm_sq_U(const UTensor& a) { return (a.u1 * a.u1).trace(); }

ModuliPoint sl2_act_zw(const Mat2& A, const ModuliPoint& p) {
    require_unimodular(A);
    cplx z(p.z.x, p.z.y);
    cplx den = A(1, 0) * z + A(1, 1);
    cplx zn = (A(0, 0) * z + A(0, 1)) / den;
    cplx d2 = den * den;
    return ModuliPoint{UhpPoint{zn.real(), zn.imag()}, d2 * d2 * p.w};
}

QuarticTensor sl2_act_T(const Mat2& A, const QuarticTensor& T) {
    require_unimodular(A);
    Mat2 Ainv = A.inverse();
    Vec2 c1 = Ainv.col(0), c2 = Ainv.col(1);
    return QuarticTensor(T.eval(c1, c1, c1, c1), T.eval(c1, c1, c1, c2),
                         T.eval(c1, c1, c2, c2), T.eval(c1, c2, c2, c2),
                         T.eval(c2, c2, c2, c2), sl2_act_J(A, T.base));
}

UTensor sl2_act_U(const Mat2& A, const UTensor& U) {
    return raise_index(sl2_act_T(A, lower_index(U)));
}

double codazzi_residual(const TensorGrid& grid) {
    if (grid.nx < 3 || grid.ny < 3 || grid.h <= 0.0)
        throw malformed_input("codazzi_residual: grid too small for a stencil");
    if (static_cast<int>(grid.values.size()) != grid.nx * grid.ny)
        throw malformed_input("codazzi_residual: grid size mismatch");
    auto at = [&](int ix, int iy) -> const QuarticTensor& {
        return grid.values[static_cast<size_t>(iy) * grid.nx + ix];
    };
    const double inv2h = 1.0 / (2.0 * grid.h);
    double r = 0.0;
    for (int iy = 1; iy + 1 < grid.ny; ++iy)
        for (int ix = 1; ix + 1 < grid.nx; ++ix) {
            double dx_a = (at(ix + 1, iy).t1111 - at(ix - 1, iy).t1111) * inv2h;
            double dy_a = (at(ix, iy + 1).t1111 - at(ix, iy - 1).t1111) * inv2h;
            double dx_b = (at(ix + 1, iy).t1112 - at(ix - 1, iy).t1112) * inv2h;
            double dy_b = (at(ix, iy + 1).t1112 - at(ix, iy - 1).t1112) * inv2h;
            // Cauchy-Riemann system for f = T1111 - i T1112.
            r = std::max(r, std::abs(dx_a + dy_b));
            r = std::max(r, std::abs(dy_a - dx_b));
        }
    return r;
}

}  // namespace pkmoduli
