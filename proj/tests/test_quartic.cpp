#include "doctest.h"

#include <cmath>
#include <random>

#include "pkmoduli/quartic.hpp"

using namespace pkmoduli;

namespace {
Mat2 make(double a, double b, double c, double d) {
    Mat2 m;
    m << a, b, c, d;
    return m;
}

ModuliPoint pt(double x, double y, double u, double v) {
    return ModuliPoint{UhpPoint{x, y}, cplx(u, v)};
}
}  // namespace

TEST_CASE("coordinate tensor at z = i") {
    ModuliPoint p = pt(0.0, 1.0, 0.7, -0.4);
    QuarticTensor T = tensor_from_coordinates(p);
    CHECK(T.t1111 == doctest::Approx(0.7));
    CHECK(T.t1112 == doctest::Approx(-0.4));
    CHECK(T.t1122 == doctest::Approx(-0.7));
    CHECK(T.t1222 == doctest::Approx(0.4));
    CHECK(T.t2222 == doctest::Approx(0.7));
    CHECK(T.membership_residual() < 1e-14);

    UTensor U = raise_index(T);
    CHECK((U.u1 - make(0.7, -0.4, -0.4, -0.7)).norm() < 1e-12);
    CHECK((U.u2 - make(-0.4, -0.7, -0.7, 0.4)).norm() < 1e-12);
    // J U2 = U1 in the canonical frame.
    CHECK((standard_J0().m * U.u2 - U.u1).norm() < 1e-12);
}

TEST_CASE("tensor membership is validated") {
    CHECK_THROWS_AS(QuarticTensor(1, 0, 1, 0, 1, standard_J0()),
                    malformed_input);
    // t1122 = -t1111, t1222 = -t1112, t2222 = t1111 is the compatible slice
    // at J0.
    CHECK_NOTHROW(QuarticTensor(1, 2, -1, -2, 1, standard_J0()));
}

TEST_CASE("component symmetry and evaluation") {
    QuarticTensor T(1, 2, -1, -2, 1, standard_J0());
    CHECK(T.component(0, 1, 0, 0) == doctest::Approx(2.0));
    CHECK(T.component(1, 0, 1, 0) == doctest::Approx(-1.0));
    Vec2 e1(1, 0), e2(0, 1);
    CHECK(T.eval(e1, e2, e1, e2) == doctest::Approx(-1.0));
    Vec2 s = e1 + e2;
    // Multinomial expansion of T(s,s,s,s).
    CHECK(T.eval(s, s, s, s) ==
          doctest::Approx(1 + 4 * 2 + 6 * (-1) + 4 * (-2) + 1));
}

TEST_CASE("raise/lower roundtrip away from z = i") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> D(-1.5, 1.5);
    for (int i = 0; i < 30; ++i) {
        ModuliPoint p = pt(D(rng), 0.4 + std::abs(D(rng)), D(rng), D(rng));
        QuarticTensor T = tensor_from_coordinates(p);
        CHECK(T.membership_residual() < 1e-10);
        QuarticTensor back = lower_index(raise_index(T));
        CHECK(std::abs(back.t1111 - T.t1111) < 1e-10);
        CHECK(std::abs(back.t1112 - T.t1112) < 1e-10);
        CHECK(std::abs(back.t1122 - T.t1122) < 1e-10);
        CHECK(std::abs(back.t1222 - T.t1222) < 1e-10);
        CHECK(std::abs(back.t2222 - T.t2222) < 1e-10);
    }
}

TEST_CASE("quartic evaluation matches the fibre map") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> D(-1.5, 1.5);
    for (int i = 0; i < 30; ++i) {
        ModuliPoint p = pt(D(rng), 0.4 + std::abs(D(rng)), D(rng), D(rng));
        QuarticTensor T = tensor_from_coordinates(p);
        Vec2 v(D(rng), D(rng));
        cplx got = quartic_tau(T, v);
        cplx want = fibre_map_phi(p, v);
        CHECK(std::abs(got - want) < 1e-9);
    }
    // Pinned: at (i, w) on e1 the value is conj(w).
    ModuliPoint p = pt(0.0, 1.0, 0.3, 0.9);
    CHECK(std::abs(quartic_tau(tensor_from_coordinates(p), Vec2(1, 0)) -
                   cplx(0.3, -0.9)) < 1e-14);
}

TEST_CASE("norm of U in coordinates") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> D(-1.5, 1.5);
    for (int i = 0; i < 30; ++i) {
        ModuliPoint p = pt(D(rng), 0.4 + std::abs(D(rng)), D(rng), D(rng));
        UTensor U = raise_index(tensor_from_coordinates(p));
        double y = p.z.y;
        CHECK(norm_sq_U(U) ==
              doctest::Approx(2.0 * std::pow(y, 4) * std::norm(p.w))
                  .epsilon(1e-9));
        CHECK(inner_U(U, U) == doctest::Approx(norm_sq_U(U)).epsilon(1e-12));
    }
}

TEST_CASE("SL(2,R) equivariance of the coordinate tensor") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> D(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        ModuliPoint p = pt(D(rng), 0.5 + std::abs(D(rng)), D(rng), D(rng));
        Mat2 A = make(1.0 + 0.4 * D(rng), D(rng), D(rng), 0.0);
        A(1, 1) = (1.0 + A(0, 1) * A(1, 0)) / A(0, 0);
        QuarticTensor pushed = sl2_act_T(A, tensor_from_coordinates(p));
        QuarticTensor direct = tensor_from_coordinates(sl2_act_zw(A, p));
        CHECK(std::abs(pushed.t1111 - direct.t1111) < 1e-9);
        CHECK(std::abs(pushed.t1112 - direct.t1112) < 1e-9);
        CHECK(std::abs(pushed.t2222 - direct.t2222) < 1e-9);
        // Invariance of the pairing.
        UTensor U = raise_index(tensor_from_coordinates(p));
        CHECK(inner_U(sl2_act_U(A, U), sl2_act_U(A, U)) ==
              doctest::Approx(inner_U(U, U)).epsilon(1e-9));
    }
}

TEST_CASE("closed-form tensor derivative matches finite differences") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> D(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        ModuliPoint p = pt(D(rng), 0.6 + std::abs(D(rng)), D(rng), D(rng));
        double xd = D(rng), yd = D(rng), ud = D(rng), vd = D(rng);
        double out[5];
        tensor_from_coordinates_dot(p, xd, yd, ud, vd, out);
        const double h = 1e-6;
        ModuliPoint pp = pt(p.z.x + h * xd, p.z.y + h * yd,
                            p.w.real() + h * ud, p.w.imag() + h * vd);
        ModuliPoint pm = pt(p.z.x - h * xd, p.z.y - h * yd,
                            p.w.real() - h * ud, p.w.imag() - h * vd);
        QuarticTensor Tp = tensor_from_coordinates(pp);
        QuarticTensor Tm = tensor_from_coordinates(pm);
        double fd[5] = {(Tp.t1111 - Tm.t1111) / (2 * h),
                        (Tp.t1112 - Tm.t1112) / (2 * h),
                        (Tp.t1122 - Tm.t1122) / (2 * h),
                        (Tp.t1222 - Tm.t1222) / (2 * h),
                        (Tp.t2222 - Tm.t2222) / (2 * h)};
        for (int k = 0; k < 5; ++k) CHECK(std::abs(out[k] - fd[k]) < 1e-7);
    }
}

namespace {
// Tensor field on a grid, with fibre value w(x, y) prescribed through the
// conjugate of a complex function F of zeta = x + i y.
TensorGrid grid_from(const std::function<cplx(cplx)>& F, int n, double h) {
    TensorGrid g;
    g.nx = g.ny = n;
    g.h = h;
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            cplx zeta(ix * h, iy * h);
            cplx wbar = F(zeta);
            g.values.push_back(tensor_from_coordinates(
                ModuliPoint{UhpPoint{0.0, 1.0}, std::conj(wbar)}));
        }
    return g;
}
}  // namespace

TEST_CASE("discrete Codazzi system") {
    // Linear holomorphic field: central differences are exact.
    TensorGrid lin = grid_from(
        [](cplx z) { return cplx(2.0, -1.0) + cplx(0.5, 1.5) * z; }, 7, 0.25);
    CHECK(codazzi_residual(lin) < 1e-12);

    // Cubic holomorphic field: O(h^2) residual.
    TensorGrid cub =
        grid_from([](cplx z) { return z * z * z; }, 9, 0.01);
    CHECK(codazzi_residual(cub) < 1e-3);

    // Anti-holomorphic field: the residual is exactly 2 for F = conj(zeta).
    TensorGrid anti =
        grid_from([](cplx z) { return std::conj(z); }, 7, 0.25);
    CHECK(codazzi_residual(anti) == doctest::Approx(2.0).epsilon(1e-10));

    // A grid too small for the interior stencil is rejected.
    TensorGrid tiny = grid_from([](cplx) { return cplx(1.0, 0.0); }, 2, 0.1);
    CHECK_THROWS_AS(codazzi_residual(tiny), malformed_input);
}

TEST_CASE("coordinate model rejects points below the half-plane") {
    CHECK_THROWS_AS(tensor_from_coordinates(pt(0.0, -1.0, 1.0, 0.0)),
                    malformed_input);
    CHECK_THROWS_AS(tensor_from_coordinates(pt(0.0, 0.0, 1.0, 0.0)),
                    malformed_input);
}
