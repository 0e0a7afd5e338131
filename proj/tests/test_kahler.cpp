#include "doctest.h"

#include <cmath>
#include <random>

#include "pkmoduli/kahler.hpp"

using namespace pkmoduli;

namespace {
ModuliPoint pt(double x, double y, double u, double v) {
    return ModuliPoint{UhpPoint{x, y}, cplx(u, v)};
}

ModuliTangent lift(const ModuliPoint& p, const Vec4& v) {
    return coordinate_tangent(p, v(0), v(1), v(2), v(3));
}
}  // namespace

TEST_CASE("metric matrix at (i, 0) with the linear deformation") {
    DeformationFunction f = DeformationFunction::linear();
    MetricAtPoint g = metric_matrix(pt(0, 1, 0, 0), f);
    Mat4 want = Mat4::Zero();
    want(0, 0) = want(1, 1) = 1.0;
    want(2, 2) = want(3, 3) = -1.0;
    CHECK((g.m - want).norm() < 1e-12);
    CHECK(metric_signature(g) == std::make_pair(2, 2));
}

TEST_CASE("determinant closed form and signature") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> D(-1.2, 1.2);
    for (const DeformationFunction& f :
         {DeformationFunction::linear(), DeformationFunction::sqrt()}) {
        for (int i = 0; i < 25; ++i) {
            ModuliPoint p = pt(D(rng), 0.4 + std::abs(D(rng)), D(rng), D(rng));
            MetricAtPoint g = metric_matrix(p, f);
            double want = metric_determinant_closed_form(p, f);
            CHECK(g.m.determinant() ==
                  doctest::Approx(want).epsilon(1e-8));
            CHECK(metric_signature(g) == std::make_pair(2, 2));
        }
    }
}

TEST_CASE("intrinsic metric agrees with the coordinate matrix") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> D(-1.0, 1.0);
    DeformationFunction f = DeformationFunction::sqrt();
    for (int i = 0; i < 25; ++i) {
        ModuliPoint p = pt(D(rng), 0.5 + std::abs(D(rng)), D(rng), D(rng));
        Vec4 a(D(rng), D(rng), D(rng), D(rng));
        Vec4 b(D(rng), D(rng), D(rng), D(rng));
        double matrix_val = a.dot(metric_matrix(p, f).m * b);
        double intrinsic_val = intrinsic_metric(lift(p, a), lift(p, b), f);
        CHECK(matrix_val == doctest::Approx(intrinsic_val).epsilon(1e-8));
        // And the same for omega.
        double omega_matrix = a.dot(symplectic_matrix(p, f).m * b);
        double omega_intrinsic = intrinsic_omega(lift(p, a), lift(p, b), f);
        CHECK(omega_matrix == doctest::Approx(omega_intrinsic).epsilon(1e-8));
        CHECK(omega_matrix ==
              doctest::Approx(-b.dot(symplectic_matrix(p, f).m * a))
                  .epsilon(1e-10));
    }
}

TEST_CASE("compatibility of (g, I, omega)") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> D(-1.0, 1.0);
    DeformationFunction f = DeformationFunction::linear();
    for (int i = 0; i < 25; ++i) {
        ModuliPoint p = pt(D(rng), 0.5 + std::abs(D(rng)), D(rng), D(rng));
        Mat4 I = complex_structure_matrix(p);
        Mat4 g = metric_matrix(p, f).m;
        CHECK((I * I + Mat4::Identity()).norm() < 1e-12);
        CHECK((I.transpose() * g * I - g).norm() < 1e-10);
        CHECK((symplectic_matrix(p, f).m - g * I).norm() < 1e-12);
    }
}

TEST_CASE("the symplectic form is closed; a perturbed one is not") {
    DeformationFunction f = DeformationFunction::sqrt();
    ModuliPoint p = pt(0.3, 1.2, 0.5, 0.2);
    CHECK(exterior_derivative_residual(p, f, 1e-4) < 1e-6);
    CHECK(exterior_derivative_residual(p, f, 1e-4, 1e-3) > 1e-5);
}

TEST_CASE("finite-difference exterior derivative: constant form control") {
    Mat4 c = Mat4::Zero();
    c(0, 1) = 1.0;
    c(1, 0) = -1.0;
    c(2, 3) = 0.7;
    c(3, 2) = -0.7;
    auto field = [&](const ModuliPoint&) { return c; };
    CHECK(d2form_residual(field, pt(0.2, 1.0, 0.1, -0.3), 1e-3) < 1e-12);
    CHECK_THROWS_AS(d2form_residual(field, pt(0, 1, 0, 0), 0.0),
                    malformed_input);
    // Step too large for the half-plane.
    CHECK_THROWS_AS(d2form_residual(field, pt(0, 0.5, 0, 0), 0.5),
                    malformed_input);
}

TEST_CASE("SL(2,R) invariance of the metric") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> D(-1.0, 1.0);
    DeformationFunction f = DeformationFunction::sqrt();
    for (int i = 0; i < 20; ++i) {
        ModuliPoint p = pt(D(rng), 0.5 + std::abs(D(rng)), D(rng), D(rng));
        ModuliTangent a =
            coordinate_tangent(p, D(rng), D(rng), D(rng), D(rng));
        ModuliTangent b =
            coordinate_tangent(p, D(rng), D(rng), D(rng), D(rng));
        Mat2 A;
        A << 1.0 + 0.4 * D(rng), D(rng), D(rng), 0.0;
        A(1, 1) = (1.0 + A(0, 1) * A(1, 0)) / A(0, 0);
        ModuliTangent aa = sl2_act_tangent(A, a);
        ModuliTangent bb = sl2_act_tangent(A, b);
        CHECK(intrinsic_metric(aa, bb, f) ==
              doctest::Approx(intrinsic_metric(a, b, f)).epsilon(1e-8));
        CHECK(intrinsic_omega(aa, bb, f) ==
              doctest::Approx(intrinsic_omega(a, b, f)).epsilon(1e-8));
    }
}

TEST_CASE("fiber norm") {
    CHECK(fiber_norm_sq(pt(0.7, 2.0, 0.3, -0.4)) ==
          doctest::Approx(16.0 * 0.25));
    CHECK_THROWS_AS(fiber_norm_sq(pt(0, -1, 0, 0)), malformed_input);
}
