#include "doctest.h"

#include <cmath>
#include <vector>

#include "pkmoduli/ambient.hpp"

using namespace pkmoduli;

namespace {
const std::vector<SurfaceParam> kPoints = {
    {0.0, 0.0}, {0.3, -0.2}, {-0.7, 0.5}, {1.1, 0.9}, {-1.3, -1.2}};
}

TEST_CASE("the surface lies in the quadric and is conformal") {
    for (const SurfaceParam& p : kPoints) {
        Vec5 f = barbot_embed(p);
        CHECK(eta_form(f, f) == doctest::Approx(-1.0).epsilon(1e-12));
        Vec5 fx = barbot_dx(p), fy = barbot_dy(p);
        CHECK(eta_form(fx, fx) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(eta_form(fy, fy) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(std::abs(eta_form(fx, fy)) < 1e-12);
        // Tangents are eta-orthogonal to the position.
        CHECK(std::abs(eta_form(f, fx)) < 1e-12);
        CHECK(std::abs(eta_form(f, fy)) < 1e-12);
    }
}

TEST_CASE("closed-form derivatives match finite differences") {
    const double h = 1e-5;
    for (const SurfaceParam& p : kPoints) {
        Vec5 fdx = (barbot_embed({p.x + h, p.y}) - barbot_embed({p.x - h, p.y})) /
                   (2 * h);
        Vec5 fdy = (barbot_embed({p.x, p.y + h}) - barbot_embed({p.x, p.y - h})) /
                   (2 * h);
        CHECK((barbot_dx(p) - fdx).norm() < 1e-7);
        CHECK((barbot_dy(p) - fdy).norm() < 1e-7);
        Vec5 fdxx = (barbot_dx({p.x + h, p.y}) - barbot_dx({p.x - h, p.y})) /
                    (2 * h);
        Vec5 fdxy = (barbot_dx({p.x, p.y + h}) - barbot_dx({p.x, p.y - h})) /
                    (2 * h);
        Vec5 fdyy = (barbot_dy({p.x, p.y + h}) - barbot_dy({p.x, p.y - h})) /
                    (2 * h);
        CHECK((barbot_dxx(p) - fdxx).norm() < 1e-6);
        CHECK((barbot_dxy(p) - fdxy).norm() < 1e-6);
        CHECK((barbot_dyy(p) - fdyy).norm() < 1e-6);
    }
}

TEST_CASE("normal frame is eta-orthonormal and orthogonal to the surface") {
    for (const SurfaceParam& p : kPoints) {
        ExtrinsicFrame fr = extrinsic_frame(p);
        CHECK(eta_form(fr.normal1, fr.normal1) == doctest::Approx(-1.0));
        CHECK(eta_form(fr.normal2, fr.normal2) == doctest::Approx(-1.0));
        CHECK(std::abs(eta_form(fr.normal1, fr.normal2)) < 1e-10);
        for (const Vec5& n : {fr.normal1, fr.normal2}) {
            CHECK(std::abs(eta_form(n, fr.position)) < 1e-10);
            CHECK(std::abs(eta_form(n, fr.tangent1)) < 1e-10);
            CHECK(std::abs(eta_form(n, fr.tangent2)) < 1e-10);
        }
    }
    // At the origin the frame is the coordinate one.
    ExtrinsicFrame fr0 = extrinsic_frame({0.0, 0.0});
    CHECK((fr0.normal1 - Vec5::Unit(4)).norm() < 1e-12);
    CHECK((fr0.normal2 - Vec5::Unit(3)).norm() < 1e-12);
}

TEST_CASE("second fundamental form: maximal, flat, constant norm") {
    for (const SurfaceParam& p : kPoints) {
        CHECK(maximality_residual(p) < 1e-10);
        CHECK(norm_sq_II(p) == doctest::Approx(2.0).epsilon(1e-10));
        ExtrinsicFrame fr = extrinsic_frame(p);
        CHECK(shape_relation_residual(p, fr) < 1e-9);
    }
    // At the origin II(e1, e1) = e4 in ambient coordinates.
    ExtrinsicFrame fr0 = extrinsic_frame({0.0, 0.0});
    SecondFundamentalValue II = second_fundamental_form({0.0, 0.0});
    CHECK((II.vector(fr0, 0, 0) - Vec5::Unit(3)).norm() < 1e-12);
    CHECK(II.vector(fr0, 0, 1).norm() < 1e-12);
}

TEST_CASE("the quartic differential of the surface is the constant -1") {
    for (const SurfaceParam& p : kPoints) {
        auto [T, q] = quartic_from_embedding(p);
        CHECK(q.real() == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(std::abs(q.imag()) < 1e-9);
        // Coordinate components: the frame scaling by sqrt(2) per slot
        // multiplies the unit-frame value by 4.
        CHECK(T.t1111 == doctest::Approx(-4.0).epsilon(1e-9));
        CHECK(std::abs(T.t1112) < 1e-9);
        CHECK(T.membership_residual() < 1e-9);
    }
}

TEST_CASE("boundary points are light-like") {
    for (const Vec5& b : boundary_points()) {
        CHECK(std::abs(eta_form(b, b)) < 1e-12);
    }
}
