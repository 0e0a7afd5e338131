#include "pkmoduli/jspace.hpp"

#include <cmath>

namespace pkmoduli {

namespace {
constexpr double kStructureTol = 1e-10;
constexpr double kBaseTol = 1e-12;
}  // namespace

LinearComplexStructure::LinearComplexStructure(const Mat2& mat) : m(mat) {
    Mat2 sq = m * m + Mat2::Identity();
    if (sq.norm() > kStructureTol * (1.0 + m.squaredNorm()))
        throw malformed_input("not a complex structure: J^2 != -1");
    Vec2 e1(1.0, 0.0);
    if (area_form(e1, m * e1) <= 0.0)
        throw malformed_input("complex structure not rho0-compatible");
}

TangentAtJ::TangentAtJ(const Mat2& mat, const LinearComplexStructure& at)
    : m(mat), base(at) {
    Mat2 anti = base.m * m + m * base.m;
    if (anti.norm() > kStructureTol * (1.0 + m.norm()))
        throw malformed_input("tangent does not anti-commute with its base");
}

double metric_gJ(const LinearComplexStructure& J, const Vec2& v, const Vec2& w) {
    return area_form(v, J.m * w);
}

LinearComplexStructure uhp_to_J(const UhpPoint& z) {
    if (!z.valid()) throw malformed_input("uhp_to_J: point not in upper half-plane");
    Mat2 m;
    m << z.x / z.y, -(z.x * z.x + z.y * z.y) / z.y,
         1.0 / z.y, -z.x / z.y;
    return LinearComplexStructure(m);
}

LinearComplexStructure standard_J0() {
    Mat2 m;
    m << 0.0, -1.0, 1.0, 0.0;
    return LinearComplexStructure(m);
}

TangentAtJ uhp_to_J_diff(const UhpPoint& z, double xdot, double ydot) {
    const double y = z.y, x = z.x;
    Mat2 dx, dy;
    dx << 1.0 / y, -2.0 * x / y,
          0.0, -1.0 / y;
    dy << -x / (y * y), -(y * y - x * x) / (y * y),
          -1.0 / (y * y), x / (y * y);
    return TangentAtJ(xdot * dx + ydot * dy, uhp_to_J(z));
}

void require_same_base(const LinearComplexStructure& a,
                       const LinearComplexStructure& b) {
    if ((a.m - b.m).norm() > kBaseTol * (1.0 + a.m.norm()))
        throw base_mismatch("tangent vectors live at different base points");
}

double inner_JJ(const TangentAtJ& a, const TangentAtJ& b) {
    require_same_base(a.base, b.base);
    return 0.5 * (a.m * b.m).trace();
}

double omega_JJ(const TangentAtJ& a, const TangentAtJ& b) {
    require_same_base(a.base, b.base);
    return -0.5 * (a.m * (b.base.m * b.m)).trace();
}

TangentAtJ I_of(const TangentAtJ& a) {
    return TangentAtJ(-a.base.m * a.m, a.base);
}

KahlerAtJ kahler_at_J(const LinearComplexStructure& J, const TangentAtJ& a,
                      const TangentAtJ& b) {
    require_same_base(J, a.base);
    require_same_base(J, b.base);
    return KahlerAtJ{inner_JJ(a, b), omega_JJ(a, b), I_of(b)};
}

LemmaDotJResiduals lemma_dotJ_check(const LinearComplexStructure& J,
                                    const TangentAtJ& a, const TangentAtJ& b,
                                    const TangentAtJ& c) {
    require_same_base(J, a.base);
    require_same_base(J, b.base);
    require_same_base(J, c.base);
    Mat2 lhs = a.m * b.m;
    Mat2 rhs = inner_JJ(a, b) * Mat2::Identity() -
               0.5 * ((J.m * a.m) * b.m).trace() * J.m;
    double triple = std::abs((a.m * b.m * c.m).trace());
    double tripleJ = std::abs((J.m * a.m * b.m * c.m).trace());
    return LemmaDotJResiduals{(lhs - rhs).norm(), triple, tripleJ};
}

void require_unimodular(const Mat2& A) {
    if (std::abs(A.determinant() - 1.0) > 1e-10)
        throw malformed_input("matrix is not in SL(2,R)");
}

LinearComplexStructure sl2_act_J(const Mat2& A, const LinearComplexStructure& J) {
    require_unimodular(A);
    return LinearComplexStructure(A * J.m * A.inverse());
}

TangentAtJ sl2_act_tangentJ(const Mat2& A, const TangentAtJ& t) {
    require_unimodular(A);
    return TangentAtJ(A * t.m * A.inverse(), sl2_act_J(A, t.base));
}

UhpPoint mobius(const Mat2& A, const UhpPoint& z) {
    require_unimodular(A);
    cplx zz(z.x, z.y);
    cplx num = A(0, 0) * zz + A(0, 1);
    cplx den = A(1, 0) * zz + A(1, 1);
    cplx res = num / den;
    return UhpPoint{res.real(), res.imag()};
}

DeformationFunction DeformationFunction::linear() {
    return DeformationFunction{
        "linear", [](double t) { return -t; }, [](double) { return -1.0; }};
}

DeformationFunction DeformationFunction::sqrt() {
    return DeformationFunction{"sqrt",
                               [](double t) { return 1.0 - std::sqrt(1.0 + t); },
                               [](double t) { return -0.5 / std::sqrt(1.0 + t); }};
}

DeformationFunction DeformationFunction::by_name(const std::string& name) {
    if (name == "linear") return linear();
    if (name == "sqrt") return sqrt();
    throw malformed_input("unknown deformation function: " + name);
}

}  // namespace pkmoduli
