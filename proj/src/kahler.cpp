#include "pkmoduli/kahler.hpp"

#include <cmath>

namespace pkmoduli {

double fiber_norm_sq(const ModuliPoint& p) {
    if (!p.z.valid()) throw malformed_input("fiber_norm_sq: Im z <= 0");
    double y2 = p.z.y * p.z.y;
    return y2 * y2 * std::norm(p.w);
}

MetricAtPoint metric_matrix(const ModuliPoint& p, const DeformationFunction& f,
                            double perturb_eps) {
    if (!p.z.valid()) throw malformed_input("metric_matrix: Im z <= 0");
    const double y = p.z.y;
    const double u = p.w.real(), v = p.w.imag();
    const double t = fiber_norm_sq(p);
    const double fv = f(t), fp = f.prime(t);
    const double y2 = y * y, y3 = y2 * y, y4 = y3 * y;
    const double diag = (1.0 - fv + 4.0 * (u * u + v * v) * y4 * fp) / y2;
    Mat4 g;
    g << diag, 0.0, 2.0 * fp * v * y3, -2.0 * fp * u * y3,
         0.0, diag, 2.0 * fp * u * y3, 2.0 * fp * v * y3,
         2.0 * fp * v * y3, 2.0 * fp * u * y3, fp * y4, 0.0,
         -2.0 * fp * u * y3, 2.0 * fp * v * y3, 0.0, fp * y4;
    g(0, 0) *= 1.0 + perturb_eps;
    return MetricAtPoint{g};
}

TwoFormAtPoint symplectic_matrix(const ModuliPoint& p,
                                 const DeformationFunction& f,
                                 double perturb_eps) {
    return TwoFormAtPoint{metric_matrix(p, f, perturb_eps).m *
                          complex_structure_matrix(p)};
}

Mat4 complex_structure_matrix(const ModuliPoint&) {
    Mat4 m = Mat4::Zero();
    m(0, 1) = -1.0;
    m(1, 0) = 1.0;
    m(2, 3) = -1.0;
    m(3, 2) = 1.0;
    return m;
}

double metric_determinant_closed_form(const ModuliPoint& p,
                                      const DeformationFunction& f) {
    const double t = fiber_norm_sq(p);
    const double fp = f.prime(t), omf = 1.0 - f(t);
    const double y2 = p.z.y * p.z.y;
    return y2 * y2 * fp * fp * omf * omf;
}

std::pair<int, int> metric_signature(const MetricAtPoint& g) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(g.m);
    int pos = 0, neg = 0;
    for (int i = 0; i < 4; ++i) {
        double ev = es.eigenvalues()(i);
        if (ev > 1e-12) ++pos;
        else if (ev < -1e-12) ++neg;
    }
    return {pos, neg};
}

double intrinsic_metric(const ModuliTangent& a, const ModuliTangent& b,
                        const DeformationFunction& f) {
    require_same_base(a.baseU, b.baseU);
    const double t = 0.5 * norm_sq_U(a.baseU);
    return (1.0 - f(t)) * inner_JJ(a.jdot, b.jdot) +
           0.5 * f.prime(t) * (inner_u0(a, b) - inner_utr(a, b));
}

double intrinsic_omega(const ModuliTangent& a, const ModuliTangent& b,
                       const DeformationFunction& f) {
    return intrinsic_metric(a, I_tangent(b), f);
}

double d2form_residual(
    const std::function<Mat4(const ModuliPoint&)>& two_form,
    const ModuliPoint& p, double h) {
    if (h <= 0.0) throw malformed_input("d2form_residual: degenerate step");
    if (p.z.y <= h) throw malformed_input("d2form_residual: too close to y = 0");
    auto shifted = [&](int coord, double delta) {
        ModuliPoint q = p;
        switch (coord) {
            case 0: q.z.x += delta; break;
            case 1: q.z.y += delta; break;
            case 2: q.w += delta; break;
            default: q.w += cplx(0.0, delta); break;
        }
        return two_form(q);
    };
    // Central-difference partials of the matrix field.
    Mat4 d[4];
    for (int c = 0; c < 4; ++c)
        d[c] = (shifted(c, h) - shifted(c, -h)) / (2.0 * h);
    double r = 0.0;
    const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& idx : triples) {
        int i = idx[0], j = idx[1], k = idx[2];
        double coeff = d[i](j, k) - d[j](i, k) + d[k](i, j);
        r = std::max(r, std::abs(coeff));
    }
    return r;
}

double exterior_derivative_residual(const ModuliPoint& p,
                                    const DeformationFunction& f, double h,
                                    double perturb_eps) {
    return d2form_residual(
        [&](const ModuliPoint& q) {
            return symplectic_matrix(q, f, perturb_eps).m;
        },
        p, h);
}

}  // namespace pkmoduli
