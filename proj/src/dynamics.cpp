#include "pkmoduli/dynamics.hpp"

#include <cmath>

namespace pkmoduli {

namespace {
Mat2 J0_mat() {
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}

Vec4 as_vec(const ModuliPoint& p) {
    return Vec4(p.z.x, p.z.y, p.w.real(), p.w.imag());
}

ModuliPoint as_point(const Vec4& q) {
    return ModuliPoint{UhpPoint{q(0), q(1)}, cplx(q(2), q(3))};
}
}  // namespace

LieAlgebraElement::LieAlgebraElement(const Mat2& mat) : m(mat) {
    if (std::abs(m.trace()) > 1e-12 * (1.0 + m.norm()))
        throw malformed_input("sl(2,R) element must be traceless");
}

LieAlgebraElement LieAlgebraElement::xi1() { return LieAlgebraElement(J0_mat()); }

LieAlgebraElement LieAlgebraElement::xi2() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return LieAlgebraElement(m);
}

LieAlgebraElement LieAlgebraElement::xi3() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return LieAlgebraElement(m);
}

ModuliPoint circle_act(double theta, const ModuliPoint& p) {
    return ModuliPoint{p.z, std::polar(1.0, theta) * p.w};
}

UTensor circle_act_U(double theta, const UTensor& U) {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat2 J0 = J0_mat();
    return UTensor(c * U.u1 - s * U.u1 * J0, c * U.u2 - s * U.u2 * J0, U.frame,
                   U.base);
}

ModuliTangent circle_act_tangent(double theta, const ModuliTangent& t) {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat2 F = t.baseU.frame;
    Mat2 jdot_f = F.inverse() * t.jdot.m * F;
    Mat2 J0 = J0_mat();
    const Mat2 ub[3] = {t.baseU.u1, t.baseU.u2, -t.baseU.u1};
    Mat2 m[3];
    for (int k = 0; k < 3; ++k) {
        int a = (k > 0) ? 1 : 0, b = (k == 2) ? 1 : 0;
        Mat2 md = t.udot_block(b, a);
        m[k] = c * md - s * (md * J0 + ub[k] * jdot_f);
    }
    return ModuliTangent(t.jdot, m[0], m[1], m[2], circle_act_U(theta, t.baseU));
}

double hamiltonian_h1(const ModuliPoint& p, const DeformationFunction& f) {
    if (!p.z.valid()) throw malformed_input("hamiltonian_h1: Im z <= 0");
    return 0.5 * f(fiber_norm_sq(p));
}

double hamiltonian_h2(const ModuliPoint& p, const DeformationFunction& f) {
    if (!p.z.valid()) throw malformed_input("hamiltonian_h2: Im z <= 0");
    return 2.0 * (p.z.x / p.z.y) * (1.0 - f(fiber_norm_sq(p)));
}

double moment_map_sl2(const LieAlgebraElement& X, const ModuliPoint& p,
                      const DeformationFunction& f) {
    if (!p.z.valid()) throw malformed_input("moment_map_sl2: Im z <= 0");
    return (1.0 - f(fiber_norm_sq(p))) * (uhp_to_J(p.z).m * X.m).trace();
}

Vec4 grad_h1(const ModuliPoint& p, const DeformationFunction& f) {
    const double y = p.z.y, u = p.w.real(), v = p.w.imag();
    const double y3 = y * y * y, y4 = y3 * y;
    const double fp = f.prime(fiber_norm_sq(p));
    return Vec4(0.0, 2.0 * fp * y3 * (u * u + v * v), fp * y4 * u, fp * y4 * v);
}

Vec4 grad_h2(const ModuliPoint& p, const DeformationFunction& f) {
    const double x = p.z.x, y = p.z.y, u = p.w.real(), v = p.w.imag();
    const double t = fiber_norm_sq(p);
    const double fv = f(t), fp = f.prime(t);
    const double y2 = y * y, y3 = y2 * y;
    return Vec4(2.0 * (1.0 - fv) / y,
                -2.0 * x * (1.0 - fv) / y2 - 8.0 * x * fp * y2 * (u * u + v * v),
                -4.0 * x * y3 * fp * u, -4.0 * x * y3 * fp * v);
}

Vec4 gradient_fd(const std::function<double(const ModuliPoint&)>& H,
                 const ModuliPoint& p, double h) {
    Vec4 g;
    Vec4 q0 = as_vec(p);
    for (int c = 0; c < 4; ++c) {
        Vec4 qp = q0, qm = q0;
        qp(c) += h;
        qm(c) -= h;
        g(c) = (H(as_point(qp)) - H(as_point(qm))) / (2.0 * h);
    }
    return g;
}

Vec4 hamiltonian_vector_field(const Vec4& gradH, const ModuliPoint& p,
                              const DeformationFunction& f) {
    Mat4 W = symplectic_matrix(p, f).m;
    // omega(X_H, Y) = dH(Y) for all Y, i.e. W^T X_H = grad H.
    return W.transpose().fullPivLu().solve(gradH);
}

Vec4 hamiltonian_vector_field(const std::function<double(const ModuliPoint&)>& H,
                              const ModuliPoint& p, const DeformationFunction& f,
                              double h) {
    return hamiltonian_vector_field(gradient_fd(H, p, h), p, f);
}

Vec4 hvf_h1(const ModuliPoint& p, const DeformationFunction& f) {
    return hamiltonian_vector_field(grad_h1(p, f), p, f);
}

Vec4 hvf_h2(const ModuliPoint& p, const DeformationFunction& f) {
    return hamiltonian_vector_field(grad_h2(p, f), p, f);
}

Trajectory flow(FlowKind which, const ModuliPoint& start, double t_end,
                int steps, const DeformationFunction& f,
                IntegratorKind integrator) {
    if (steps < 1) throw malformed_input("flow: steps must be >= 1");
    if (!start.z.valid()) throw malformed_input("flow: Im z <= 0");
    auto rhs = [&](const Vec4& q) -> Vec4 {
        ModuliPoint p = as_point(q);
        if (!p.z.valid()) throw integration_error("flow left the upper half-plane");
        return which == FlowKind::H1 ? hvf_h1(p, f) : hvf_h2(p, f);
    };
    const double dt = t_end / steps;
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.points.reserve(steps + 1);
    traj.invariant_log.reserve(steps + 1);
    Vec4 q = as_vec(start);
    for (int n = 0; n <= steps; ++n) {
        ModuliPoint p = as_point(q);
        if (!p.z.valid()) throw integration_error("flow left the upper half-plane");
        if (!q.allFinite()) throw integration_error("flow blew up");
        traj.times.push_back(n * dt);
        traj.points.push_back(p);
        traj.invariant_log.emplace_back(hamiltonian_h1(p, f),
                                        hamiltonian_h2(p, f));
        if (n == steps) break;
        if (integrator == IntegratorKind::RungeKutta4) {
            Vec4 k1 = rhs(q);
            Vec4 k2 = rhs(q + 0.5 * dt * k1);
            Vec4 k3 = rhs(q + 0.5 * dt * k2);
            Vec4 k4 = rhs(q + dt * k3);
            q += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } else {
            // Implicit midpoint by fixed-point iteration.
            Vec4 k = rhs(q);
            for (int it = 0; it < 50; ++it) {
                Vec4 k_next = rhs(q + 0.5 * dt * k);
                if ((k_next - k).norm() < 1e-14 * (1.0 + k.norm())) {
                    k = k_next;
                    break;
                }
                k = k_next;
            }
            q += dt * k;
        }
    }
    return traj;
}

ModuliPoint closed_form_h1_flow(const ModuliPoint& start, double t) {
    return circle_act(t, start);
}

ModuliPoint closed_form_h2_flow(const ModuliPoint& start, double t) {
    const double e2t = std::exp(2.0 * t);
    return ModuliPoint{UhpPoint{e2t * start.z.x, e2t * start.z.y},
                       std::exp(-4.0 * t) * start.w};
}

FibrationValue fibration(const ModuliPoint& p, const DeformationFunction& f) {
    if (std::abs(p.w) == 0.0)
        throw malformed_input("fibration: w = 0 lies on the boundary of the base");
    return FibrationValue{hamiltonian_h1(p, f), hamiltonian_h2(p, f)};
}

FiberProbe fiber_probe(const ModuliPoint& p, const DeformationFunction& f) {
    if (std::abs(p.w) == 0.0)
        throw malformed_input("fiber_probe: w = 0 lies on the boundary of the base");
    Vec4 x1 = hvf_h1(p, f), x2 = hvf_h2(p, f);
    Vec4 g1 = grad_h1(p, f), g2 = grad_h2(p, f);
    double cross = std::max(std::abs(g1.dot(x2)), std::abs(g2.dot(x1)));
    Mat4 W = symplectic_matrix(p, f).m;
    double span = std::abs(x1.dot(W * x2));
    Eigen::Matrix<double, 4, 2> M;
    M.col(0) = x1;
    M.col(1) = x2;
    Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(M);
    double sigma = svd.singularValues()(1);
    return FiberProbe{cross, span, sigma, sigma > 1e-10};
}

}  // namespace pkmoduli
