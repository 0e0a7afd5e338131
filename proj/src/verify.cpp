#include "pkmoduli/verify.hpp"

#include <cmath>
#include <random>

#include "pkmoduli/ambient.hpp"
#include "pkmoduli/dynamics.hpp"
#include "pkmoduli/kahler.hpp"

namespace pkmoduli {

namespace {

struct Sampler {
    std::mt19937_64 rng;

    explicit Sampler(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(rng);
    }

    UhpPoint z() { return UhpPoint{uniform(-2.0, 2.0), uniform(0.2, 3.0)}; }

    cplx w() {
        double r = uniform(1e-3, 3.0);
        double phi = uniform(0.0, 2.0 * M_PI);
        return std::polar(r, phi);
    }

    ModuliPoint point() { return ModuliPoint{z(), w()}; }

    Vec4 velocity() {
        return Vec4(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0),
                    uniform(-1.0, 1.0));
    }

    // exp of a random traceless matrix; det = 1 by construction.
    Mat2 sl2() {
        Mat2 X;
        double a = uniform(-1.0, 1.0), b = uniform(-1.0, 1.0),
               c = uniform(-1.0, 1.0);
        X << a, b, c, -a;
        double d = X.determinant();
        Mat2 A;
        if (d < 0.0) {
            double s = std::sqrt(-d);
            A = std::cosh(s) * Mat2::Identity() + (std::sinh(s) / s) * X;
        } else if (d > 0.0) {
            double s = std::sqrt(d);
            A = std::cos(s) * Mat2::Identity() + (std::sin(s) / s) * X;
        } else {
            A = Mat2::Identity() + X;
        }
        return A;
    }
};

struct Runner {
    VerificationReport rep;
    double tol_scale;

    void add(const std::string& id, const std::string& anchor, int samples,
             double max_res, double tol) {
        double t = tol * tol_scale;
        rep.checks.push_back(CheckRecord{id, anchor, samples, max_res, t,
                                         max_res <= t});
    }

    // For detection checks that must EXCEED a floor.
    void add_floor(const std::string& id, const std::string& anchor, int samples,
                   double residual, double floor) {
        rep.checks.push_back(
            CheckRecord{id, anchor, samples, residual, floor, residual >= floor});
    }
};

// Integer-entry unimodular elements: the mapping-class special case.
Mat2 sl2z(int k) {
    Mat2 A;
    switch (k % 3) {
        case 0: A << 1.0, 1.0, 0.0, 1.0; break;
        case 1: A << 0.0, -1.0, 1.0, 0.0; break;
        default: A << 2.0, 1.0, 1.0, 1.0; break;
    }
    return A;
}

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

double tangent_diff(const ModuliTangent& a, const ModuliTangent& b) {
    double r = (a.jdot.m - b.jdot.m).norm();
    r = std::max(r, (a.s0.m11 - b.s0.m11).norm());
    r = std::max(r, (a.s0.m12 - b.s0.m12).norm());
    r = std::max(r, (a.s0.m22 - b.s0.m22).norm());
    r = std::max(r, (a.str.m11 - b.str.m11).norm());
    r = std::max(r, (a.str.m12 - b.str.m12).norm());
    return r;
}

void check_jspace(Runner& run, Sampler& rng, int n) {
    double r_sq = 0.0, r_pull = 0.0, r_lemma = 0.0, r_equi = 0.0;
    for (int i = 0; i < n; ++i) {
        UhpPoint z = rng.z();
        LinearComplexStructure J = uhp_to_J(z);
        r_sq = std::max(r_sq, (J.m * J.m + Mat2::Identity()).norm());

        Vec4 v = rng.velocity(), v2 = rng.velocity();
        TangentAtJ a = uhp_to_J_diff(z, v(0), v(1));
        TangentAtJ b = uhp_to_J_diff(z, v2(0), v2(1));
        double hyper = (v(0) * v2(0) + v(1) * v2(1)) / (z.y * z.y);
        r_pull = std::max(r_pull, std::abs(inner_JJ(a, b) - hyper));

        TangentAtJ c = uhp_to_J_diff(z, v(2), v(3));
        LemmaDotJResiduals lr = lemma_dotJ_check(J, a, b, c);
        r_lemma = std::max({r_lemma, lr.product_identity, lr.triple_trace,
                            lr.triple_trace_with_J});

        Mat2 A = rng.sl2();
        r_equi = std::max(
            r_equi, (uhp_to_J(mobius(A, z)).m - sl2_act_J(A, J).m).norm());
    }
    run.add("jspace.square", "j(z)^2 = -1", n, r_sq, 1e-12);
    run.add("jspace.isometry_pullback",
            "<j'(z)a, j'(z)b> = (a1 b1 + a2 b2)/y^2", n, r_pull, 1e-9);
    run.add("jspace.product_identity",
            "Jdot Jdot' = <Jdot,Jdot'> 1 - <J Jdot,Jdot'> J; triple traces vanish",
            n, r_lemma, 1e-10);
    run.add("jspace.mobius_equivariance", "j(A.z) = A j(z) A^-1", n, r_equi,
            1e-9);
}

void check_quartic(Runner& run, Sampler& rng, int n) {
    double r_mem = 0.0, r_phi = 0.0, r_ju = 0.0, r_round = 0.0, r_norm = 0.0,
           r_inv = 0.0, r_corr = 0.0;
    for (int i = 0; i < n; ++i) {
        ModuliPoint p = rng.point();
        QuarticTensor T = tensor_from_coordinates(p);
        r_mem = std::max(r_mem, T.membership_residual());

        // Tensor correspondence: all-slot and single-slot J-moves on T, the
        // J-anti-commutation and trace-lessness of the raised endomorphism.
        {
            const Mat2 J = T.base.m;
            UTensor U = raise_index(T);
            Vec2 a(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            Vec2 b(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            Vec2 c(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            Vec2 d(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            double base_val = T.eval(a, b, c, d);
            double all = T.eval(J * a, J * b, J * c, J * d);
            r_corr = std::max(r_corr, std::abs(all - base_val));
            double s1 = T.eval(J * a, b, c, d), s2 = T.eval(a, J * b, c, d);
            double s3 = T.eval(a, b, J * c, d), s4 = T.eval(a, b, c, J * d);
            r_corr = std::max({r_corr, std::abs(s1 - s2), std::abs(s2 - s3),
                               std::abs(s3 - s4)});
            Mat2 e1 = U.endo(J * a, b), e2 = U.endo(a, J * b);
            Mat2 e3 = U.endo(a, b) * J;
            r_corr = std::max({r_corr, (e1 - e2).norm(), (e2 - e3).norm()});
            Mat2 anti = J * U.endo(a, b) + U.endo(a, b) * J;
            r_corr = std::max({r_corr, anti.norm(),
                               std::abs(U.endo(a, b).trace())});
        }

        Vec2 v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        cplx tau = quartic_tau(T, v);
        cplx phi = fibre_map_phi(p, v);
        r_phi = std::max(r_phi, std::abs(tau - phi));

        UTensor U = raise_index(T);
        Mat2 J0;
        J0 << 0.0, -1.0, 1.0, 0.0;
        r_ju = std::max(r_ju, (J0 * U.u2 - U.u1).norm());

        QuarticTensor T2 = lower_index(U);
        r_round = std::max({r_round, std::abs(T2.t1111 - T.t1111),
                            std::abs(T2.t1112 - T.t1112),
                            std::abs(T2.t1122 - T.t1122),
                            std::abs(T2.t1222 - T.t1222),
                            std::abs(T2.t2222 - T.t2222)});

        double y2 = p.z.y * p.z.y;
        r_norm = std::max(
            r_norm, rel_err(norm_sq_U(U), 2.0 * y2 * y2 * std::norm(p.w)));

        Mat2 A = (i % 5 == 0) ? sl2z(i / 5) : rng.sl2();
        UTensor U2 = raise_index(tensor_from_coordinates(
            ModuliPoint{p.z, rng.w()}));
        double before = inner_U(U, U2);
        double after = inner_U(sl2_act_U(A, U), sl2_act_U(A, U2));
        r_inv = std::max(r_inv, rel_err(after, before));
    }
    run.add("quartic.membership", "T(J.,J.,.,.) = -T for the coordinate tensor",
            n, r_mem, 1e-10);
    run.add("quartic.phi_match",
            "q(v,v,v,v) = conj(w) (v1 - conj(z) v2)^4 for all five components",
            n, r_phi, 1e-9);
    run.add("quartic.JU2_is_U1", "J U2 = U1 in the canonical frame", n, r_ju,
            1e-10);
    run.add("quartic.raise_lower_roundtrip", "lower(raise(T)) = T", n, r_round,
            1e-10);
    run.add("quartic.norm_coordinate", "||U||^2 = 2 y^4 |w|^2", n, r_norm, 1e-9);
    run.add("quartic.inner_sl2_invariance", "<A.U, A.U'> = <U, U'>", n, r_inv,
            1e-9);
    run.add("quartic.tensor_correspondence",
            "all-slot and single-slot J-moves on T agree; U anti-commutes "
            "with J and is trace-less",
            n, r_corr, 1e-10);
}

TensorGrid codazzi_grid(int nx, double h, bool antiholomorphic, bool cubic) {
    TensorGrid grid;
    grid.nx = nx;
    grid.ny = nx;
    grid.h = h;
    double x0 = -0.5 * (nx - 1) * h;
    for (int iy = 0; iy < nx; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            cplx zeta(x0 + ix * h, x0 + iy * h);
            cplx F = cubic ? zeta * zeta * zeta : zeta;
            cplx wbar = antiholomorphic ? std::conj(F) : F;
            ModuliPoint p{UhpPoint{0.0, 1.0}, std::conj(wbar)};
            grid.values.push_back(tensor_from_coordinates(p));
        }
    return grid;
}

void check_codazzi(Runner& run) {
    double lin = codazzi_residual(codazzi_grid(9, 0.05, false, false));
    double cub = codazzi_residual(codazzi_grid(9, 0.01, false, true));
    double anti = codazzi_residual(codazzi_grid(9, 0.05, true, false));
    run.add("quartic.codazzi_holomorphic_linear",
            "discrete Cauchy-Riemann residual vanishes for a linear field", 81,
            lin, 1e-12);
    run.add("quartic.codazzi_holomorphic_cubic",
            "discrete Cauchy-Riemann residual is O(h^2) for a holomorphic field",
            81, cub, 1e-3);
    run.add_floor("quartic.codazzi_antiholomorphic_detected",
                  "anti-holomorphic field leaves a residual >= 0.5", 81, anti,
                  0.5);
}

void check_ambient(Runner& run) {
    double r_eta = 0.0, r_conf = 0.0, r_max = 0.0, r_gauss = 0.0, r_frame = 0.0,
           r_shape = 0.0;
    cplx q0;
    double r_const = 0.0;
    const int n = 5;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SurfaceParam p{-1.0 + 2.0 * i / (n - 1), -1.0 + 2.0 * j / (n - 1)};
            Vec5 f = barbot_embed(p);
            r_eta = std::max(r_eta, std::abs(eta_form(f, f) + 1.0));
            Vec5 fx = barbot_dx(p), fy = barbot_dy(p);
            r_conf = std::max({r_conf, std::abs(eta_form(fx, fx) - 2.0),
                               std::abs(eta_form(fy, fy) - 2.0),
                               std::abs(eta_form(fx, fy))});
            r_max = std::max(r_max, maximality_residual(p));
            r_gauss = std::max(r_gauss, std::abs(norm_sq_II(p) - 2.0));
            ExtrinsicFrame fr = extrinsic_frame(p);
            r_frame = std::max(
                {r_frame, std::abs(eta_form(fr.normal1, fr.normal1) + 1.0),
                 std::abs(eta_form(fr.normal2, fr.normal2) + 1.0),
                 std::abs(eta_form(fr.normal1, fr.normal2)),
                 std::abs(eta_form(fr.position, fr.normal1)),
                 std::abs(eta_form(fr.tangent1, fr.normal2)),
                 std::abs(eta_form(fr.tangent2, fr.normal1))});
            r_shape = std::max(r_shape, shape_relation_residual(p, fr));
            cplx q = quartic_from_embedding(p).second;
            if (i == 0 && j == 0) q0 = q;
            r_const = std::max(r_const, std::abs(q - q0));
        }
    run.add("ambient.quadric", "eta(f0, f0) = -1", n * n, r_eta, 1e-10);
    run.add("ambient.conformal", "induced metric = 2 Id", n * n, r_conf, 1e-10);
    run.add("ambient.maximality", "tr II = 0", n * n, r_max, 1e-10);
    run.add("ambient.gauss_norm", "||II||^2 = 2 (Gauss equation with K = 0)",
            n * n, r_gauss, 1e-8);
    run.add("ambient.normal_frame",
            "eta-orthonormal normal frame, orthogonal to position and tangents",
            n * n, r_frame, 1e-10);
    run.add("ambient.shape_relation", "g_N(II(X,Y),xi) = -g_T(Y,B(X,xi))", n * n,
            r_shape, 1e-10);
    run.add("ambient.quartic_constancy",
            "the extracted quartic value is constant over the surface", n * n,
            r_const, 1e-8);
}

void check_tangent(Runner& run, Sampler& rng, int n) {
    double r_transport = 0.0, r_lemma = 0.0, r_inv = 0.0, r_fiber = 0.0,
           r_var = 0.0;
    for (int i = 0; i < n; ++i) {
        ModuliPoint p = rng.point();
        Vec4 v = rng.velocity();
        ModuliTangent t = coordinate_tangent(p, v(0), v(1), v(2), v(3));
        ModuliTangent td = coordinate_tangent_direct(p, v(0), v(1), v(2), v(3));
        r_transport = std::max(r_transport, tangent_diff(t, td));

        r_lemma = std::max(r_lemma, decomposition_lemma_residual(t));

        Vec4 v2 = rng.velocity();
        ModuliTangent t2 = coordinate_tangent(p, v2(0), v2(1), v2(2), v2(3));
        Mat2 A = (i % 5 == 0) ? sl2z(i / 5) : rng.sl2();
        ModuliTangent ta = sl2_act_tangent(A, t), tb = sl2_act_tangent(A, t2);
        r_inv = std::max(r_inv, rel_err(inner_u0(ta, tb), inner_u0(t, t2)));
        r_inv = std::max(r_inv, rel_err(inner_utr(ta, tb), inner_utr(t, t2)));

        // Fiber-fiber block of the coordinate metric vs the intrinsic form.
        DeformationFunction f = (i % 2 == 0) ? DeformationFunction::linear()
                                             : DeformationFunction::sqrt();
        ModuliTangent fa = coordinate_tangent(p, 0.0, 0.0, v(2), v(3));
        ModuliTangent fb = coordinate_tangent(p, 0.0, 0.0, v2(2), v2(3));
        double fp = f.prime(fiber_norm_sq(p));
        double y2 = p.z.y * p.z.y;
        double coord = fp * y2 * y2 * (v(2) * v2(2) + v(3) * v2(3));
        double intr = 0.5 * fp * (inner_u0(fa, fb) - inner_utr(fa, fb));
        r_fiber = std::max(r_fiber, rel_err(intr, coord));

        // (||U||^2)' = 2 <U, Udot_0> against finite differences.
        const double h = 1e-5;
        auto norm_sq = [&](double s) {
            UhpPoint z{p.z.x + s * v(0), p.z.y + s * v(1)};
            cplx w = p.w + s * cplx(v(2), v(3));
            double yy = z.y * z.y;
            return 2.0 * yy * yy * std::norm(w);
        };
        double fd = (norm_sq(h) - norm_sq(-h)) / (2.0 * h);
        double closed = 2.0 * quarter_contraction(u_blocks(t.baseU), t.s0);
        r_var = std::max(r_var, rel_err(fd, closed));
    }
    run.add("tangent.transport_agreement",
            "pinned-base transport equals direct coordinate evaluation", n,
            r_transport, 1e-10);
    run.add("tangent.decomposition_lemma",
            "Udot J + U Jdot = Udot_0 J + Udot_tr(., J.)", n, r_lemma, 1e-10);
    run.add("tangent.inner_sl2_invariance",
            "<Udot_0,Udot_0'> and <Udot_tr,Udot_tr'> are SL(2,R)-invariant", n,
            r_inv, 1e-9);
    run.add("tangent.fiber_block_consistency",
            "(f'/2)(<Udot_0,Udot_0'> - <Udot_tr,Udot_tr'>) = f' y^4 (du du' + dv dv')",
            n, r_fiber, 1e-10);
    run.add("tangent.norm_variation",
            "(||U||^2)' = 2 <U, Udot_0>", n, r_var, 1e-6);
}

void check_kahler(Runner& run, Sampler& rng, int n, double eps) {
    DeformationFunction fs[2] = {DeformationFunction::linear(),
                                 DeformationFunction::sqrt()};
    double r_det = 0.0, r_close = 0.0, r_isq = 0.0, r_compat_m = 0.0,
           r_compat_i = 0.0, r_agree = 0.0, r_inv = 0.0, r_omega = 0.0,
           r_gI = 0.0, r_oagree = 0.0;
    bool sig_ok = true;
    int n_close = std::min(n, 100);  // finite differences dominate the runtime
    for (int i = 0; i < n; ++i) {
        ModuliPoint p = rng.point();
        const DeformationFunction& f = fs[i % 2];
        MetricAtPoint g = metric_matrix(p, f, eps);
        r_det = std::max(r_det, rel_err(g.m.determinant(),
                                        metric_determinant_closed_form(p, f)));
        auto sig = metric_signature(g);
        sig_ok = sig_ok && sig.first == 2 && sig.second == 2;

        Mat4 I = complex_structure_matrix(p);
        r_isq = std::max(r_isq, (I * I + Mat4::Identity()).norm());
        r_compat_m = std::max(
            r_compat_m, (I.transpose() * g.m * I - g.m).norm() / (1.0 + g.m.norm()));

        TwoFormAtPoint W = symplectic_matrix(p, f, eps);
        r_gI = std::max(r_gI, (W.m - g.m * I).norm());
        r_omega = std::max(r_omega, (W.m + W.m.transpose()).norm());

        if (i < n_close)
            r_close = std::max(
                r_close, exterior_derivative_residual(p, f, 1e-4, eps));

        Vec4 v = rng.velocity(), v2 = rng.velocity();
        ModuliTangent a = coordinate_tangent(p, v(0), v(1), v(2), v(3));
        ModuliTangent b = coordinate_tangent(p, v2(0), v2(1), v2(2), v2(3));
        MetricAtPoint g0 = metric_matrix(p, f);
        double coord = v.transpose() * g0.m * v2;
        double intr = intrinsic_metric(a, b, f);
        r_agree = std::max(r_agree, rel_err(intr, coord));

        r_compat_i = std::max(
            r_compat_i,
            rel_err(intrinsic_metric(I_tangent(a), I_tangent(b), f), intr));

        Mat2 A = (i % 5 == 0) ? sl2z(i / 5) : rng.sl2();
        double pushed = intrinsic_metric(sl2_act_tangent(A, a),
                                         sl2_act_tangent(A, b), f);
        r_inv = std::max(r_inv, rel_err(pushed, intr));
        double opushed = intrinsic_omega(sl2_act_tangent(A, a),
                                         sl2_act_tangent(A, b), f);
        double ointr = intrinsic_omega(a, b, f);
        r_inv = std::max(r_inv, rel_err(opushed, ointr));

        double ocoord = v.transpose() * symplectic_matrix(p, f).m * v2;
        r_oagree = std::max(r_oagree, rel_err(ointr, ocoord));
    }
    run.add("kahler.determinant", "det g_f = y^4 (f')^2 (1-f)^2", n, r_det,
            1e-10);
    run.add("kahler.signature", "g_f has signature (2,2)", n,
            sig_ok ? 0.0 : 1.0, 0.5);
    run.add("kahler.closedness", "d omega_f = 0 (central differences, h=1e-4)",
            n_close, r_close, 1e-6);
    run.add("kahler.I_squares", "I^2 = -Id", n, r_isq, 1e-12);
    run.add("kahler.compatibility_matrix", "I^T g I = g", n, r_compat_m, 1e-12);
    run.add("kahler.compatibility_intrinsic", "g_f(I a, I b) = g_f(a, b)", n,
            r_compat_i, 1e-9);
    run.add("kahler.intrinsic_vs_coordinate",
            "intrinsic g_f equals the coordinate matrix on coordinate tangents",
            n, r_agree, 1e-9);
    run.add("kahler.sl2_invariance", "g_f and omega_f are SL(2,R)-invariant", n,
            r_inv, 1e-9);
    run.add("kahler.omega_is_gI", "omega-matrix = g-matrix * I-matrix", n, r_gI,
            1e-12);
    run.add("kahler.omega_antisymmetric", "omega_f(a,b) = -omega_f(b,a)", n,
            r_omega, 1e-12);
    run.add("kahler.intrinsic_omega_vs_coordinate",
            "intrinsic omega_f equals the coordinate matrix", n, r_oagree, 1e-9);
}

void check_dynamics(Runner& run, Sampler& rng, int n, double eps) {
    DeformationFunction fs[2] = {DeformationFunction::linear(),
                                 DeformationFunction::sqrt()};
    double r_h1 = 0.0, r_h2 = 0.0, r_invol = 0.0, r_mu = 0.0, r_equi = 0.0,
           r_iota = 0.0, r_circ_g = 0.0, r_circ_h1 = 0.0, r_cross = 0.0,
           r_span = 0.0;
    bool indep_ok = true, image_ok = true;
    for (int i = 0; i < n; ++i) {
        ModuliPoint p = rng.point();
        const DeformationFunction& f = fs[i % 2];
        const double x = p.z.x, y = p.z.y;
        const double u = p.w.real(), v = p.w.imag();

        Vec4 x1 = hvf_h1(p, f), x2 = hvf_h2(p, f);
        r_h1 = std::max(r_h1, (x1 - Vec4(0.0, 0.0, -v, u)).norm());
        r_h2 = std::max(r_h2,
                        (x2 - Vec4(2.0 * x, 2.0 * y, -4.0 * u, -4.0 * v)).norm());
        Mat4 W = symplectic_matrix(p, f).m;
        r_invol = std::max(r_invol, std::abs(x1.dot(W * x2)));

        r_mu = std::max(r_mu, std::abs(moment_map_sl2(LieAlgebraElement::xi2(),
                                                      p, f) -
                                       hamiltonian_h2(p, f)));

        Mat2 A = rng.sl2();
        Mat2 X;
        X << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0), 0.0;
        X(1, 1) = -X(0, 0);
        LieAlgebraElement lie(X);
        double lhs = moment_map_sl2(lie, sl2_act_zw(A, p), f);
        double rhs = moment_map_sl2(
            LieAlgebraElement(Mat2(A.inverse() * X * A)), p, f);
        r_equi = std::max(r_equi, std::abs(lhs - rhs));

        // omega(X_H, .) = dH against a finite-difference gradient oracle.
        Vec4 gfd1 = gradient_fd(
            [&](const ModuliPoint& q) { return hamiltonian_h1(q, f); }, p);
        Vec4 gfd2 = gradient_fd(
            [&](const ModuliPoint& q) { return hamiltonian_h2(q, f); }, p);
        r_iota = std::max(r_iota, (W.transpose() * x1 - gfd1).norm());
        r_iota = std::max(r_iota, (W.transpose() * x2 - gfd2).norm());

        double theta = rng.uniform(0.0, 2.0 * M_PI);
        Vec4 va = rng.velocity(), vb = rng.velocity();
        ModuliTangent a = coordinate_tangent(p, va(0), va(1), va(2), va(3));
        ModuliTangent b = coordinate_tangent(p, vb(0), vb(1), vb(2), vb(3));
        double before = intrinsic_metric(a, b, f);
        double after = intrinsic_metric(circle_act_tangent(theta, a),
                                        circle_act_tangent(theta, b), f);
        r_circ_g = std::max(r_circ_g, rel_err(after, before));
        r_circ_h1 = std::max(r_circ_h1,
                             std::abs(hamiltonian_h1(circle_act(theta, p), f) -
                                      hamiltonian_h1(p, f)));

        FiberProbe probe = fiber_probe(p, f);
        r_cross = std::max(r_cross, probe.dh_cross_residual);
        r_span = std::max(r_span, probe.omega_span_residual);
        indep_ok = indep_ok && probe.independent;
        image_ok = image_ok && fibration(p, f).h1 < 0.0;
    }
    run.add("dynamics.hvf_h1", "X_H1 = u d/dv - v d/du", n, r_h1, 1e-8);
    run.add("dynamics.hvf_h2",
            "X_H2 = 2(x d/dx + y d/dy) - 4(u d/du + v d/dv)", n, r_h2, 1e-8);
    run.add("dynamics.involution", "omega(X_H1, X_H2) = 0", n, r_invol, 1e-10);
    run.add("dynamics.moment_map_h2", "mu^{xi2} = H2", n, r_mu, 1e-12);
    run.add("dynamics.moment_map_equivariance",
            "mu_{A.p}(X) = mu_p(A^-1 X A)", n, r_equi, 1e-9);
    run.add("dynamics.hamiltonian_identity",
            "omega(X_H, .) = dH (finite-difference gradient oracle)", n, r_iota,
            1e-6);
    run.add("dynamics.circle_isometry", "the circle action preserves g_f", n,
            r_circ_g, 1e-9);
    run.add("dynamics.circle_h1_invariance", "H1 is constant on circle orbits",
            n, r_circ_h1, 1e-12);
    run.add("dynamics.fiber_involution", "dH_i(X_{H_j}) = 0 for i != j", n,
            r_cross, 1e-8);
    run.add("dynamics.fiber_lagrangian",
            "omega vanishes on span(X_H1, X_H2)", n, r_span, 1e-10);
    run.add("dynamics.fiber_independence",
            "X_H1 and X_H2 are linearly independent for w != 0", n,
            indep_ok ? 0.0 : 1.0, 0.5);
    run.add("dynamics.fibration_image", "H1 < 0 on the w != 0 locus", n,
            image_ok ? 0.0 : 1.0, 0.5);
    (void)eps;
}

void check_flows(Runner& run) {
    DeformationFunction f = DeformationFunction::linear();
    const int steps = 10000;
    double r_end = 0.0, r_drift = 0.0;
    ModuliPoint starts[2] = {ModuliPoint{UhpPoint{0.0, 1.0}, cplx(1.0, 0.0)},
                             ModuliPoint{UhpPoint{0.7, 1.3}, cplx(0.4, -0.8)}};
    double wrong_exponent_gap = 0.0;
    for (const ModuliPoint& s : starts) {
        Trajectory t1 = flow(FlowKind::H1, s, 1.0, steps, f);
        ModuliPoint e1 = t1.points.back(), c1 = closed_form_h1_flow(s, 1.0);
        r_end = std::max(r_end, std::abs(e1.w - c1.w) / std::abs(c1.w));

        Trajectory t2 = flow(FlowKind::H2, s, 1.0, steps, f);
        ModuliPoint e2 = t2.points.back(), c2 = closed_form_h2_flow(s, 1.0);
        r_end = std::max({r_end, std::abs(e2.z.y - c2.z.y) / c2.z.y,
                          std::abs(e2.w - c2.w) / std::abs(c2.w)});
        cplx w3 = std::exp(-3.0) * s.w;  // the rejected exponent
        wrong_exponent_gap =
            std::max(wrong_exponent_gap, std::abs(e2.w - w3) / std::abs(w3));

        for (const Trajectory* t : {&t1, &t2})
            for (const auto& [h1, h2] : t->invariant_log) {
                r_drift = std::max(r_drift,
                                   std::abs(h1 - t->invariant_log.front().first));
                r_drift = std::max(
                    r_drift, std::abs(h2 - t->invariant_log.front().second));
            }
    }
    run.add("dynamics.flow_endpoints",
            "RK4 endpoints match the closed forms w -> e^{it} w and "
            "(z, w) -> (e^{2t} z, e^{-4t} w)",
            2, r_end, 1e-6);
    run.add("dynamics.flow_drift", "H1 and H2 are conserved along both flows",
            2 * (steps + 1), r_drift, 1e-8);
    run.add_floor("dynamics.flow_exponent_dichotomy",
                  "the candidate w-exponent -3t disagrees with the integrated "
                  "flow (must exceed the floor)",
                  2, wrong_exponent_gap, 0.5);
}

}  // namespace

VerificationReport run_verification(const VerifyOptions& opt) {
    Sampler rng(opt.seed);
    Runner run;
    run.tol_scale = opt.tol_scale;
    double eps = (opt.perturb_target == "metric") ? opt.perturb_eps : 0.0;
    if (!opt.perturb_target.empty() && opt.perturb_target != "metric")
        throw malformed_input("unknown perturbation target: " +
                              opt.perturb_target);

    int n = opt.sample_count;
    check_jspace(run, rng, n);
    check_quartic(run, rng, n);
    check_codazzi(run);
    check_ambient(run);
    check_tangent(run, rng, n);
    check_kahler(run, rng, n, eps);
    check_dynamics(run, rng, n, eps);
    check_flows(run);

    run.rep.notes.push_back(
        "Flow exponent: the w-component of the H2 flow contracts as e^{-4t}. "
        "This follows from the generator 2(x d/dx + y d/dy) - 4(u d/du + v "
        "d/dv) and independently from the group action diag(e^t, e^{-t}) . "
        "(z, w) = (e^{2t} z, e^{-4t} w). The alternative exponent -3t is "
        "inconsistent with that generator and is rejected numerically by the "
        "flow_exponent_dichotomy check.");
    if (eps != 0.0)
        run.rep.notes.push_back(
            "Fault injection active: metric (0,0) entry scaled by 1 + " +
            std::to_string(eps) + "; determinant, closedness and matrix "
            "compatibility checks are expected to fail.");

    run.rep.overall = true;
    for (const CheckRecord& c : run.rep.checks)
        run.rep.overall = run.rep.overall && c.pass;
    return run.rep;
}

}  // namespace pkmoduli
