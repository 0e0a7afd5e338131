// Command-line laboratory: point evaluation of the pseudo-Kahler data,
// verification sweeps, flow integration with CSV export, and diagnostics of
// the explicit flat maximal surface.
//
// Exit codes: 0 success, 1 verification/integration failure, 2 invalid input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pkmoduli/ambient.hpp"
#include "pkmoduli/dynamics.hpp"
#include "pkmoduli/kahler.hpp"
#include "pkmoduli/verify.hpp"

using nlohmann::json;
using namespace pkmoduli;

namespace {

constexpr int kSchemaVersion = 1;

cplx parse_complex(const std::string& s) {
    // Accepts "a+bi", "a-bi", "bi", "a", with decimal/scientific literals.
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw malformed_input("empty complex literal");
    bool imaginary = t.back() == 'i' || t.back() == 'I';
    if (imaginary) t.pop_back();
    auto parse_real = [](const std::string& r) {
        if (r.empty() || r == "+") return 1.0;
        if (r == "-") return -1.0;
        size_t used = 0;
        double v = std::stod(r, &used);
        if (used != r.size()) throw malformed_input("bad number: " + r);
        return v;
    };
    if (!imaginary) return cplx(parse_real(t), 0.0);
    // Split at the last +/- that is not a leading sign or an exponent sign.
    size_t split = std::string::npos;
    for (size_t i = 1; i < t.size(); ++i) {
        char c = t[i];
        if ((c == '+' || c == '-') && t[i - 1] != 'e' && t[i - 1] != 'E')
            split = i;
    }
    if (split == std::string::npos) return cplx(0.0, parse_real(t));
    return cplx(parse_real(t.substr(0, split)), parse_real(t.substr(split)));
}

json matrix_json(const Mat4& m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        json row = json::array();
        for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

double env_tol_scale() {
    const char* s = std::getenv("PKMODULI_TOL_SCALE");
    if (!s) return 1.0;
    double v = std::stod(s);
    if (v <= 0.0) throw malformed_input("PKMODULI_TOL_SCALE must be positive");
    return v;
}

struct LabConfig {
    std::string f_name = "linear";
    std::uint64_t seed = 12345;
    int sample_count = 50;
    double tol_scale = 1.0;
    std::map<std::string, double> tolerance_overrides;
};

LabConfig load_config(const std::string& path) {
    LabConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw malformed_input("cannot open config file: " + path);
    json j = json::parse(in);
    if (j.contains("f_name")) cfg.f_name = j["f_name"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("sample_count"))
        cfg.sample_count = j["sample_count"].get<int>();
    if (j.contains("tol_scale")) cfg.tol_scale = j["tol_scale"].get<double>();
    if (j.contains("tolerances"))
        for (auto& [k, v] : j["tolerances"].items()) {
            double tol = v.get<double>();
            if (tol <= 0.0)
                throw malformed_input("tolerance override must be positive");
            cfg.tolerance_overrides[k] = tol;
        }
    return cfg;
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw malformed_input("cannot open output file: " + out_path);
    out << text << "\n";
}

int cmd_eval(const std::string& z_str, const std::string& w_str,
             const std::string& f_name, const std::string& out_path) {
    cplx z = parse_complex(z_str), w = parse_complex(w_str);
    ModuliPoint p{UhpPoint{z.real(), z.imag()}, w};
    if (!p.z.valid()) throw malformed_input("eval: Im z must be positive");
    DeformationFunction f = DeformationFunction::by_name(f_name);
    MetricAtPoint g = metric_matrix(p, f);
    TwoFormAtPoint om = symplectic_matrix(p, f);
    auto sig = metric_signature(g);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["z"] = {p.z.x, p.z.y};
    j["w"] = {w.real(), w.imag()};
    j["f"] = f.name;
    j["metric"] = matrix_json(g.m);
    j["omega"] = matrix_json(om.m);
    j["complex_structure"] = matrix_json(complex_structure_matrix(p));
    j["det"] = g.m.determinant();
    j["det_closed_form"] = metric_determinant_closed_form(p, f);
    j["signature"] = {sig.first, sig.second};
    j["H1"] = hamiltonian_h1(p, f);
    j["H2"] = hamiltonian_h2(p, f);
    write_output(out_path, j.dump(2));
    return 0;
}

int cmd_verify(const LabConfig& cfg, const std::vector<std::string>& perturb,
               const std::string& out_path) {
    VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.sample_count = cfg.sample_count;
    opt.tol_scale = cfg.tol_scale * env_tol_scale();
    if (!perturb.empty()) {
        if (perturb.size() != 2)
            throw malformed_input("--perturb expects TARGET EPS");
        opt.perturb_target = perturb[0];
        opt.perturb_eps = std::stod(perturb[1]);
    }
    VerificationReport rep = run_verification(opt);
    for (CheckRecord& c : rep.checks) {
        auto it = cfg.tolerance_overrides.find(c.check_id);
        if (it == cfg.tolerance_overrides.end()) continue;
        c.tolerance = it->second;
        c.pass = c.max_residual <= c.tolerance;
    }
    rep.overall = true;
    for (const CheckRecord& c : rep.checks) rep.overall &= c.pass;

    json j;
    j["schema_version"] = kSchemaVersion;
    j["seed"] = opt.seed;
    j["sample_count"] = opt.sample_count;
    j["overall_pass"] = rep.overall;
    j["notes"] = rep.notes;
    json checks = json::array();
    for (const CheckRecord& c : rep.checks) {
        json rec;
        rec["check_id"] = c.check_id;
        rec["anchor"] = c.anchor;
        rec["samples"] = c.samples;
        rec["max_residual"] = c.max_residual;
        rec["tolerance"] = c.tolerance;
        rec["pass"] = c.pass;
        checks.push_back(rec);
    }
    j["checks"] = checks;
    if (!out_path.empty()) write_output(out_path, j.dump(2));

    for (const CheckRecord& c : rep.checks)
        std::printf("%-44s %s  max_residual=%.3e  tol=%.3e\n",
                    c.check_id.c_str(), c.pass ? "PASS" : "FAIL",
                    c.max_residual, c.tolerance);
    for (const std::string& note : rep.notes)
        std::printf("note: %s\n", note.c_str());
    std::printf("overall: %s (%zu checks)\n", rep.overall ? "PASS" : "FAIL",
                rep.checks.size());
    return rep.overall ? 0 : 1;
}

int cmd_flow(const std::string& which, const std::string& z_str,
             const std::string& w_str, double t_end, int steps,
             const std::string& f_name, const std::string& out_path) {
    if (steps < 1) throw malformed_input("flow: steps must be >= 1");
    FlowKind kind;
    if (which == "h1" || which == "H1") kind = FlowKind::H1;
    else if (which == "h2" || which == "H2") kind = FlowKind::H2;
    else throw malformed_input("flow: --which must be h1 or h2");
    cplx z = parse_complex(z_str), w = parse_complex(w_str);
    ModuliPoint start{UhpPoint{z.real(), z.imag()}, w};
    if (!start.z.valid()) throw malformed_input("flow: Im z must be positive");
    DeformationFunction f = DeformationFunction::by_name(f_name);
    Trajectory traj = flow(kind, start, t_end, steps, f);

    std::string csv = "t,x,y,u,v,H1,H2\n";
    char line[256];
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const ModuliPoint& p = traj.points[i];
        std::snprintf(line, sizeof line,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      traj.times[i], p.z.x, p.z.y, p.w.real(), p.w.imag(),
                      traj.invariant_log[i].first, traj.invariant_log[i].second);
        csv += line;
    }
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(out_path);
        if (!out) throw malformed_input("cannot open output file: " + out_path);
        out << csv;
    }
    return 0;
}

int cmd_barbot(int grid_n, double bound, const std::string& out_path) {
    if (grid_n < 1) throw malformed_input("barbot: grid must be non-empty");
    double r_eta = 0.0, r_conf = 0.0, r_max = 0.0, r_gauss = 0.0;
    cplx q0;
    double r_const = 0.0;
    bool first = true;
    for (int i = 0; i < grid_n; ++i)
        for (int j = 0; j < grid_n; ++j) {
            SurfaceParam p{
                grid_n == 1 ? 0.0 : -bound + 2.0 * bound * i / (grid_n - 1),
                grid_n == 1 ? 0.0 : -bound + 2.0 * bound * j / (grid_n - 1)};
            Vec5 fe = barbot_embed(p);
            r_eta = std::max(r_eta, std::abs(eta_form(fe, fe) + 1.0));
            Vec5 fx = barbot_dx(p), fy = barbot_dy(p);
            r_conf = std::max({r_conf, std::abs(eta_form(fx, fx) - 2.0),
                               std::abs(eta_form(fy, fy) - 2.0),
                               std::abs(eta_form(fx, fy))});
            r_max = std::max(r_max, maximality_residual(p));
            r_gauss = std::max(r_gauss, std::abs(norm_sq_II(p) - 2.0));
            cplx q = quartic_from_embedding(p).second;
            if (first) {
                q0 = q;
                first = false;
            }
            r_const = std::max(r_const, std::abs(q - q0));
        }
    SurfaceParam origin{grid_n == 1 ? 0.0 : -bound, grid_n == 1 ? 0.0 : -bound};
    Vec5 fx = barbot_dx(origin), fy = barbot_dy(origin);
    json j;
    j["schema_version"] = kSchemaVersion;
    j["grid_n"] = grid_n;
    j["bound"] = bound;
    j["quadric_residual"] = r_eta;
    j["conformal_residual"] = r_conf;
    j["maximality_residual"] = r_max;
    j["flatness_gauss_residual"] = r_gauss;
    j["quartic_constancy_spread"] = r_const;
    j["quartic_value"] = {q0.real(), q0.imag()};
    j["induced_metric_first_point"] = {
        {eta_form(fx, fx), eta_form(fx, fy)},
        {eta_form(fx, fy), eta_form(fy, fy)}};
    write_output(out_path, j.dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-Kahler moduli laboratory"};
    app.require_subcommand(1);

    std::string z_str = "0+1i", w_str = "0", f_name, out_path, config_path;
    std::vector<std::string> perturb;
    double t_end = 1.0;
    int steps = 1000;
    std::string which = "h1";
    int grid_n = 5;
    double bound = 1.0;
    std::uint64_t seed = 0;
    int samples = 0;
    bool seed_set = false, samples_set = false, f_set = false;

    auto* eval = app.add_subcommand("eval", "evaluate g_f, omega_f, I at a point");
    eval->add_option("--z", z_str, "base point, e.g. 0+1i");
    eval->add_option("--w", w_str, "fibre coordinate, e.g. 1 or 0.5-2i");
    eval->add_option("--f", f_name, "deformation function: linear|sqrt")
        ->each([&](const std::string&) { f_set = true; });
    eval->add_option("--out", out_path, "write JSON here instead of stdout");
    eval->add_option("--config", config_path, "JSON config file");

    auto* verify = app.add_subcommand("verify", "run all verification sweeps");
    verify->add_option("--seed", seed, "PRNG seed")
        ->each([&](const std::string&) { seed_set = true; });
    verify->add_option("--samples", samples, "samples per check")
        ->each([&](const std::string&) { samples_set = true; });
    verify->add_option("--perturb", perturb,
                       "fault injection: TARGET EPS (e.g. metric 1e-3)")
        ->expected(2);
    verify->add_option("--out", out_path, "write the JSON report here");
    verify->add_option("--config", config_path, "JSON config file");

    auto* fl = app.add_subcommand("flow", "integrate a Hamiltonian flow");
    fl->add_option("--which", which, "h1|h2");
    fl->add_option("--z", z_str, "start base point");
    fl->add_option("--w", w_str, "start fibre coordinate");
    fl->add_option("--t-end", t_end, "integration time");
    fl->add_option("--steps", steps, "step count");
    fl->add_option("--f", f_name, "deformation function: linear|sqrt")
        ->each([&](const std::string&) { f_set = true; });
    fl->add_option("--out", out_path, "CSV output path (default stdout)");
    fl->add_option("--config", config_path, "JSON config file");

    auto* barbot = app.add_subcommand("barbot", "diagnostics of the flat "
                                                "maximal surface");
    barbot->add_option("--grid-n", grid_n, "grid points per axis");
    barbot->add_option("--bound", bound, "grid covers [-bound, bound]^2");
    barbot->add_option("--out", out_path, "write JSON here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        LabConfig cfg = load_config(config_path);
        if (f_set) cfg.f_name = f_name;
        if (seed_set) cfg.seed = seed;
        if (samples_set) cfg.sample_count = samples;

        if (eval->parsed()) return cmd_eval(z_str, w_str, cfg.f_name, out_path);
        if (verify->parsed()) return cmd_verify(cfg, perturb, out_path);
        if (fl->parsed())
            return cmd_flow(which, z_str, w_str, t_end, steps, cfg.f_name,
                            out_path);
        if (barbot->parsed()) return cmd_barbot(grid_n, bound, out_path);
    } catch (const integration_error& e) {
        std::cerr << "integration failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
