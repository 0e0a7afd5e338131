// End-to-end tests of the command-line laboratory. The binary path is
// argv[1]; each case runs it as a subprocess and inspects exit code and
// output files.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;

namespace {

std::string g_bin;
int g_failures = 0;

#define EXPECT(cond)                                                       \
    do {                                                                   \
        if (!(cond)) {                                                     \
            std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  "    \
                      << #cond << "\n";                                    \
            ++g_failures;                                                  \
        }                                                                  \
    } while (0)

int run(const std::string& args, const std::string& capture = "") {
    std::string cmd = "'" + g_bin + "' " + args;
    if (!capture.empty()) cmd += " > " + capture + " 2>&1";
    else cmd += " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void test_eval() {
    EXPECT(run("eval --z 0+1i --w 0 --f linear --out /tmp/cli_eval.json") ==
           0);
    json j = json::parse(slurp("/tmp/cli_eval.json"));
    EXPECT(j["schema_version"] == 1);
    EXPECT(std::abs(j["metric"][0][0].get<double>() - 1.0) < 1e-12);
    EXPECT(std::abs(j["metric"][1][1].get<double>() - 1.0) < 1e-12);
    EXPECT(std::abs(j["metric"][2][2].get<double>() + 1.0) < 1e-12);
    EXPECT(std::abs(j["metric"][3][3].get<double>() + 1.0) < 1e-12);
    EXPECT(std::abs(j["metric"][0][1].get<double>()) < 1e-12);
    EXPECT(j["signature"][0] == 2);
    EXPECT(j["signature"][1] == 2);
    EXPECT(std::abs(j["det"].get<double>() -
                    j["det_closed_form"].get<double>()) < 1e-10);

    EXPECT(run("eval --z 0+1i --w 1 --f linear --out /tmp/cli_eval2.json") ==
           0);
    json j2 = json::parse(slurp("/tmp/cli_eval2.json"));
    EXPECT(std::abs(j2["H1"].get<double>() + 0.5) < 1e-12);

    // Lower half-plane is invalid input.
    EXPECT(run("eval --z 1-2i --w 0") == 2);
    EXPECT(run("eval --z 0+1i --w 0 --f cubic") == 2);
}

void test_flow() {
    EXPECT(run("flow --which h1 --z 0+1i --w 1 --t-end 1.5707963267948966 "
               "--steps 2000 --f linear --out /tmp/cli_flow.csv") == 0);
    std::ifstream in("/tmp/cli_flow.csv");
    std::string header, line, last;
    std::getline(in, header);
    EXPECT(header == "t,x,y,u,v,H1,H2");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) {
            last = line;
            ++rows;
        }
    EXPECT(rows == 2001);
    double t, x, y, u, v, h1, h2;
    EXPECT(std::sscanf(last.c_str(), "%lg,%lg,%lg,%lg,%lg,%lg,%lg", &t, &x,
                       &y, &u, &v, &h1, &h2) == 7);
    // Quarter rotation of the fibre: w = 1 -> i; base fixed; H1 conserved.
    EXPECT(std::abs(u) < 1e-8);
    EXPECT(std::abs(v - 1.0) < 1e-8);
    EXPECT(std::abs(x) < 1e-10);
    EXPECT(std::abs(y - 1.0) < 1e-10);
    EXPECT(std::abs(h1 + 0.5) < 1e-10);

    EXPECT(run("flow --which h1 --z 0+1i --w 1 --steps 0") == 2);
    EXPECT(run("flow --which h3 --z 0+1i --w 1") == 2);
}

void test_verify() {
    EXPECT(run("verify --samples 5 --seed 1 --out /tmp/cli_v1.json",
               "/tmp/cli_v1.txt") == 0);
    EXPECT(run("verify --samples 5 --seed 1 --out /tmp/cli_v2.json",
               "/tmp/cli_v2.txt") == 0);
    // Deterministic for a fixed seed.
    EXPECT(slurp("/tmp/cli_v1.json") == slurp("/tmp/cli_v2.json"));
    json rep = json::parse(slurp("/tmp/cli_v1.json"));
    EXPECT(rep["overall_pass"] == true);
    EXPECT(rep["checks"].size() > 30);
    // The console output carries one line per check.
    std::string text = slurp("/tmp/cli_v1.txt");
    EXPECT(text.find("kahler.determinant") != std::string::npos);
    EXPECT(text.find("overall: PASS") != std::string::npos);

    // Fault injection must be caught.
    EXPECT(run("verify --samples 5 --seed 1 --perturb metric 1e-3") == 1);
    EXPECT(run("verify --samples 5 --seed 1 --perturb gizmo 1e-3") == 2);
}

void test_env_tolerance_scale() {
    setenv("PKMODULI_TOL_SCALE", "-1", 1);
    EXPECT(run("verify --samples 5 --seed 1") == 2);
    // A huge scale waves the perturbed run through: the knob is live.
    setenv("PKMODULI_TOL_SCALE", "1e12", 1);
    EXPECT(run("verify --samples 5 --seed 1 --perturb metric 1e-3") == 0);
    unsetenv("PKMODULI_TOL_SCALE");
}

void test_config_file() {
    std::ofstream cfg("/tmp/cli_cfg.json");
    cfg << "{\"f_name\": \"sqrt\", \"seed\": 7, \"sample_count\": 5}";
    cfg.close();
    EXPECT(run("eval --config /tmp/cli_cfg.json --z 0+1i --w 1 "
               "--out /tmp/cli_eval3.json") == 0);
    json j = json::parse(slurp("/tmp/cli_eval3.json"));
    EXPECT(j["f"] == "sqrt");
    // CLI flag wins over the config file.
    EXPECT(run("eval --config /tmp/cli_cfg.json --f linear --z 0+1i --w 1 "
               "--out /tmp/cli_eval4.json") == 0);
    EXPECT(json::parse(slurp("/tmp/cli_eval4.json"))["f"] == "linear");
    EXPECT(run("eval --config /tmp/does_not_exist.json") == 2);
}

void test_barbot() {
    EXPECT(run("barbot --grid-n 5 --out /tmp/cli_barbot.json") == 0);
    json j = json::parse(slurp("/tmp/cli_barbot.json"));
    EXPECT(j["quadric_residual"].get<double>() < 1e-8);
    EXPECT(j["conformal_residual"].get<double>() < 1e-8);
    EXPECT(j["maximality_residual"].get<double>() < 1e-8);
    EXPECT(j["flatness_gauss_residual"].get<double>() < 1e-8);
    EXPECT(j["quartic_constancy_spread"].get<double>() < 1e-8);
    EXPECT(std::abs(j["quartic_value"][0].get<double>() + 1.0) < 1e-8);
    EXPECT(std::abs(j["quartic_value"][1].get<double>()) < 1e-8);
    EXPECT(run("barbot --grid-n 0") == 2);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-binary>\n";
        return 2;
    }
    g_bin = argv[1];
    unsetenv("PKMODULI_TOL_SCALE");

    test_eval();
    test_flow();
    test_verify();
    test_env_tolerance_scale();
    test_config_file();
    test_barbot();

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cout << "cli_tests: " << g_failures << " checks failed\n";
    return 1;
}
