#pragma once

// Seeded verification sweeps: every numerical identity the library claims,
// run over random samples, collected into a report with one record per
// identity. The fault-injection hook perturbs the metric so the sweeps can
// demonstrate they actually discriminate.

#include <cstdint>
#include <string>
#include <vector>

namespace pkmoduli {

struct CheckRecord {
    std::string check_id;
    std::string anchor;  // the identity being checked, in words/formula
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;
    bool overall = false;
};

struct VerifyOptions {
    std::uint64_t seed = 12345;
    int sample_count = 50;
    double tol_scale = 1.0;       // multiplies every tolerance
    std::string perturb_target;   // "" or "metric"
    double perturb_eps = 0.0;
};

VerificationReport run_verification(const VerifyOptions& opt);

}  // namespace pkmoduli
