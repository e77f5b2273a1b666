#pragma once

#include <string>
#include <vector>

namespace sbm::analytic {

struct IdentityResult {
    std::string name;
    double error = 0.0;  // worst deviation over the sampled cases
    double tolerance = 0.0;
    bool pass = false;
};

// Deterministic identities of the analytic kernels, evaluated on fixed sample sets.
std::vector<IdentityResult> run_identity_suite();

}  // namespace sbm::analytic
