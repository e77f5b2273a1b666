#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sbm/harness/plan.hpp"
#include "sbm/martingale/tracker.hpp"

namespace sbm::harness {

// Per-snapshot functionals of one replicate.
struct ReplicateData {
    std::vector<double> mass;
    std::vector<double> f;
    std::vector<double> spectral_f;
    std::vector<double> slln;     // X_t(B)
    std::vector<double> weight;   // <X_t, prod x_j> over the absorbed coordinates
    std::vector<std::vector<std::complex<double>>> w;  // [mode][snapshot]
};

struct RunData {
    ModelParams params;
    std::vector<double> times;
    std::vector<FourierMode> modes;
    std::vector<ReplicateData> reps;  // indexed by replicate
    unsigned threads_used = 1;

    std::size_t time_index(double t) const;   // exact match, ConfigError otherwise
    std::size_t mode_index(const FourierMode& m) const;
    WTrack track(const FourierMode& m) const;
};

// Simulates every replicate of the plan. Replicate r uses stream replicate index r and step
// index k for the advance to times()[k], so the data do not depend on the thread count.
// The first failing replicate's exception (lowest index) is rethrown after all workers stop.
RunData run_replicates(const ExperimentPlan& plan);

}  // namespace sbm::harness
