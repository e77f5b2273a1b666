#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "sbm/analytic/model.hpp"
#include "sbm/analytic/test_function.hpp"

namespace sbm {

// Atomic measure X_t: equal-mass particles, positions stored row-major (n x d).
struct ParticleCloud {
    double time = 0.0;
    int dim = 1;
    double unit_mass = 1.0;
    std::vector<double> positions;

    std::size_t alive_count() const { return positions.size() / static_cast<std::size_t>(dim); }
    double total_mass() const { return static_cast<double>(alive_count()) * unit_mass; }
    std::span<const double> position(std::size_t k) const {
        return {positions.data() + k * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }
    bool empty() const { return positions.empty(); }
};

enum class Engine { Genealogy, EventDriven };

struct SimConfig {
    ModelParams params;
    std::int64_t N = 2000;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    double t_max = 6.0;
    std::vector<double> snapshot_times;
    std::size_t particle_cap = 5'000'000;
    Engine engine = Engine::Genealogy;

    double branching_rate() const { return 2.0 * params.alpha * static_cast<double>(N); }
    double two_offspring_prob() const { return 0.5 * (1.0 + params.beta / branching_rate()); }

    // Throws ArgumentError when an invariant fails (including beta > 2 alpha N).
    void validate() const;
};

// round(m_a N) particles at each atom a.
ParticleCloud init_cloud(const InitialMeasure& init, const SimConfig& config);

// unit_mass * sum_k f(x_k), compensated and in storage order.
double integrate(const ParticleCloud& cloud, const TestFunction& f);

// unit_mass * sum_k phi_lambda(x_k) with phi the (generalized) mode of the domain.
std::complex<double> integrate_mode(const ParticleCloud& cloud, const FourierMode& mode,
                                    const ModelParams& params);

// unit_mass * sum_k prod_{absorbed j} x_{k,j}.
double integrate_orthant_weight(const ParticleCloud& cloud, const ModelParams& params);

// Debug dump: header "replicate time x0 .. x{d-1}", one row per particle.
void write_snapshot_header(std::ostream& os, int dim);
void write_snapshot(std::ostream& os, std::uint32_t replicate, const ParticleCloud& cloud);

}  // namespace sbm
