#include "sbm/sim/particle_cloud.hpp"

#include <cmath>
#include <cstdio>

#include "sbm/analytic/kernels.hpp"
#include "sbm/errors.hpp"
#include "sbm/util/compensated_sum.hpp"

namespace sbm {

void SimConfig::validate() const {
    params.validate();
    if (N < 1) throw ArgumentError("N must be >= 1");
    if (!(dt > 0.0)) throw ArgumentError("dt must be > 0");
    if (!(t_max > 0.0)) throw ArgumentError("t_max must be > 0");
    if (params.beta > branching_rate())
        throw ArgumentError("beta exceeds the branching rate 2 alpha N; raise N");
    for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
        if (snapshot_times[k] < 0.0 || snapshot_times[k] > t_max)
            throw ArgumentError("snapshot times must lie in [0, t_max]");
        if (k > 0 && !(snapshot_times[k] > snapshot_times[k - 1]))
            throw ArgumentError("snapshot times must be strictly increasing");
    }
    if (particle_cap == 0) throw ArgumentError("particle cap must be positive");
}

ParticleCloud init_cloud(const InitialMeasure& init, const SimConfig& config) {
    init.validate(config.params);
    ParticleCloud cloud;
    cloud.dim = config.params.dim;
    cloud.unit_mass = 1.0 / static_cast<double>(config.N);
    for (const auto& atom : init.atoms) {
        const auto n = static_cast<std::size_t>(std::llround(atom.mass * static_cast<double>(config.N)));
        for (std::size_t k = 0; k < n; ++k) cloud.positions.insert(cloud.positions.end(), atom.x.begin(), atom.x.end());
    }
    if (cloud.alive_count() > config.particle_cap)
        throw ResourceError("initial cloud exceeds the particle cap", config.particle_cap);
    if (cloud.empty()) throw ArgumentError("initial measure rounds to zero particles at this N");
    return cloud;
}

double integrate(const ParticleCloud& cloud, const TestFunction& f) {
    CompensatedSum s;
    for (std::size_t k = 0; k < cloud.alive_count(); ++k) s.add(f(cloud.position(k)));
    return cloud.unit_mass * s.value();
}

std::complex<double> integrate_mode(const ParticleCloud& cloud, const FourierMode& mode,
                                    const ModelParams& params) {
    CompensatedComplexSum s;
    for (std::size_t k = 0; k < cloud.alive_count(); ++k)
        s.add(analytic::generalized_mode(mode, cloud.position(k), params));
    return cloud.unit_mass * s.value();
}

double integrate_orthant_weight(const ParticleCloud& cloud, const ModelParams& params) {
    CompensatedSum s;
    for (std::size_t k = 0; k < cloud.alive_count(); ++k) {
        const auto x = cloud.position(k);
        double w = 1.0;
        for (int j = params.first_absorbed(); j < params.dim; ++j) w *= x[j];
        s.add(w);
    }
    return cloud.unit_mass * s.value();
}

void write_snapshot_header(std::ostream& os, int dim) {
    os << "replicate time";
    for (int j = 0; j < dim; ++j) os << " x" << j;
    os << '\n';
}

void write_snapshot(std::ostream& os, std::uint32_t replicate, const ParticleCloud& cloud) {
    char buf[32];
    for (std::size_t k = 0; k < cloud.alive_count(); ++k) {
        os << replicate;
        std::snprintf(buf, sizeof buf, " %.17g", cloud.time);
        os << buf;
        for (double v : cloud.position(k)) {
            std::snprintf(buf, sizeof buf, " %.17g", v);
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace sbm
