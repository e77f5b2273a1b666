#include <cmath>
#include <vector>

#include "sbm/errors.hpp"
#include "sbm/sim/engine.hpp"
#include "sbm/sim/philox.hpp"

namespace sbm {

namespace {

// Moves x over `len` in place; false if the path left the orthant.
bool move(std::vector<double>& x, double len, const ModelParams& params, double dt, RandomStream& rng) {
    const int d = params.dim;
    const int first = params.first_absorbed();
    if (!params.is_orthant()) {
        const double sd = std::sqrt(len);
        for (int j = 0; j < d; ++j) x[j] += sd * rng.normal();
        return true;
    }
    double left = len;
    std::vector<double> y(x.size());
    while (left > 0.0) {
        const double step = std::min(dt, left);
        left -= step;
        const double sd = std::sqrt(step);
        double survive = 1.0;
        for (int j = 0; j < d; ++j) {
            y[j] = x[j] + sd * rng.normal();
            if (j >= first) survive = (y[j] > 0.0) ? survive * -std::expm1(-2.0 * x[j] * y[j] / step) : 0.0;
        }
        if (!(rng.uniform() < survive)) return false;
        x.swap(y);
    }
    return true;
}

}  // namespace

ParticleCloud advance_events(const ParticleCloud& cloud, double to_time, const SimConfig& config,
                             const StreamAddress& address, AdvanceStats* stats) {
    if (to_time < cloud.time) throw ArgumentError("advance cannot move backwards in time");
    ParticleCloud out;
    out.time = to_time;
    out.dim = cloud.dim;
    out.unit_mass = cloud.unit_mass;
    if (to_time == cloud.time) {
        out.positions = cloud.positions;
        return out;
    }
    const double rate = config.branching_rate();
    const double p2 = config.two_offspring_prob();
    AdvanceStats local;

    struct Pending {
        double t;
        std::vector<double> x;
    };
    std::vector<Pending> todo;
    for (std::size_t k = 0; k < cloud.alive_count(); ++k) {
        RandomStream rng(address.seed, static_cast<std::uint32_t>(k), address.step, address.replicate);
        const auto x0 = cloud.position(k);
        todo.push_back({cloud.time, std::vector<double>(x0.begin(), x0.end())});
        while (!todo.empty()) {
            Pending cur = std::move(todo.back());
            todo.pop_back();
            for (;;) {
                const double life = rng.exponential(rate);
                const double end = std::min(cur.t + life, to_time);
                if (!move(cur.x, end - cur.t, config.params, config.dt, rng)) {
                    ++local.killed;
                    break;
                }
                cur.t = end;
                if (end >= to_time) {
                    if (out.alive_count() >= config.particle_cap)
                        throw ResourceError("particle count exceeded the cap of " + std::to_string(config.particle_cap),
                                            config.particle_cap);
                    out.positions.insert(out.positions.end(), cur.x.begin(), cur.x.end());
                    break;
                }
                if (rng.uniform() < p2) {
                    ++local.two_offspring;
                    todo.push_back({cur.t, cur.x});
                } else {
                    ++local.zero_offspring;
                    break;
                }
            }
        }
    }
    if (stats) {
        stats->two_offspring += local.two_offspring;
        stats->zero_offspring += local.zero_offspring;
        stats->killed += local.killed;
    }
    return out;
}

ParticleCloud advance(const ParticleCloud& cloud, double to_time, const SimConfig& config,
                      const StreamAddress& address, AdvanceStats* stats) {
    if (config.engine == Engine::EventDriven) return advance_events(cloud, to_time, config, address, stats);
    return advance_genealogy(cloud, to_time, config, address);
}

}  // namespace sbm
