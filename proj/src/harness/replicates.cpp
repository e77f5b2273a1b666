#include "sbm/harness/replicates.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "sbm/errors.hpp"
#include "sbm/sim/engine.hpp"

namespace sbm::harness {

std::size_t RunData::time_index(double t) const {
    const auto it = std::find(times.begin(), times.end(), t);
    if (it == times.end()) throw ConfigError("time " + std::to_string(t) + " is not a snapshot time");
    return static_cast<std::size_t>(it - times.begin());
}

std::size_t RunData::mode_index(const FourierMode& m) const {
    for (std::size_t j = 0; j < modes.size(); ++j)
        if (modes[j].lambda == m.lambda) return j;
    throw ConfigError("mode is not tracked");
}

WTrack RunData::track(const FourierMode& m) const {
    const std::size_t j = mode_index(m);
    WTrack tr{modes[j], params, times, {}};
    tr.samples.reserve(reps.size());
    for (const auto& r : reps) tr.samples.push_back(r.w[j]);
    return tr;
}

namespace {

ReplicateData simulate_one(const ExperimentPlan& plan, const std::vector<double>& times,
                           const std::vector<FourierMode>& modes, std::uint32_t r) {
    const auto& cfg = plan.config;
    const auto& p = cfg.params;
    const TestFunction slln_f(p.dim, plan.slln_box);

    std::ofstream dump;
    if (!plan.dump_dir.empty()) {
        dump.open(std::filesystem::path(plan.dump_dir) / ("replicate_" + std::to_string(r) + ".txt"));
        if (!dump) throw ResourceError("cannot open snapshot dump in " + plan.dump_dir, 0);
        write_snapshot_header(dump, p.dim);
    }

    ReplicateData out;
    out.w.assign(modes.size(), {});
    auto cloud = init_cloud(plan.init, cfg);
    for (std::size_t k = 0; k < times.size(); ++k) {
        cloud = advance(cloud, times[k], cfg, {cfg.seed, r, static_cast<std::uint32_t>(k)});
        out.mass.push_back(cloud.total_mass());
        out.f.push_back(integrate(cloud, plan.f));
        out.spectral_f.push_back(p.is_orthant() ? 0.0 : integrate(cloud, plan.spectral_f));
        out.slln.push_back(integrate(cloud, slln_f));
        out.weight.push_back(integrate_orthant_weight(cloud, p));
        for (std::size_t j = 0; j < modes.size(); ++j) out.w[j].push_back(w_value(cloud, modes[j], p));
        if (dump) write_snapshot(dump, r, cloud);
    }
    return out;
}

}  // namespace

RunData run_replicates(const ExperimentPlan& plan) {
    RunData data;
    data.params = plan.config.params;
    data.times = plan.times();
    data.modes = plan.tracked_modes();
    const auto n = static_cast<std::size_t>(plan.replicates);
    data.reps.resize(n);

    if (!plan.dump_dir.empty()) std::filesystem::create_directories(plan.dump_dir);

    unsigned threads = plan.threads != 0 ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    data.threads_used = threads;

    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex err_mu;
    std::size_t err_rep = n;
    std::exception_ptr err;

    auto worker = [&] {
        for (;;) {
            if (stop.load()) return;
            const std::size_t r = next.fetch_add(1);
            if (r >= n) return;
            try {
                data.reps[r] = simulate_one(plan, data.times, data.modes, static_cast<std::uint32_t>(r));
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (r < err_rep) {
                    err_rep = r;
                    err = std::current_exception();
                }
                stop.store(true);
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return data;
}

}  // namespace sbm::harness
