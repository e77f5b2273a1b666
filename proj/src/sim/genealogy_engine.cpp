#include <cmath>
#include <vector>

#include "sbm/errors.hpp"
#include "sbm/sim/engine.hpp"
#include "sbm/sim/philox.hpp"

namespace sbm {

namespace {

// Scratch tree for the family of one parent. Node 0 is the parent at the start of the gap.
struct FamilyTree {
    int dim = 1;
    std::vector<double> time;
    std::vector<double> pos;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> leaves;

    void clear() {
        time.clear();
        pos.clear();
        parent.clear();
        leaves.clear();
    }
    std::uint32_t add(double t, std::uint32_t par) {
        time.push_back(t);
        pos.resize(pos.size() + static_cast<std::size_t>(dim));
        parent.push_back(par);
        return static_cast<std::uint32_t>(time.size() - 1);
    }
    double* at(std::uint32_t v) { return pos.data() + static_cast<std::size_t>(v) * dim; }
};

// Probability that a Brownian bridge from x to y over `len` stays in the orthant.
double edge_survival(const double* x, const double* y, double len, const ModelParams& params) {
    double p = 1.0;
    for (int j = params.first_absorbed(); j < params.dim; ++j) {
        if (!(y[j] > 0.0) || !(x[j] > 0.0)) return 0.0;
        if (len > 0.0) p *= -std::expm1(-2.0 * x[j] * y[j] / len);
    }
    return p;
}

}  // namespace

ParticleCloud advance_genealogy(const ParticleCloud& cloud, double to_time, const SimConfig& config,
                                const StreamAddress& address) {
    if (to_time < cloud.time) throw ArgumentError("advance cannot move backwards in time");
    ParticleCloud out;
    out.time = to_time;
    out.dim = cloud.dim;
    out.unit_mass = cloud.unit_mass;
    const double h = to_time - cloud.time;
    if (h == 0.0 || cloud.empty()) {
        out.positions = cloud.positions;
        return out;
    }

    const ModelParams& params = config.params;
    const int d = cloud.dim;
    const double beta = params.beta;
    const double birth = config.branching_rate() * config.two_offspring_prob();
    // F(h) = 1 + (b / beta)(e^{beta h} - 1): inverse tail of the node-depth law at h
    const double grown = (birth / beta) * std::expm1(beta * h);
    const double F = 1.0 + grown;
    const double survive = std::exp(beta * h) / F;
    const double stop = 1.0 / F;
    const double below = grown / F;  // 1 - 1/F(h)
    const double log_continue = std::log1p(-stop);
    const bool orthant = params.is_orthant();

    FamilyTree tree;
    tree.dim = d;
    std::vector<std::uint32_t> stack;
    std::vector<double> kill_ok;
    std::vector<char> state;
    std::vector<std::uint32_t> path;

    for (std::size_t k = 0; k < cloud.alive_count(); ++k) {
        RandomStream rng(address.seed, static_cast<std::uint32_t>(k), address.step, address.replicate);
        if (!(rng.uniform() < survive)) continue;
        std::uint64_t family = 1;
        if (stop < 1.0) family += static_cast<std::uint64_t>(std::floor(std::log(rng.uniform()) / log_continue));
        if (out.alive_count() + family > config.particle_cap)
            throw ResourceError("particle count exceeded the cap of " + std::to_string(config.particle_cap),
                                config.particle_cap);

        tree.clear();
        stack.clear();
        const auto x0 = cloud.position(k);
        const std::uint32_t root = tree.add(0.0, 0);
        std::copy(x0.begin(), x0.end(), tree.at(root));
        const std::uint32_t first = tree.add(h, root);
        {
            const double sd = std::sqrt(h);
            double* p = tree.at(first);
            for (int j = 0; j < d; ++j) p[j] = x0[j] + sd * rng.normal();
        }
        tree.leaves.push_back(first);
        stack.push_back(root);
        stack.push_back(first);

        for (std::uint64_t n = 1; n < family; ++n) {
            const double uq = rng.uniform() * below;
            const double depth = std::log1p((beta / birth) * uq / (1.0 - uq)) / beta;
            const double tau = std::max(0.0, h - depth);
            std::uint32_t lower = stack.back();
            while (tree.time[stack.back()] > tau) {
                lower = stack.back();
                stack.pop_back();
            }
            const std::uint32_t upper = stack.back();
            std::uint32_t branch = upper;
            if (tree.time[upper] < tau) {
                const double ta = tree.time[upper], tb = tree.time[lower];
                const double w = (tau - ta) / (tb - ta);
                const double sd = std::sqrt((tau - ta) * (tb - tau) / (tb - ta));
                branch = tree.add(tau, upper);
                tree.parent[lower] = branch;
                const double* a = tree.at(upper);
                const double* b = tree.at(lower);
                double* m = tree.at(branch);
                for (int j = 0; j < d; ++j) m[j] = a[j] + w * (b[j] - a[j]) + sd * rng.normal();
                stack.push_back(branch);
            }
            const std::uint32_t leaf = tree.add(h, branch);
            {
                const double sd = std::sqrt(h - tau);
                const double* m = tree.at(branch);
                double* p = tree.at(leaf);
                for (int j = 0; j < d; ++j) p[j] = m[j] + sd * rng.normal();
            }
            tree.leaves.push_back(leaf);
            stack.push_back(leaf);
        }

        if (!orthant) {
            for (std::uint32_t leaf : tree.leaves) {
                const double* p = tree.at(leaf);
                out.positions.insert(out.positions.end(), p, p + d);
            }
            continue;
        }

        const std::size_t nodes = tree.time.size();
        kill_ok.assign(nodes, 1.0);
        for (std::uint32_t v = 1; v < nodes; ++v) {
            const std::uint32_t u = tree.parent[v];
            const double p = edge_survival(tree.at(u), tree.at(v), tree.time[v] - tree.time[u], params);
            kill_ok[v] = rng.uniform() < p ? 1.0 : 0.0;
        }
        state.assign(nodes, 0);  // 0 unknown, 1 alive, 2 dead
        state[root] = 1;
        for (std::uint32_t leaf : tree.leaves) {
            path.clear();
            std::uint32_t v = leaf;
            while (state[v] == 0) {
                path.push_back(v);
                v = tree.parent[v];
            }
            bool alive = state[v] == 1;
            for (auto it = path.rbegin(); it != path.rend(); ++it) {
                alive = alive && kill_ok[*it] > 0.0;
                state[*it] = alive ? 1 : 2;
            }
            if (alive) {
                const double* p = tree.at(leaf);
                out.positions.insert(out.positions.end(), p, p + d);
            }
        }
    }
    return out;
}

}  // namespace sbm
