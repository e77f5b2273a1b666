#include "sbm/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "sbm/errors.hpp"

namespace sbm::cli {

namespace {

struct Entry {
    int line = 0;
    std::string value;
};

const std::vector<std::string> kKeys{
    "d", "alpha", "beta", "domain", "absorbed", "start", "N", "dt", "seed", "t_max", "snapshot_times",
    "particle_cap", "engine", "replicates", "threads", "checks", "f", "spectral_f", "slln_box", "eps", "delta",
    "grid_points", "spectral_points", "moment_times", "second_moment_time", "drift_pairs", "variance_times",
    "spectral_times", "out_dir", "dump_snapshots",
};

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        const auto it = entries_.find(key);
        const std::string where = it == entries_.end() ? "" : "line " + std::to_string(it->second.line) + ": ";
        throw ConfigError(where + "key '" + key + "': " + msg);
    }

    const std::string& raw(const std::string& key) const { return entries_.at(key).value; }

    double number(const std::string& key, const std::string& text) const {
        double v = 0.0;
        const auto* end = text.data() + text.size();
        const auto [p, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || p != end || !std::isfinite(v)) fail(key, "'" + text + "' is not a finite number");
        return v;
    }

    template <class I>
    I integer(const std::string& key, const std::string& text) const {
        I v{};
        const auto* end = text.data() + text.size();
        const auto [p, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc() || p != end) fail(key, "'" + text + "' is not an integer");
        return v;
    }

    double real(const std::string& key) const { return number(key, raw(key)); }
    template <class I>
    I integer(const std::string& key) const { return integer<I>(key, raw(key)); }

    std::vector<double> list(const std::string& key, const std::string& text) const {
        std::vector<double> out;
        for (const auto& tok : split(text, ", \t")) out.push_back(number(key, tok));
        return out;
    }
    std::vector<double> list(const std::string& key) const { return list(key, raw(key)); }

    bool boolean(const std::string& key) const {
        std::string v = raw(key);
        std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        fail(key, "expected true or false, got '" + raw(key) + "'");
    }

    void positive(const std::string& key, double v) const {
        if (!(v > 0.0)) fail(key, "must be > 0 (got " + raw(key) + ")");
    }

    std::vector<double> vec(const std::string& key, const std::string& text, int dim) const {
        auto v = list(key, text);
        if (static_cast<int>(v.size()) != dim)
            fail(key, "expected " + std::to_string(dim) + " components in '" + text + "'");
        return v;
    }

    // "name a=.. b=.." fields after the kind token.
    std::map<std::string, std::string> fields(const std::string& key, const std::vector<std::string>& toks,
                                              std::size_t from, const std::vector<std::string>& allowed) const {
        std::map<std::string, std::string> out;
        for (std::size_t k = from; k < toks.size(); ++k) {
            const auto eq = toks[k].find('=');
            if (eq == std::string::npos) fail(key, "expected name=value, got '" + toks[k] + "'");
            const auto name = toks[k].substr(0, eq);
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
                fail(key, "unknown field '" + name + "'");
            out[name] = toks[k].substr(eq + 1);
        }
        for (const auto& a : allowed)
            if (a != "amplitude" && !out.count(a)) fail(key, "missing field '" + a + "'");
        return out;
    }

    TestFunction test_function(const std::string& key, int dim) const {
        const auto toks = split(raw(key), " \t");
        if (toks.empty()) fail(key, "empty test function");
        const auto& kind = toks[0];
        auto amp = [&](const std::map<std::string, std::string>& fs) {
            return fs.count("amplitude") ? number(key, fs.at("amplitude")) : 1.0;
        };
        if (kind == "constant") {
            const auto fs = fields(key, toks, 1, {"amplitude"});
            return TestFunction(dim, ConstantOne{}, amp(fs));
        }
        if (kind == "box") {
            const auto fs = fields(key, toks, 1, {"lo", "hi", "amplitude"});
            return TestFunction(dim, IndicatorBox{vec(key, fs.at("lo"), dim), vec(key, fs.at("hi"), dim)}, amp(fs));
        }
        if (kind == "gaussian") {
            const auto fs = fields(key, toks, 1, {"center", "width", "amplitude"});
            const double w = number(key, fs.at("width"));
            if (!(w > 0.0)) fail(key, "width must be > 0");
            return TestFunction(dim, GaussianBump{vec(key, fs.at("center"), dim), w}, amp(fs));
        }
        if (kind == "cosine") {
            const auto fs = fields(key, toks, 1, {"lambda", "amplitude"});
            return TestFunction(dim, CosineMode{vec(key, fs.at("lambda"), dim)}, amp(fs));
        }
        fail(key, "unknown test function kind '" + kind + "'");
    }

private:
    std::map<std::string, Entry> entries_;
};

}  // namespace

RunSettings parse_config(std::istream& in) {
    std::map<std::string, Entry> entries;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(n) + ": expected key = value, got '" + text + "'");
        const auto key = trim(std::string_view(text).substr(0, eq));
        const auto value = trim(std::string_view(text).substr(eq + 1));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw ConfigError("line " + std::to_string(n) + ": unknown key '" + key + "'");
        if (entries.count(key))
            throw ConfigError("line " + std::to_string(n) + ": key '" + key + "' repeated (first on line " +
                              std::to_string(entries[key].line) + ")");
        if (value.empty()) throw ConfigError("line " + std::to_string(n) + ": key '" + key + "': empty value");
        entries[key] = Entry{n, value};
    }

    RunSettings out;
    for (const auto& [k, e] : entries) out.key_lines[k] = e.line;
    const Reader r(std::move(entries));

    ModelParams params;
    if (r.has("d")) {
        params.dim = r.integer<int>("d");
        if (params.dim < 1 || params.dim > 3) r.fail("d", "must be 1, 2 or 3");
    }
    if (r.has("alpha")) r.positive("alpha", params.alpha = r.real("alpha"));
    if (r.has("beta")) r.positive("beta", params.beta = r.real("beta"));
    const std::string domain = r.has("domain") ? r.raw("domain") : "full";
    if (domain == "orthant") {
        const int i = r.has("absorbed") ? r.integer<int>("absorbed") : 1;
        if (i < 1 || i > params.dim) r.fail("absorbed", "must lie in 1..d");
        params.domain = Orthant{i};
    } else if (domain != "full") {
        r.fail("domain", "expected full or orthant, got '" + domain + "'");
    } else if (r.has("absorbed")) {
        r.fail("absorbed", "only meaningful with domain = orthant");
    }

    auto& plan = out.plan;
    plan = harness::ExperimentPlan::defaults(params);
    auto& cfg = plan.config;
    if (r.has("t_max")) {
        const double t = r.real("t_max");
        r.positive("t_max", t);
        plan.set_horizon(t);
    }
    if (r.has("snapshot_times")) cfg.snapshot_times = r.list("snapshot_times");
    if (r.has("N")) {
        cfg.N = r.integer<std::int64_t>("N");
        if (cfg.N < 1) r.fail("N", "must be >= 1");
    }
    if (r.has("dt")) r.positive("dt", cfg.dt = r.real("dt"));
    if (r.has("seed")) cfg.seed = r.integer<std::uint64_t>("seed");
    if (r.has("particle_cap")) {
        const auto cap = r.integer<std::int64_t>("particle_cap");
        if (cap < 1) r.fail("particle_cap", "must be >= 1");
        cfg.particle_cap = static_cast<std::size_t>(cap);
    }
    if (r.has("engine")) {
        const auto& e = r.raw("engine");
        if (e == "genealogy") cfg.engine = Engine::Genealogy;
        else if (e == "event") cfg.engine = Engine::EventDriven;
        else r.fail("engine", "expected genealogy or event, got '" + e + "'");
    }
    if (r.has("start")) plan.init = InitialMeasure::point(r.vec("start", r.raw("start"), params.dim));
    if (r.has("replicates")) plan.replicates = r.integer<int>("replicates");
    if (r.has("threads")) {
        const int t = r.integer<int>("threads");
        if (t < 0) r.fail("threads", "must be >= 0");
        plan.threads = static_cast<unsigned>(t);
    }
    if (r.has("checks")) {
        const auto names = split(r.raw("checks"), ", \t");
        if (names.size() == 1 && names[0] == "all") {
            // keep the defaults for the domain
        } else if (names.size() == 1 && names[0] == "none") {
            plan.checks.clear();
        } else {
            plan.checks.clear();
            for (const auto& name : names) {
                const auto c = harness::parse_check(name);
                if (!c) r.fail("checks", "unknown check '" + name + "'");
                if (!plan.enabled(*c)) plan.checks.push_back(*c);
            }
        }
    }
    if (r.has("f")) plan.f = r.test_function("f", params.dim);
    if (r.has("spectral_f")) plan.spectral_f = r.test_function("spectral_f", params.dim);
    if (r.has("slln_box")) {
        const auto fs = r.fields("slln_box", split(r.raw("slln_box"), " \t"), 0, {"lo", "hi"});
        plan.slln_box = IndicatorBox{r.vec("slln_box", fs.at("lo"), params.dim), r.vec("slln_box", fs.at("hi"), params.dim)};
    }
    if (r.has("eps")) plan.eps = r.real("eps");
    if (r.has("delta")) plan.delta = r.real("delta");
    if (r.has("grid_points")) plan.grid_points = r.integer<int>("grid_points");
    if (r.has("spectral_points")) plan.spectral_points = r.integer<int>("spectral_points");
    if (r.has("moment_times")) plan.moment_times = r.list("moment_times");
    if (r.has("second_moment_time")) plan.second_moment_time = r.real("second_moment_time");
    if (r.has("variance_times")) plan.variance_times = r.list("variance_times");
    if (r.has("spectral_times")) plan.spectral_times = r.list("spectral_times");
    if (r.has("drift_pairs")) {
        plan.drift_pairs.clear();
        for (const auto& tok : split(r.raw("drift_pairs"), ", \t")) {
            const auto parts = split(tok, ":");
            if (parts.size() != 2) r.fail("drift_pairs", "expected s:t, got '" + tok + "'");
            plan.drift_pairs.emplace_back(r.number("drift_pairs", parts[0]), r.number("drift_pairs", parts[1]));
        }
    }
    if (r.has("out_dir")) out.out_dir = r.raw("out_dir");
    if (r.has("dump_snapshots")) out.dump_snapshots = r.boolean("dump_snapshots");
    return out;
}

RunSettings load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    return parse_config(in);
}

std::string locate(const RunSettings& settings, const std::string& message) {
    for (const auto& [key, line] : settings.key_lines)
        if (message.rfind(key + ":", 0) == 0) return "line " + std::to_string(line) + ": " + message;
    return message;
}

}  // namespace sbm::cli
