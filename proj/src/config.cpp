#include "heat/config.hpp"

#include <fstream>
#include <json.hpp>

namespace heat {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
    throw ConfigError("config key \"" + key + "\": " + what);
}

double get_positive(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) bad(key, "expected a number");
    double v = j[key].get<double>();
    if (!(v > 0.0)) bad(key, "must be positive");
    return v;
}

std::size_t get_size(const json& j, const std::string& key, std::size_t fallback,
                     std::size_t min_value = 0) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer() || j[key].get<long long>() < 0)
        bad(key, "expected a non-negative integer");
    std::size_t v = j[key].get<std::size_t>();
    if (v < min_value) bad(key, "below minimum " + std::to_string(min_value));
    return v;
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) bad(key, "expected a string");
    return j[key].get<std::string>();
}

bool get_bool(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) bad(key, "expected a boolean");
    return j[key].get<bool>();
}

const char* const kKnownKeys[] = {
    "N",     "n",           "alpha",       "dt",          "dx",
    "r",     "bc",          "c1",          "c2",          "ic",
    "ic_value", "ic_file",  "q",           "distribution", "delay",
    "p",     "seed",        "k_end",       "record_stride", "mode",
    "workers", "allow_unstable", "precision", "M",         "bench_sizes",
    "bench_reps", "bench_k_end", "bench_workers", "out"};

RunConfig from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKnownKeys)
            if (key == k) { known = true; break; }
        if (!known) bad(key, "unknown key");
    }

    RunConfig cfg;
    cfg.grid_points = get_size(j, "N", cfg.grid_points, 3);
    cfg.points_per_pe = get_size(j, "n", cfg.points_per_pe, 1);
    cfg.alpha = get_positive(j, "alpha", cfg.alpha);
    cfg.dt = get_positive(j, "dt", cfg.dt);
    cfg.dx = get_positive(j, "dx", cfg.dx);
    if (j.contains("r")) cfg.direct_r = get_positive(j, "r", 0.5);

    cfg.bc = get_string(j, "bc", cfg.bc);
    if (cfg.bc != "dirichlet" && cfg.bc != "periodic")
        bad("bc", "expected \"dirichlet\" or \"periodic\"");
    if (j.contains("c1")) {
        if (!j["c1"].is_number()) bad("c1", "expected a number");
        cfg.c1 = j["c1"].get<double>();
    }
    if (j.contains("c2")) {
        if (!j["c2"].is_number()) bad("c2", "expected a number");
        cfg.c2 = j["c2"].get<double>();
    }

    std::string ic = get_string(j, "ic", "cosine");
    if (ic == "cosine") cfg.ic = InitialCondition::Cosine;
    else if (ic == "constant") cfg.ic = InitialCondition::Constant;
    else if (ic == "file") cfg.ic = InitialCondition::File;
    else bad("ic", "expected \"cosine\", \"constant\" or \"file\"");
    if (j.contains("ic_value")) {
        if (!j["ic_value"].is_number()) bad("ic_value", "expected a number");
        cfg.ic_value = j["ic_value"].get<double>();
    }
    cfg.ic_file = get_string(j, "ic_file", cfg.ic_file);
    if (cfg.ic == InitialCondition::File && cfg.ic_file.empty())
        bad("ic_file", "required when ic=\"file\"");

    cfg.q = get_size(j, "q", cfg.q, 1);
    cfg.distribution = get_string(j, "distribution", cfg.distribution);
    if (cfg.distribution != "uniform" && cfg.distribution != "fixed" &&
        cfg.distribution != "geometric")
        bad("distribution", "expected \"uniform\", \"fixed\" or \"geometric\"");
    cfg.fixed_delay = get_size(j, "delay", cfg.fixed_delay);
    if (cfg.distribution == "fixed" && cfg.fixed_delay >= cfg.q)
        bad("delay", "fixed delay must satisfy d < q");
    if (j.contains("p")) {
        cfg.geometric_p = get_positive(j, "p", cfg.geometric_p);
        if (cfg.geometric_p > 1.0) bad("p", "must lie in (0, 1]");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
            bad("seed", "expected a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    cfg.k_end = get_size(j, "k_end", cfg.k_end);
    cfg.record_stride = get_size(j, "record_stride", cfg.record_stride);

    std::string mode = get_string(j, "mode", "sync");
    if (mode == "sync") cfg.mode = RunMode::Sync;
    else if (mode == "async-sim") cfg.mode = RunMode::AsyncSim;
    else if (mode == "exec-barriered") cfg.mode = RunMode::ExecBarriered;
    else if (mode == "exec-free") cfg.mode = RunMode::ExecFree;
    else bad("mode", "expected \"sync\", \"async-sim\", \"exec-barriered\" or \"exec-free\"");

    cfg.workers = get_size(j, "workers", cfg.workers);
    cfg.allow_unstable = get_bool(j, "allow_unstable", cfg.allow_unstable);

    std::string precision = get_string(j, "precision", "double");
    if (precision == "double") cfg.precision = Precision::Double;
    else if (precision == "single") cfg.precision = Precision::Single;
    else bad("precision", "expected \"double\" or \"single\"");

    cfg.ensemble_runs = get_size(j, "M", cfg.ensemble_runs, 1);

    if (j.contains("bench_sizes")) {
        if (!j["bench_sizes"].is_array()) bad("bench_sizes", "expected an array");
        cfg.bench_sizes.clear();
        for (const auto& e : j["bench_sizes"]) {
            if (!e.is_number_integer() || e.get<long long>() < 3)
                bad("bench_sizes", "entries must be integers >= 3");
            cfg.bench_sizes.push_back(e.get<std::size_t>());
        }
        if (cfg.bench_sizes.empty()) bad("bench_sizes", "must not be empty");
    }
    cfg.bench_reps = get_size(j, "bench_reps", cfg.bench_reps, 3);
    cfg.bench_k_end = get_size(j, "bench_k_end", cfg.bench_k_end, 1);
    cfg.bench_workers = get_size(j, "bench_workers", cfg.bench_workers);
    cfg.out_dir = get_string(j, "out", cfg.out_dir);

    // cross-field checks
    if (cfg.grid_points % cfg.points_per_pe != 0)
        bad("n", "must divide N (" + std::to_string(cfg.points_per_pe) +
                     " does not divide " + std::to_string(cfg.grid_points) + ")");
    double r = cfg.direct_r ? *cfg.direct_r
                            : cfg.alpha * cfg.dt / (cfg.dx * cfg.dx);
    if (!cfg.allow_unstable && (!(r > 0.0) || r > 0.5))
        bad("r", "diffusion number " + std::to_string(r) +
                     " outside (0, 0.5]; set allow_unstable to override");
    std::size_t pe_count = cfg.grid_points / cfg.points_per_pe;
    if (cfg.workers != 0 && cfg.workers != pe_count)
        bad("workers", "must equal N/n = " + std::to_string(pe_count));
    if (cfg.precision == Precision::Single && cfg.mode != RunMode::Sync)
        bad("precision", "single precision is only supported for mode=\"sync\"");
    return cfg;
}

json parse_json_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError(what + ": invalid JSON");
    return j;
}

}  // namespace

RunConfig parse_config(const std::string& file_json,
                       const std::vector<std::string>& overrides,
                       const std::optional<std::string>& env_seed) {
    json j = parse_json_text(file_json.empty() ? "{}" : file_json, "config file");
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    for (const std::string& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got \"" + kv + "\"");
        std::string key = kv.substr(0, eq);
        std::string raw = kv.substr(eq + 1);
        json value = json::parse(raw, nullptr, false);
        if (value.is_discarded()) value = raw;  // bare strings allowed
        j[key] = value;
    }
    if (env_seed) {
        json value = parse_json_text(*env_seed, "HEAT_SEED");
        if (!value.is_number_integer() || value.get<long long>() < 0)
            throw ConfigError("HEAT_SEED must be a non-negative integer");
        j["seed"] = value;
    }
    return from_json(j);
}

SolverParams make_params(const RunConfig& cfg) {
    if (cfg.direct_r) return SolverParams::from_r(*cfg.direct_r, cfg.allow_unstable);
    return cfg.allow_unstable ? SolverParams::unchecked(cfg.alpha, cfg.dt, cfg.dx)
                              : SolverParams::checked(cfg.alpha, cfg.dt, cfg.dx);
}

BoundaryCondition make_boundary(const RunConfig& cfg) {
    return cfg.bc == "dirichlet" ? BoundaryCondition::dirichlet(cfg.c1, cfg.c2)
                                 : BoundaryCondition::periodic();
}

TemperatureField make_initial(const RunConfig& cfg) {
    switch (cfg.ic) {
        case InitialCondition::Cosine:
            return cosine_init(cfg.grid_points);
        case InitialCondition::Constant:
            return TemperatureField(
                std::vector<double>(cfg.grid_points, cfg.ic_value));
        case InitialCondition::File: {
            std::ifstream in(cfg.ic_file);
            if (!in) throw IoError("cannot open IC file: " + cfg.ic_file);
            std::vector<double> v;
            double x;
            while (in >> x) v.push_back(x);
            if (v.size() != cfg.grid_points)
                throw ConfigError("IC file holds " + std::to_string(v.size()) +
                                  " values, expected N=" +
                                  std::to_string(cfg.grid_points));
            return TemperatureField(std::move(v));
        }
    }
    throw std::logic_error("make_initial: unreachable");
}

PartitionSpec make_partition(const RunConfig& cfg) {
    return PartitionSpec(cfg.grid_points, cfg.points_per_pe);
}

DelayModel make_delay_model(const RunConfig& cfg) {
    if (cfg.distribution == "uniform") return DelayModel::uniform(cfg.q, cfg.seed);
    if (cfg.distribution == "fixed")
        return DelayModel::fixed(cfg.q, cfg.fixed_delay, cfg.seed);
    return DelayModel::geometric(cfg.q, cfg.geometric_p, cfg.seed);
}

}  // namespace heat
