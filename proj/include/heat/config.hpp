#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heat/async_sim.hpp"
#include "heat/core.hpp"

namespace heat {

/// Invalid or inconsistent configuration; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure; the CLI maps this to exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RunMode { Sync, AsyncSim, ExecBarriered, ExecFree };
enum class InitialCondition { Cosine, Constant, File };
enum class Precision { Double, Single };

/// Full run configuration. Defaults reproduce the reference experiment:
/// N=100, n=1, alpha=0.5, dt=0.01, dx=0.1 (r=0.5), Dirichlet(1,0), cosine IC.
struct RunConfig {
    std::size_t grid_points = 100;   // "N"
    std::size_t points_per_pe = 1;   // "n"
    double alpha = 0.5;
    double dt = 0.01;
    double dx = 0.1;
    std::optional<double> direct_r;  // "r": overrides alpha/dt/dx

    std::string bc = "dirichlet";    // "dirichlet" | "periodic"
    double c1 = 1.0;
    double c2 = 0.0;

    InitialCondition ic = InitialCondition::Cosine;
    double ic_value = 0.0;           // Constant IC
    std::string ic_file;             // File IC: one value per line

    std::size_t q = 5;
    std::string distribution = "uniform";  // "uniform" | "fixed" | "geometric"
    std::size_t fixed_delay = 0;
    double geometric_p = 0.5;
    std::uint64_t seed = 1;

    std::size_t k_end = 20000;
    std::size_t record_stride = 0;   // 0 = automatic
    RunMode mode = RunMode::Sync;
    std::size_t workers = 0;         // exec modes; 0 = N/n
    bool allow_unstable = false;
    Precision precision = Precision::Double;

    std::size_t ensemble_runs = 50;  // "M"

    std::vector<std::size_t> bench_sizes = {100, 1000, 10000};
    std::size_t bench_reps = 5;
    std::size_t bench_k_end = 2000;
    std::size_t bench_workers = 0;   // 0 = hardware concurrency

    std::string out_dir = ".";
};

/// Parses and validates a config. `file_json` is the config file text ("{}"
/// when absent); `overrides` are key=value pairs applied on top; a HEAT_SEED
/// environment value, when given, wins over both. Unknown keys and schema
/// violations throw ConfigError naming the offending key.
RunConfig parse_config(const std::string& file_json,
                       const std::vector<std::string>& overrides,
                       const std::optional<std::string>& env_seed);

/// Derived domain objects. make_initial may throw IoError for a File IC.
SolverParams make_params(const RunConfig& cfg);
BoundaryCondition make_boundary(const RunConfig& cfg);
TemperatureField make_initial(const RunConfig& cfg);
PartitionSpec make_partition(const RunConfig& cfg);
DelayModel make_delay_model(const RunConfig& cfg);

}  // namespace heat
