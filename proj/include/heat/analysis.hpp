#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heat/async_sim.hpp"
#include "heat/core.hpp"
#include "heat/sync_solver.hpp"

namespace heat {

/// Non-seed configuration shared by every ensemble member.
struct EnsembleConfig {
    TemperatureField u0;
    SolverParams params;
    BoundaryCondition bc;
    PartitionSpec part;
    DelayModel model;  // model.seed is ignored; members use base_seed + j
    std::size_t k_end = 1;
    std::size_t stride = 1;  // 0 selects the default stride
};

struct EnsembleResult {
    std::vector<std::size_t> steps;                 // recorded step indices
    std::vector<std::vector<double>> norm_series;   // [run][recorded step]
    std::vector<TemperatureField> terminal_fields;  // [run]
    std::vector<double> mean_series;                // per-step mean of norms
    std::vector<double> std_series;                 // per-step population std
    std::vector<std::uint64_t> seeds;               // [run]
};

/// Runs M seeded members (seeds base, base+1, ...), recording the 2-norm at
/// each recorded step. Members execute concurrently when cores allow; the
/// result is independent of the execution order.
EnsembleResult ensemble_run(const EnsembleConfig& cfg, std::size_t runs,
                            std::uint64_t base_seed);

/// Smallest recorded step k with max-abs(snapshot(k) - reference) <= tol,
/// or nullopt when no recorded snapshot is that close.
std::optional<std::size_t> convergence_check(const Trajectory& traj,
                                             const TemperatureField& reference,
                                             double tol);

struct SpreadStats {
    double std_terminal_mean_temp = 0.0;  // periodic drift diagnostic
    double std_terminal_norm = 0.0;       // generic diagnostic
};

/// Population std across runs of the terminal mean temperature and the
/// terminal 2-norm. Requires M >= 2.
SpreadStats terminal_spread(const EnsembleResult& res);

}  // namespace heat
