#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "heat/core.hpp"
#include "heat/rng.hpp"
#include "heat/sync_solver.hpp"

namespace heat {

/// Bounded-staleness model for simulated asynchrony: cross-PE neighbor reads
/// see u(k - d) with d drawn from `distribution` over {0, ..., q-1}, clamped
/// to d <= k so reads never precede step 0.
struct DelayModel {
    enum class Distribution { Uniform, Fixed, GeometricTruncated };

    static DelayModel uniform(std::size_t q, std::uint64_t seed);
    static DelayModel fixed(std::size_t q, std::size_t d, std::uint64_t seed);
    static DelayModel geometric(std::size_t q, double p, std::uint64_t seed);

    std::size_t q = 1;
    Distribution distribution = Distribution::Uniform;
    std::size_t fixed_delay = 0;   // Fixed only; must satisfy d < q
    double geometric_p = 0.5;      // GeometricTruncated only; in (0, 1]
    std::uint64_t seed = 0;
};

/// Ring of the last q states. Depth d reads u(current_step - d).
class HistoryRing {
public:
    HistoryRing(std::size_t depth, std::vector<double> initial);

    /// Appends the state for step current_step() + 1, evicting the oldest.
    void push(std::vector<double> state);

    std::size_t depth() const { return depth_; }
    std::size_t current_step() const { return step_; }
    std::size_t grid_size() const { return grid_size_; }

    /// u_i(current_step - d). Throws std::logic_error when d >= q or d > k.
    double read(std::size_t i, std::size_t d) const;

    /// Whole state at depth d, same contract as read().
    const std::vector<double>& snapshot(std::size_t d) const;

private:
    void check_depth(std::size_t d) const;

    std::size_t depth_;
    std::size_t grid_size_;
    std::size_t step_ = 0;
    std::size_t head_ = 0;       // slot holding the current step
    std::size_t count_ = 1;      // snapshots stored so far, <= depth_
    std::vector<std::vector<double>> slots_;
};

/// One delay draw: d in {0, ..., min(q-1, k)} per the model's distribution.
/// Advances `rng` deterministically.
std::size_t sample_delay(SplitMix64& rng, const DelayModel& model, std::size_t k);

/// One asynchronous step per the stale-read stencil. Draw order is fixed and
/// part of the format: grid points in ascending i, left neighbor before
/// right, and a delay is drawn only for cross-PE neighbors (so single-PE
/// partitions consume no randomness). Dirichlet ends are pinned; periodic
/// ends treat their wrap-around neighbors like any others.
TemperatureField async_step(const HistoryRing& hist, const SolverParams& params,
                            const BoundaryCondition& bc, const PartitionSpec& part,
                            const DelayModel& model, SplitMix64& rng);

/// Incremental driver around async_step; owns the ring and the RNG stream.
class AsyncSimulator {
public:
    AsyncSimulator(const TemperatureField& u0, const SolverParams& params,
                   const BoundaryCondition& bc, const PartitionSpec& part,
                   const DelayModel& model);

    void step();
    std::size_t step_index() const { return ring_.current_step(); }
    const std::vector<double>& current() const { return ring_.snapshot(0); }
    TemperatureField current_field() const {
        return TemperatureField(ring_.snapshot(0));
    }

private:
    SolverParams params_;
    BoundaryCondition bc_;
    PartitionSpec part_;
    DelayModel model_;
    SplitMix64 rng_;
    HistoryRing ring_;
    std::vector<double> scratch_;
};

/// Iterates async_step k_end times; a pure function of all inputs including
/// the model's seed. Recording as in sync_run.
Trajectory async_run(const TemperatureField& u0, const SolverParams& params,
                     const BoundaryCondition& bc, const PartitionSpec& part,
                     const DelayModel& model, std::size_t k_end,
                     std::size_t stride = 1);

}  // namespace heat
