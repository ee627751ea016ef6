#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heat/core.hpp"
#include "heat/sync_solver.hpp"

namespace heat {

enum class ExecMode { Barriered, BarrierFree };

std::string to_string(ExecMode mode);

/// Latest-value slot shared between adjacent PEs. A load returns some value
/// previously stored, never a torn or uninitialized one; stores are
/// last-write-wins. The generation tag travels atomically with the value
/// (single 16-byte atomic), so tag/value consistency is checkable.
class Mailbox {
public:
    struct Slot {
        double value = 0.0;
        std::uint64_t generation = 0;
    };

    void store(double value, std::uint64_t generation) {
        slot_.store({value, generation}, std::memory_order_release);
    }
    Slot load() const { return slot_.load(std::memory_order_acquire); }

private:
    std::atomic<Slot> slot_{Slot{}};
};

/// Per-read staleness of barrier-free mailbox reads: how many steps the
/// consumed value lagged the writer's published progress at read time.
/// Always >= 0 by construction (progress is published before the slot).
struct LagStats {
    std::uint64_t reads = 0;
    std::uint64_t min_lag = 0;
    std::uint64_t max_lag = 0;
    std::vector<std::uint64_t> histogram;  // histogram[d] = reads with lag d
    std::uint64_t overflow = 0;            // reads with lag >= histogram.size()

    void merge(const LagStats& other);
    double mean() const;
};

struct ExecConfig {
    std::size_t workers = 1;
    std::size_t k_end = 1;
    ExecMode mode = ExecMode::Barriered;
    bool record_lag = false;  // tagged mailbox reads; leave off when timing
};

struct ExecResult {
    TemperatureField field;
    std::vector<std::size_t> steps_per_pe;
    std::chrono::nanoseconds duration{0};
    bool oversubscribed = false;  // workers > hardware threads
    std::optional<LagStats> lag;  // present when cfg.record_lag
};

/// Runs P workers over the partition. Barriered: a full barrier each step,
/// bit-identical to sync_run. BarrierFree: each worker free-runs its k_end
/// local steps, reading neighbor edge values from mailboxes as it goes.
/// A worker failure aborts the run with the worker's diagnostic.
ExecResult exec_run(const TemperatureField& u0, const SolverParams& params,
                    const BoundaryCondition& bc, const PartitionSpec& part,
                    const ExecConfig& cfg);

struct BenchRow {
    std::size_t n_points = 0;
    ExecMode mode = ExecMode::Barriered;
    std::size_t reps = 0;
    std::uint64_t median_ns = 0;
    std::uint64_t min_ns = 0;
};

/// Timing sweep over grid sizes and modes with the §-style defaults
/// (cosine initial condition, Dirichlet(1, 0), r = 0.5, k_end steps).
/// Requires reps >= 3. Rows are ordered size-major, mode order as given.
std::vector<BenchRow> measure(const std::vector<std::size_t>& grid_sizes,
                              const std::vector<ExecMode>& modes,
                              std::size_t reps, std::size_t k_end,
                              std::size_t workers);

/// barrier-free median / barriered median for one grid size, from rows
/// produced by measure(). Throws if either mode is missing.
double speedup_ratio(const std::vector<BenchRow>& rows, std::size_t n_points);

}  // namespace heat
