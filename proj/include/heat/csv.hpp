#pragma once

#include <string>
#include <vector>

#include "heat/analysis.hpp"
#include "heat/async_exec.hpp"
#include "heat/sync_solver.hpp"

namespace heat {

/// All emitters write UTF-8 with LF line endings and render floats with 17
/// significant digits, so parsed doubles round-trip bit-exactly.

/// %.17g rendering used by every emitter.
std::string format_double(double v);

/// Schema: header "k,i,u", one row per recorded (step, grid point).
void emit_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Steps and snapshots recovered from emit_trajectory_csv output.
struct TrajectoryData {
    std::vector<std::size_t> steps;
    std::vector<std::vector<double>> snapshots;
};
TrajectoryData read_trajectory_csv(const std::string& path);

/// Schemas: runs file "k,run,norm2"; stats file "k,mean,std".
void emit_ensemble_csv(const EnsembleResult& res, const std::string& runs_path,
                       const std::string& stats_path);

/// Schema: "N,mode,reps,median_ns,min_ns".
void emit_bench_csv(const std::vector<BenchRow>& rows, const std::string& path);

}  // namespace heat
