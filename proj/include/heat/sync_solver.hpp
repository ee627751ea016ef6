#pragma once

#include <cstddef>
#include <vector>

#include "heat/core.hpp"

namespace heat {

/// Recorded time evolution. snapshots[j] is the state at step steps[j];
/// snapshots[0] is always the initial condition at step 0.
struct Trajectory {
    std::vector<TemperatureField> snapshots;
    std::vector<std::size_t> steps;
    SolverParams params;
    BoundaryCondition bc;

    const TemperatureField& initial() const { return snapshots.front(); }
    const TemperatureField& final() const { return snapshots.back(); }
};

namespace detail {

/// Core Jacobi update, shared by every solver and executor. `cur` and `next`
/// must be distinct buffers of equal size >= 3.
template <class Real>
void sync_step_into(const std::vector<Real>& cur, std::vector<Real>& next,
                    Real r, const BoundaryCondition& bc) {
    const std::size_t n = cur.size();
    for (std::size_t i = 1; i + 1 < n; ++i)
        next[i] = stencil(cur[i - 1], cur[i], cur[i + 1], r);
    if (bc.is_dirichlet()) {
        next[0] = Real(bc.c1);
        next[n - 1] = Real(bc.c2);
    } else {
        next[0] = stencil(cur[n - 1], cur[0], cur[1], r);
        next[n - 1] = stencil(cur[n - 2], cur[n - 1], cur[0], r);
    }
}

/// Dirichlet requires the end values to match (c1, c2) to this tolerance;
/// the runner then snaps them exactly. Absorbs e.g. cos^2(3*pi/2) != 0 at
/// the last point of the cosine initial condition.
inline constexpr double kDirichletEndTol = 1e-9;

/// Validates u0 against the BC and returns it with Dirichlet ends snapped.
/// Throws std::invalid_argument on mismatch beyond kDirichletEndTol.
std::vector<double> prepare_initial(const TemperatureField& u0,
                                    const BoundaryCondition& bc);

/// Default recording stride: every step up to N = 1000, every 100th above.
inline std::size_t default_stride(std::size_t n_points) {
    return n_points <= 1000 ? 1 : 100;
}

}  // namespace detail

/// One synchronous step: interior per the explicit stencil, ends per the BC,
/// all from step-k values (Jacobi semantics, periodic ends included).
TemperatureField sync_step(const TemperatureField& u, const SolverParams& params,
                           const BoundaryCondition& bc);

/// Applies sync_step k_end times, recording every `stride`-th state plus the
/// final one. stride == 0 selects the default (see detail::default_stride).
Trajectory sync_run(const TemperatureField& u0, const SolverParams& params,
                    const BoundaryCondition& bc, std::size_t k_end,
                    std::size_t stride = 1);

/// Single-precision synchronous run, mirroring float-typed reference code.
/// Snapshots are widened to double for recording.
Trajectory sync_run_f32(const TemperatureField& u0, const SolverParams& params,
                        const BoundaryCondition& bc, std::size_t k_end,
                        std::size_t stride = 1);

/// Post-step NaN/Inf checks in sync_step/async_step. Off by default to keep
/// timing honest; tests and checked CLI runs switch it on.
void set_strict_finite_checks(bool enabled);
bool strict_finite_checks();

/// Thrown by the steppers when strict checks find a non-finite value.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace heat
