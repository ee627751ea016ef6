#include "heat/sync_solver.hpp"

#include <atomic>
#include <cmath>

namespace heat {

namespace {
std::atomic<bool> g_strict_checks{false};

template <class Real>
void check_finite(const std::vector<Real>& v) {
    if (!strict_finite_checks()) return;
    for (Real x : v)
        if (!std::isfinite(x))
            throw DivergenceError("non-finite value produced by step");
}
}  // namespace

void set_strict_finite_checks(bool enabled) { g_strict_checks = enabled; }
bool strict_finite_checks() { return g_strict_checks; }

namespace detail {

std::vector<double> prepare_initial(const TemperatureField& u0,
                                    const BoundaryCondition& bc) {
    std::vector<double> v = u0.values();
    if (bc.is_dirichlet()) {
        if (std::abs(v.front() - bc.c1) > kDirichletEndTol ||
            std::abs(v.back() - bc.c2) > kDirichletEndTol)
            throw std::invalid_argument(
                "Dirichlet BC inconsistent with initial end values");
        v.front() = bc.c1;
        v.back() = bc.c2;
    }
    return v;
}

}  // namespace detail

TemperatureField sync_step(const TemperatureField& u, const SolverParams& params,
                           const BoundaryCondition& bc) {
    std::vector<double> cur = detail::prepare_initial(u, bc);
    std::vector<double> next(cur.size());
    detail::sync_step_into(cur, next, params.r(), bc);
    check_finite(next);
    return TemperatureField(std::move(next));
}

namespace {

template <class Real>
Trajectory run_impl(const TemperatureField& u0, const SolverParams& params,
                    const BoundaryCondition& bc, std::size_t k_end,
                    std::size_t stride) {
    if (stride == 0) stride = detail::default_stride(u0.size());
    std::vector<double> start = detail::prepare_initial(u0, bc);

    std::vector<Real> cur(start.begin(), start.end());
    std::vector<Real> next(cur.size());
    const Real r = Real(params.r());

    Trajectory traj{{}, {}, params, bc};
    auto record = [&](const std::vector<Real>& v, std::size_t k) {
        traj.snapshots.emplace_back(std::vector<double>(v.begin(), v.end()));
        traj.steps.push_back(k);
    };
    record(cur, 0);

    for (std::size_t k = 0; k < k_end; ++k) {
        detail::sync_step_into(cur, next, r, bc);
        check_finite(next);
        cur.swap(next);
        if ((k + 1) % stride == 0 || k + 1 == k_end) record(cur, k + 1);
    }
    return traj;
}

}  // namespace

Trajectory sync_run(const TemperatureField& u0, const SolverParams& params,
                    const BoundaryCondition& bc, std::size_t k_end,
                    std::size_t stride) {
    return run_impl<double>(u0, params, bc, k_end, stride);
}

Trajectory sync_run_f32(const TemperatureField& u0, const SolverParams& params,
                        const BoundaryCondition& bc, std::size_t k_end,
                        std::size_t stride) {
    return run_impl<float>(u0, params, bc, k_end, stride);
}

}  // namespace heat
