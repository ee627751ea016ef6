#include "heat/core.hpp"

#include <numbers>

namespace heat {

double derive_r(double alpha, double dt, double dx) {
    if (!(alpha > 0.0) || !(dt > 0.0) || !(dx > 0.0))
        throw std::domain_error("derive_r: alpha, dt, dx must all be positive");
    return alpha * dt / (dx * dx);
}

SolverParams SolverParams::checked(double alpha, double dt, double dx) {
    double r = derive_r(alpha, dt, dx);
    if (!(r > 0.0) || r > 0.5)
        throw std::domain_error("SolverParams: r = alpha*dt/dx^2 must lie in (0, 0.5]");
    return SolverParams(alpha, dt, dx);
}

SolverParams SolverParams::unchecked(double alpha, double dt, double dx) {
    derive_r(alpha, dt, dx);  // still requires positive inputs
    return SolverParams(alpha, dt, dx);
}

SolverParams SolverParams::from_r(double r, bool allow_unstable) {
    return allow_unstable ? unchecked(r, 1.0, 1.0) : checked(r, 1.0, 1.0);
}

TemperatureField cosine_init(std::size_t n_points) {
    if (n_points < 3)
        throw std::domain_error("cosine_init: N >= 3 required");
    std::vector<double> v(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        double c = std::cos(3.0 * std::numbers::pi / 2.0 * double(i) /
                            double(n_points - 1));
        v[i] = c * c;
    }
    return TemperatureField(std::move(v));
}

TemperatureField linear_steady_state(std::size_t n_points, double c1, double c2) {
    if (n_points < 3)
        throw std::domain_error("linear_steady_state: N >= 3 required");
    std::vector<double> v(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        v[i] = c1 + (c2 - c1) * double(i) / double(n_points - 1);
    return TemperatureField(std::move(v));
}

double l2_norm(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return std::sqrt(sum);
}

double l2_norm(const TemperatureField& u) { return l2_norm(u.span()); }

double total_heat(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
}

double total_heat(const TemperatureField& u) { return total_heat(u.span()); }

PartitionSpec::PartitionSpec(std::size_t total_points, std::size_t points_per_pe)
    : total_(total_points), per_pe_(points_per_pe) {
    if (total_ < 3)
        throw std::domain_error("PartitionSpec: N >= 3 required");
    if (per_pe_ == 0 || total_ % per_pe_ != 0)
        throw std::domain_error("PartitionSpec: n must divide N");
}

}  // namespace heat
