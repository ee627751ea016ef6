#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace heat {

/// Explicit-scheme parameters. The diffusion number r = alpha*dt/dx^2 is
/// always derived from its inputs, never stored separately.
class SolverParams {
public:
    /// Throws std::domain_error unless 0 < r <= 0.5.
    static SolverParams checked(double alpha, double dt, double dx);

    /// No stability window check. For divergence demonstrations only.
    static SolverParams unchecked(double alpha, double dt, double dx);

    /// Convenience: params with the given diffusion number (alpha=r, dt=dx=1).
    static SolverParams from_r(double r, bool allow_unstable = false);

    double alpha() const { return alpha_; }
    double dt() const { return dt_; }
    double dx() const { return dx_; }
    double r() const { return alpha_ * dt_ / (dx_ * dx_); }

private:
    SolverParams(double alpha, double dt, double dx)
        : alpha_(alpha), dt_(dt), dx_(dx) {}
    double alpha_;
    double dt_;
    double dx_;
};

/// r = alpha*dt/dx^2. Throws std::domain_error on non-positive input.
double derive_r(double alpha, double dt, double dx);

/// Temperature state over N grid points, 0-based indexing.
/// Invariants: N >= 3, all values finite.
template <class Real>
class BasicField {
public:
    explicit BasicField(std::vector<Real> values) : values_(std::move(values)) {
        if (values_.size() < 3)
            throw std::domain_error("TemperatureField requires N >= 3");
        for (Real v : values_)
            if (!std::isfinite(v))
                throw std::domain_error("TemperatureField values must be finite");
    }

    std::size_t size() const { return values_.size(); }
    Real operator[](std::size_t i) const { return values_[i]; }
    const std::vector<Real>& values() const { return values_; }
    std::span<const Real> span() const { return values_; }

    bool operator==(const BasicField&) const = default;

private:
    std::vector<Real> values_;
};

using TemperatureField = BasicField<double>;

/// Boundary condition: Dirichlet pins the end points to (c1, c2); Periodic
/// closes the domain into a ring.
struct BoundaryCondition {
    enum class Kind { Dirichlet, Periodic };

    static BoundaryCondition dirichlet(double c1, double c2) {
        return {Kind::Dirichlet, c1, c2};
    }
    static BoundaryCondition periodic() { return {Kind::Periodic, 0.0, 0.0}; }

    bool is_dirichlet() const { return kind == Kind::Dirichlet; }

    Kind kind = Kind::Dirichlet;
    double c1 = 0.0;
    double c2 = 0.0;
};

/// Contiguous partition of N grid points into P = N/n processing elements.
/// Grid point i belongs to PE i/n.
class PartitionSpec {
public:
    PartitionSpec(std::size_t total_points, std::size_t points_per_pe);

    std::size_t total() const { return total_; }
    std::size_t per_pe() const { return per_pe_; }
    std::size_t pe_count() const { return total_ / per_pe_; }
    std::size_t pe_of(std::size_t i) const { return i / per_pe_; }

    /// True when i and j belong to different PEs.
    bool crosses(std::size_t i, std::size_t j) const {
        return pe_of(i) != pe_of(j);
    }

private:
    std::size_t total_;
    std::size_t per_pe_;
};

/// One explicit-Euler stencil evaluation. Every solver in this project uses
/// this exact expression so that results are bit-comparable across them.
template <class Real>
inline Real stencil(Real left, Real self, Real right, Real r) {
    return r * right + (Real(1) - Real(2) * r) * self + r * left;
}

/// values[i] = cos^2(3*pi*i / (2*(N-1))). N >= 3.
TemperatureField cosine_init(std::size_t n_points);

/// Discrete Dirichlet steady state: the linear interpolant c1 -> c2.
TemperatureField linear_steady_state(std::size_t n_points, double c1, double c2);

/// sqrt(sum of squares).
double l2_norm(const TemperatureField& u);
double l2_norm(std::span<const double> values);

/// Sum of all values; conserved by the periodic synchronous step.
double total_heat(const TemperatureField& u);
double total_heat(std::span<const double> values);

}  // namespace heat
