#include "heat/async_sim.hpp"

#include <cmath>

namespace heat {

DelayModel DelayModel::uniform(std::size_t q, std::uint64_t seed) {
    if (q == 0) throw std::domain_error("DelayModel: q >= 1 required");
    return {q, Distribution::Uniform, 0, 0.5, seed};
}

DelayModel DelayModel::fixed(std::size_t q, std::size_t d, std::uint64_t seed) {
    if (q == 0) throw std::domain_error("DelayModel: q >= 1 required");
    if (d >= q) throw std::domain_error("DelayModel: fixed delay must satisfy d < q");
    return {q, Distribution::Fixed, d, 0.5, seed};
}

DelayModel DelayModel::geometric(std::size_t q, double p, std::uint64_t seed) {
    if (q == 0) throw std::domain_error("DelayModel: q >= 1 required");
    if (!(p > 0.0) || p > 1.0)
        throw std::domain_error("DelayModel: geometric p must lie in (0, 1]");
    return {q, Distribution::GeometricTruncated, 0, p, seed};
}

HistoryRing::HistoryRing(std::size_t depth, std::vector<double> initial)
    : depth_(depth), grid_size_(initial.size()) {
    if (depth_ == 0) throw std::domain_error("HistoryRing: depth >= 1 required");
    if (grid_size_ < 3) throw std::domain_error("HistoryRing: N >= 3 required");
    slots_.resize(depth_);
    slots_[0] = std::move(initial);
}

void HistoryRing::push(std::vector<double> state) {
    if (state.size() != grid_size_)
        throw std::logic_error("HistoryRing: state size mismatch");
    head_ = (head_ + 1) % depth_;
    slots_[head_] = std::move(state);
    ++step_;
    if (count_ < depth_) ++count_;
}

void HistoryRing::check_depth(std::size_t d) const {
    if (d >= depth_ || d > step_ || d >= count_)
        throw std::logic_error("HistoryRing: read depth out of range");
}

double HistoryRing::read(std::size_t i, std::size_t d) const {
    check_depth(d);
    return slots_[(head_ + depth_ - d) % depth_][i];
}

const std::vector<double>& HistoryRing::snapshot(std::size_t d) const {
    check_depth(d);
    return slots_[(head_ + depth_ - d) % depth_];
}

std::size_t sample_delay(SplitMix64& rng, const DelayModel& model, std::size_t k) {
    const std::size_t bound = std::min(model.q - 1, k);
    switch (model.distribution) {
        case DelayModel::Distribution::Uniform:
            return std::size_t(rng.next_bounded(bound));
        case DelayModel::Distribution::Fixed:
            rng.next();  // keep the stream in lockstep across distributions
            return std::min(model.fixed_delay, bound);
        case DelayModel::Distribution::GeometricTruncated: {
            double u = rng.next_double();
            double g = std::floor(std::log1p(-u) / std::log1p(-model.geometric_p));
            if (!std::isfinite(g) || g < 0.0) g = 0.0;
            return std::min(std::size_t(g), bound);
        }
    }
    throw std::logic_error("sample_delay: unknown distribution");
}

namespace {

void async_step_into(const HistoryRing& hist, double r,
                     const BoundaryCondition& bc, const PartitionSpec& part,
                     const DelayModel& model, SplitMix64& rng,
                     std::vector<double>& out) {
    const std::size_t n = hist.grid_size();
    const std::size_t k = hist.current_step();
    const std::vector<double>& cur = hist.snapshot(0);
    const bool dirichlet = bc.is_dirichlet();

    auto neighbor = [&](std::size_t self, std::size_t other) {
        if (!part.crosses(self, other)) return cur[other];
        return hist.read(other, sample_delay(rng, model, k));
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (dirichlet && (i == 0 || i == n - 1)) {
            out[i] = (i == 0) ? bc.c1 : bc.c2;
            continue;
        }
        const std::size_t li = (i == 0) ? n - 1 : i - 1;
        const std::size_t ri = (i == n - 1) ? 0 : i + 1;
        const double left = neighbor(i, li);
        const double right = neighbor(i, ri);
        out[i] = stencil(left, cur[i], right, r);
    }
    if (strict_finite_checks())
        for (double v : out)
            if (!std::isfinite(v))
                throw DivergenceError("non-finite value produced by async step");
}

}  // namespace

TemperatureField async_step(const HistoryRing& hist, const SolverParams& params,
                            const BoundaryCondition& bc, const PartitionSpec& part,
                            const DelayModel& model, SplitMix64& rng) {
    if (part.total() != hist.grid_size())
        throw std::invalid_argument("async_step: partition inconsistent with grid");
    std::vector<double> out(hist.grid_size());
    async_step_into(hist, params.r(), bc, part, model, rng, out);
    return TemperatureField(std::move(out));
}

AsyncSimulator::AsyncSimulator(const TemperatureField& u0,
                               const SolverParams& params,
                               const BoundaryCondition& bc,
                               const PartitionSpec& part, const DelayModel& model)
    : params_(params),
      bc_(bc),
      part_(part),
      model_(model),
      rng_(model.seed),
      ring_(model.q, detail::prepare_initial(u0, bc)),
      scratch_(u0.size()) {
    if (part.total() != u0.size())
        throw std::invalid_argument("AsyncSimulator: partition inconsistent with grid");
    if (model.q == 0) throw std::domain_error("AsyncSimulator: q >= 1 required");
}

void AsyncSimulator::step() {
    async_step_into(ring_, params_.r(), bc_, part_, model_, rng_, scratch_);
    ring_.push(scratch_);
    scratch_.resize(ring_.grid_size());
}

Trajectory async_run(const TemperatureField& u0, const SolverParams& params,
                     const BoundaryCondition& bc, const PartitionSpec& part,
                     const DelayModel& model, std::size_t k_end,
                     std::size_t stride) {
    if (stride == 0) stride = detail::default_stride(u0.size());
    AsyncSimulator sim(u0, params, bc, part, model);

    Trajectory traj{{}, {}, params, bc};
    traj.snapshots.emplace_back(sim.current());
    traj.steps.push_back(0);
    for (std::size_t k = 0; k < k_end; ++k) {
        sim.step();
        if ((k + 1) % stride == 0 || k + 1 == k_end) {
            traj.snapshots.emplace_back(sim.current());
            traj.steps.push_back(k + 1);
        }
    }
    return traj;
}

}  // namespace heat
