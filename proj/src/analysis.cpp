#include "heat/analysis.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace heat {

namespace {

struct MemberOutput {
    std::vector<double> norms;
    std::vector<double> terminal;
};

MemberOutput run_member(const EnsembleConfig& cfg, std::uint64_t seed,
                        const std::vector<std::size_t>& steps) {
    DelayModel model = cfg.model;
    model.seed = seed;
    AsyncSimulator sim(cfg.u0, cfg.params, cfg.bc, cfg.part, model);

    MemberOutput out;
    out.norms.reserve(steps.size());
    std::size_t next_record = 0;
    if (next_record < steps.size() && steps[next_record] == 0) {
        out.norms.push_back(l2_norm(sim.current()));
        ++next_record;
    }
    for (std::size_t k = 0; k < cfg.k_end; ++k) {
        sim.step();
        if (next_record < steps.size() && steps[next_record] == k + 1) {
            out.norms.push_back(l2_norm(sim.current()));
            ++next_record;
        }
    }
    out.terminal = sim.current();
    return out;
}

double population_std(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    return std::sqrt(var / double(xs.size()));
}

}  // namespace

EnsembleResult ensemble_run(const EnsembleConfig& cfg, std::size_t runs,
                            std::uint64_t base_seed) {
    if (runs == 0) throw std::domain_error("ensemble_run: M >= 1 required");
    std::size_t stride =
        cfg.stride == 0 ? detail::default_stride(cfg.u0.size()) : cfg.stride;

    EnsembleResult res;
    res.steps.push_back(0);
    for (std::size_t k = stride; k < cfg.k_end; k += stride) res.steps.push_back(k);
    if (cfg.k_end > 0 && res.steps.back() != cfg.k_end)
        res.steps.push_back(cfg.k_end);

    res.norm_series.resize(runs);
    res.terminal_fields.reserve(runs);
    res.seeds.resize(runs);
    for (std::size_t j = 0; j < runs; ++j) res.seeds[j] = base_seed + j;

    std::vector<std::vector<double>> terminals(runs);
    const std::size_t n_threads =
        std::min<std::size_t>(runs, std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            std::size_t j = next.fetch_add(1);
            if (j >= runs) return;
            MemberOutput out = run_member(cfg, res.seeds[j], res.steps);
            res.norm_series[j] = std::move(out.norms);
            terminals[j] = std::move(out.terminal);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t + 1 < n_threads; ++t) pool.emplace_back(drain);
        drain();
    }
    for (auto& t : terminals) res.terminal_fields.emplace_back(std::move(t));

    const std::size_t n_steps = res.steps.size();
    res.mean_series.assign(n_steps, 0.0);
    res.std_series.assign(n_steps, 0.0);
    for (std::size_t s = 0; s < n_steps; ++s) {
        double mean = 0.0;
        for (std::size_t j = 0; j < runs; ++j) mean += res.norm_series[j][s];
        mean /= double(runs);
        double var = 0.0;
        for (std::size_t j = 0; j < runs; ++j) {
            double d = res.norm_series[j][s] - mean;
            var += d * d;
        }
        res.mean_series[s] = mean;
        res.std_series[s] = std::sqrt(var / double(runs));
    }
    return res;
}

std::optional<std::size_t> convergence_check(const Trajectory& traj,
                                             const TemperatureField& reference,
                                             double tol) {
    if (!(tol > 0.0)) throw std::domain_error("convergence_check: tol > 0 required");
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        const auto& snap = traj.snapshots[s];
        if (snap.size() != reference.size())
            throw std::invalid_argument("convergence_check: size mismatch");
        double max_abs = 0.0;
        for (std::size_t i = 0; i < snap.size(); ++i)
            max_abs = std::max(max_abs, std::abs(snap[i] - reference[i]));
        if (max_abs <= tol) return traj.steps[s];
    }
    return std::nullopt;
}

SpreadStats terminal_spread(const EnsembleResult& res) {
    const std::size_t runs = res.terminal_fields.size();
    if (runs < 2) throw std::domain_error("terminal_spread: M >= 2 required");
    std::vector<double> mean_temps(runs), norms(runs);
    for (std::size_t j = 0; j < runs; ++j) {
        const auto& f = res.terminal_fields[j];
        mean_temps[j] = total_heat(f) / double(f.size());
        norms[j] = l2_norm(f);
    }
    return SpreadStats{population_std(mean_temps), population_std(norms)};
}

}  // namespace heat
