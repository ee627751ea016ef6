#include "heat/async_exec.hpp"

#include <algorithm>
#include <barrier>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace heat {

std::string to_string(ExecMode mode) {
    return mode == ExecMode::Barriered ? "barriered" : "barrier-free";
}

void LagStats::merge(const LagStats& other) {
    if (other.reads == 0) return;
    if (reads == 0) {
        *this = other;
        return;
    }
    min_lag = std::min(min_lag, other.min_lag);
    max_lag = std::max(max_lag, other.max_lag);
    reads += other.reads;
    if (histogram.size() < other.histogram.size())
        histogram.resize(other.histogram.size(), 0);
    for (std::size_t i = 0; i < other.histogram.size(); ++i)
        histogram[i] += other.histogram[i];
    overflow += other.overflow;
}

double LagStats::mean() const {
    if (reads == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t d = 0; d < histogram.size(); ++d)
        sum += double(d) * double(histogram[d]);
    return sum / double(reads);  // overflow reads excluded from the mean
}

namespace {

constexpr std::size_t kLagHistogramSize = 64;

struct WorkerError {
    std::mutex mutex;
    std::exception_ptr first;

    void capture() {
        std::lock_guard lock(mutex);
        if (!first) first = std::current_exception();
    }
    void rethrow_if_set() {
        if (first) std::rethrow_exception(first);
    }
};

ExecResult run_barriered(std::vector<double> u0, double r,
                         const BoundaryCondition& bc, const PartitionSpec& part,
                         const ExecConfig& cfg) {
    const std::size_t n_total = u0.size();
    const std::size_t per_pe = part.per_pe();
    const std::size_t workers = cfg.workers;

    std::vector<double> a = std::move(u0);
    std::vector<double> b(n_total);
    std::vector<double>* cur = &a;
    std::vector<double>* next = &b;

    std::barrier barrier(std::ptrdiff_t(workers),
                         [&]() noexcept { std::swap(cur, next); });

    WorkerError error;
    auto worker = [&](std::size_t w) {
        try {
            const std::size_t lo = w * per_pe;
            const std::size_t hi = lo + per_pe;
            for (std::size_t k = 0; k < cfg.k_end; ++k) {
                const std::vector<double>& c = *cur;
                std::vector<double>& nx = *next;
                for (std::size_t i = lo; i < hi; ++i) {
                    if (i == 0) {
                        nx[0] = bc.is_dirichlet()
                                    ? bc.c1
                                    : stencil(c[n_total - 1], c[0], c[1], r);
                    } else if (i == n_total - 1) {
                        nx[i] = bc.is_dirichlet()
                                    ? bc.c2
                                    : stencil(c[i - 1], c[i], c[0], r);
                    } else {
                        nx[i] = stencil(c[i - 1], c[i], c[i + 1], r);
                    }
                }
                barrier.arrive_and_wait();
            }
        } catch (...) {
            error.capture();
            barrier.arrive_and_drop();  // let peers finish without us
        }
    };

    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker, w);
    threads.clear();  // join
    auto t1 = std::chrono::steady_clock::now();

    error.rethrow_if_set();
    return ExecResult{TemperatureField(*cur),
                      std::vector<std::size_t>(workers, cfg.k_end),
                      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0),
                      workers > std::thread::hardware_concurrency(),
                      std::nullopt};
}

/// Value-only slot for timing runs; the tagged variant drives lag stats.
struct PlainSlot {
    std::atomic<double> value{0.0};

    void publish(double v, std::uint64_t) {
        value.store(v, std::memory_order_release);
    }
    double consume(const std::atomic<std::uint64_t>&, std::uint64_t,
                   LagStats*) const {
        return value.load(std::memory_order_acquire);
    }
};

struct TaggedSlot {
    Mailbox box;

    void publish(double v, std::uint64_t gen) { box.store(v, gen); }
    double consume(const std::atomic<std::uint64_t>& writer_progress,
                   std::uint64_t /*reader_step*/, LagStats* stats) const {
        Mailbox::Slot s = box.load();
        // progress is published before the slot, so this never underflows
        std::uint64_t progress = writer_progress.load(std::memory_order_acquire);
        std::uint64_t lag = progress - s.generation;
        if (stats) {
            if (stats->reads == 0) {
                stats->min_lag = stats->max_lag = lag;
                stats->histogram.assign(kLagHistogramSize, 0);
            }
            ++stats->reads;
            stats->min_lag = std::min(stats->min_lag, lag);
            stats->max_lag = std::max(stats->max_lag, lag);
            if (lag < stats->histogram.size())
                ++stats->histogram[lag];
            else
                ++stats->overflow;
        }
        return s.value;
    }
};

template <class Slot>
ExecResult run_barrier_free(std::vector<double> u0, double r,
                            const BoundaryCondition& bc,
                            const PartitionSpec& part, const ExecConfig& cfg) {
    const std::size_t n_total = u0.size();
    const std::size_t per_pe = part.per_pe();
    const std::size_t workers = cfg.workers;

    // slots[2w] holds PE w's left edge u[lo], slots[2w+1] its right edge.
    std::vector<Slot> slots(2 * workers);
    std::vector<std::atomic<std::uint64_t>> progress(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        progress[w].store(0, std::memory_order_relaxed);
        slots[2 * w].publish(u0[w * per_pe], 0);
        slots[2 * w + 1].publish(u0[w * per_pe + per_pe - 1], 0);
    }

    std::vector<std::vector<double>> final_slices(workers);
    std::vector<LagStats> lag(workers);
    WorkerError error;

    // With more workers than hardware threads the OS would otherwise run each
    // worker to completion in huge slices, serializing the PEs. Yielding keeps
    // them interleaved; it is not a barrier (nobody waits for a peer's data).
    // Never active when P <= cores, so timing runs are unaffected.
    const bool oversubscribed = workers > std::thread::hardware_concurrency();

    auto worker = [&](std::size_t w) {
        try {
            const std::size_t lo = w * per_pe;
            LagStats* stats = cfg.record_lag ? &lag[w] : nullptr;
            // local state with one ghost cell on each side
            std::vector<double> cur(per_pe + 2), next(per_pe + 2);
            for (std::size_t j = 0; j < per_pe; ++j) cur[j + 1] = u0[lo + j];

            const std::size_t left_pe = (w + workers - 1) % workers;
            const std::size_t right_pe = (w + 1) % workers;

            for (std::size_t k = 0; k < cfg.k_end; ++k) {
                // fetch cross-PE edge values once per step
                if (w > 0 || !bc.is_dirichlet()) {
                    cur[0] = (workers == 1)
                                 ? cur[per_pe]  // periodic wrap within this PE
                                 : slots[2 * left_pe + 1].consume(
                                       progress[left_pe], k, stats);
                }
                if (w + 1 < workers || !bc.is_dirichlet()) {
                    cur[per_pe + 1] =
                        (workers == 1)
                            ? cur[1]
                            : slots[2 * right_pe].consume(progress[right_pe], k,
                                                          stats);
                }

                for (std::size_t j = 1; j <= per_pe; ++j) {
                    const std::size_t g = lo + j - 1;
                    if (bc.is_dirichlet() && g == 0)
                        next[j] = bc.c1;
                    else if (bc.is_dirichlet() && g == n_total - 1)
                        next[j] = bc.c2;
                    else
                        next[j] = stencil(cur[j - 1], cur[j], cur[j + 1], r);
                }

                progress[w].store(k + 1, std::memory_order_release);
                slots[2 * w].publish(next[1], k + 1);
                slots[2 * w + 1].publish(next[per_pe], k + 1);
                cur.swap(next);
                if (oversubscribed && (k & 0x3f) == 0) std::this_thread::yield();
            }
            cur.erase(cur.begin());
            cur.pop_back();
            final_slices[w] = std::move(cur);
        } catch (...) {
            error.capture();
        }
    };

    auto t0 = std::chrono::steady_clock::now();
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(worker, w);
    }
    auto t1 = std::chrono::steady_clock::now();

    error.rethrow_if_set();
    std::vector<double> assembled;
    assembled.reserve(n_total);
    for (auto& slice : final_slices)
        assembled.insert(assembled.end(), slice.begin(), slice.end());

    ExecResult res{TemperatureField(std::move(assembled)),
                   std::vector<std::size_t>(workers, cfg.k_end),
                   std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0),
                   workers > std::thread::hardware_concurrency(),
                   std::nullopt};
    if (cfg.record_lag) {
        LagStats merged;
        for (const auto& s : lag) merged.merge(s);
        res.lag = merged;
    }
    return res;
}

}  // namespace

ExecResult exec_run(const TemperatureField& u0, const SolverParams& params,
                    const BoundaryCondition& bc, const PartitionSpec& part,
                    const ExecConfig& cfg) {
    if (cfg.workers == 0 || cfg.workers != part.pe_count())
        throw std::invalid_argument("exec_run: cfg.workers must equal part.P");
    if (cfg.k_end == 0) throw std::invalid_argument("exec_run: k_end >= 1 required");
    if (part.total() != u0.size())
        throw std::invalid_argument("exec_run: partition inconsistent with grid");

    std::vector<double> start = detail::prepare_initial(u0, bc);
    const double r = params.r();
    if (cfg.mode == ExecMode::Barriered)
        return run_barriered(std::move(start), r, bc, part, cfg);
    if (cfg.record_lag)
        return run_barrier_free<TaggedSlot>(std::move(start), r, bc, part, cfg);
    return run_barrier_free<PlainSlot>(std::move(start), r, bc, part, cfg);
}

std::vector<BenchRow> measure(const std::vector<std::size_t>& grid_sizes,
                              const std::vector<ExecMode>& modes,
                              std::size_t reps, std::size_t k_end,
                              std::size_t workers) {
    if (reps < 3) throw std::invalid_argument("measure: reps >= 3 required");
    std::vector<BenchRow> rows;
    for (std::size_t n : grid_sizes) {
        if (n % workers != 0)
            throw std::invalid_argument("measure: workers must divide every N");
        TemperatureField u0 = cosine_init(n);
        SolverParams params = SolverParams::from_r(0.5);
        BoundaryCondition bc = BoundaryCondition::dirichlet(1.0, 0.0);
        PartitionSpec part(n, n / workers);
        for (ExecMode mode : modes) {
            ExecConfig cfg{workers, k_end, mode, false};
            std::vector<std::uint64_t> times;
            times.reserve(reps);
            for (std::size_t rep = 0; rep < reps; ++rep) {
                ExecResult res = exec_run(u0, params, bc, part, cfg);
                times.push_back(std::uint64_t(res.duration.count()));
            }
            std::sort(times.begin(), times.end());
            rows.push_back(BenchRow{n, mode, reps, times[times.size() / 2],
                                    times.front()});
        }
    }
    return rows;
}

double speedup_ratio(const std::vector<BenchRow>& rows, std::size_t n_points) {
    std::uint64_t barriered = 0, free_running = 0;
    for (const auto& row : rows) {
        if (row.n_points != n_points) continue;
        if (row.mode == ExecMode::Barriered) barriered = row.median_ns;
        else free_running = row.median_ns;
    }
    if (barriered == 0 || free_running == 0)
        throw std::invalid_argument("speedup_ratio: missing mode for this N");
    return double(barriered) / double(free_running);
}

}  // namespace heat
