#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "heat/analysis.hpp"
#include "heat/async_exec.hpp"
#include "heat/async_sim.hpp"
#include "heat/config.hpp"
#include "heat/csv.hpp"
#include "heat/svg.hpp"
#include "heat/sync_solver.hpp"

namespace {

namespace fs = std::filesystem;
using namespace heat;

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitDivergence = 4;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--set", args.sets, "override a config key (key=value)");
    cmd->add_option("--out", args.out_dir, "output directory");
}

RunConfig load_config(const CommonArgs& args) {
    std::string text;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in) throw IoError("cannot open config file: " + args.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::optional<std::string> env_seed;
    if (const char* s = std::getenv("HEAT_SEED")) env_seed = s;
    RunConfig cfg = parse_config(text, args.sets, env_seed);
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.out_dir);
    return (fs::path(cfg.out_dir) / name).string();
}

void check_finite_or_throw(const TemperatureField& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i]))
            throw DivergenceError("non-finite value in final field");
}

std::size_t effective_workers(const RunConfig& cfg) {
    return cfg.workers != 0 ? cfg.workers
                            : cfg.grid_points / cfg.points_per_pe;
}

int cmd_run(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    SolverParams params = make_params(cfg);
    BoundaryCondition bc = make_boundary(cfg);
    TemperatureField u0 = make_initial(cfg);

    set_strict_finite_checks(!cfg.allow_unstable);
    std::string traj_path = out_path(cfg, "trajectory.csv");

    switch (cfg.mode) {
        case RunMode::Sync: {
            Trajectory traj =
                cfg.precision == Precision::Single
                    ? sync_run_f32(u0, params, bc, cfg.k_end, cfg.record_stride)
                    : sync_run(u0, params, bc, cfg.k_end, cfg.record_stride);
            check_finite_or_throw(traj.final());
            emit_trajectory_csv(traj, traj_path);
            std::cout << "mode=sync k_end=" << cfg.k_end
                      << " final_norm2=" << format_double(l2_norm(traj.final()))
                      << "\nwrote " << traj_path << "\n";
            break;
        }
        case RunMode::AsyncSim: {
            Trajectory traj = async_run(u0, params, bc, make_partition(cfg),
                                        make_delay_model(cfg), cfg.k_end,
                                        cfg.record_stride);
            check_finite_or_throw(traj.final());
            emit_trajectory_csv(traj, traj_path);
            std::cout << "mode=async-sim seed=" << cfg.seed
                      << " k_end=" << cfg.k_end
                      << " final_norm2=" << format_double(l2_norm(traj.final()))
                      << "\nwrote " << traj_path << "\n";
            break;
        }
        case RunMode::ExecBarriered:
        case RunMode::ExecFree: {
            PartitionSpec part = make_partition(cfg);
            ExecConfig ec{part.pe_count(), cfg.k_end,
                          cfg.mode == RunMode::ExecBarriered
                              ? ExecMode::Barriered
                              : ExecMode::BarrierFree,
                          false};
            ExecResult res = exec_run(u0, params, bc, part, ec);
            check_finite_or_throw(res.field);
            Trajectory traj{{res.field}, {cfg.k_end}, params, bc};
            emit_trajectory_csv(traj, traj_path);
            if (res.oversubscribed)
                std::cerr << "note: " << ec.workers
                          << " workers exceed hardware threads\n";
            std::cout << "mode=" << to_string(ec.mode)
                      << " workers=" << ec.workers << " k_end=" << cfg.k_end
                      << " wall_ns=" << res.duration.count()
                      << " final_norm2=" << format_double(l2_norm(res.field))
                      << "\nwrote " << traj_path << "\n";
            break;
        }
    }
    return 0;
}

int cmd_ensemble(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    set_strict_finite_checks(!cfg.allow_unstable);

    EnsembleConfig ecfg{make_initial(cfg),  make_params(cfg),
                        make_boundary(cfg), make_partition(cfg),
                        make_delay_model(cfg), cfg.k_end,
                        cfg.record_stride};
    EnsembleResult res = ensemble_run(ecfg, cfg.ensemble_runs, cfg.seed);
    for (const auto& f : res.terminal_fields) check_finite_or_throw(f);

    std::string runs_path = out_path(cfg, "ensemble.csv");
    std::string stats_path = out_path(cfg, "ensemble_stats.csv");
    std::string svg_path = out_path(cfg, "ensemble.svg");
    emit_ensemble_csv(res, runs_path, stats_path);

    std::vector<Series> series;
    std::vector<double> xs(res.steps.begin(), res.steps.end());
    for (std::size_t j = 0; j < res.norm_series.size(); ++j)
        series.push_back({"run" + std::to_string(j), xs, res.norm_series[j]});
    series.push_back({"mean", xs, res.mean_series});
    SvgOptions opts;
    opts.title = "ensemble 2-norm trajectories (M=" +
                 std::to_string(cfg.ensemble_runs) + ")";
    opts.x_label = "k";
    opts.y_label = "||u(k)||_2";
    emit_svg_lines(series, svg_path, opts);

    if (cfg.ensemble_runs >= 2) {
        SpreadStats spread = terminal_spread(res);
        std::cout << "terminal spread: std(mean_temp)="
                  << format_double(spread.std_terminal_mean_temp)
                  << " std(norm2)=" << format_double(spread.std_terminal_norm)
                  << "\n";
    }
    std::cout << "wrote " << runs_path << "\nwrote " << stats_path << "\nwrote "
              << svg_path << "\n";
    return 0;
}

int cmd_bench(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    set_strict_finite_checks(false);
    std::size_t workers = cfg.bench_workers != 0
                              ? cfg.bench_workers
                              : std::max(1u, std::thread::hardware_concurrency());
    if (workers > std::thread::hardware_concurrency())
        std::cerr << "note: " << workers
                  << " workers oversubscribe hardware threads; timings will "
                     "not reflect a fair sync/async comparison\n";

    std::vector<ExecMode> modes{ExecMode::Barriered, ExecMode::BarrierFree};
    std::vector<BenchRow> rows =
        measure(cfg.bench_sizes, modes, cfg.bench_reps, cfg.bench_k_end, workers);

    std::string path = out_path(cfg, "bench.csv");
    emit_bench_csv(rows, path);

    std::cout << "N,mode,reps,median_ns,min_ns\n";
    for (const auto& row : rows)
        std::cout << row.n_points << ',' << to_string(row.mode) << ','
                  << row.reps << ',' << row.median_ns << ',' << row.min_ns
                  << '\n';
    for (std::size_t n : cfg.bench_sizes)
        std::cout << "speedup(N=" << n
                  << ") = " << format_double(speedup_ratio(rows, n)) << '\n';
    std::cout << "wrote " << path << "\n";
    return 0;
}

int cmd_steady(const CommonArgs& args) {
    RunConfig cfg = load_config(args);
    TemperatureField steady =
        linear_steady_state(cfg.grid_points, cfg.c1, cfg.c2);
    std::cout << "i,u\n";
    for (std::size_t i = 0; i < steady.size(); ++i)
        std::cout << i << ',' << format_double(steady[i]) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D heat equation: synchronous and asynchronous explicit solvers"};
    app.require_subcommand(1);

    CommonArgs run_args, ens_args, bench_args, steady_args;
    CLI::App* run = app.add_subcommand("run", "single solver run, CSV trajectory");
    add_common(run, run_args);
    CLI::App* ens = app.add_subcommand("ensemble", "seeded Monte Carlo ensemble");
    add_common(ens, ens_args);
    CLI::App* bench = app.add_subcommand("bench", "sync vs async timing sweep");
    add_common(bench, bench_args);
    CLI::App* steady =
        app.add_subcommand("steady", "print the Dirichlet steady state");
    add_common(steady, steady_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (ens->parsed()) return cmd_ensemble(ens_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (steady->parsed()) return cmd_steady(steady_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
