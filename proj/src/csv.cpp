#include "heat/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "heat/config.hpp"

namespace heat {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void emit_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "k,i,u\n";
    for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
        const auto& snap = traj.snapshots[s];
        for (std::size_t i = 0; i < snap.size(); ++i)
            out << traj.steps[s] << ',' << i << ',' << format_double(snap[i])
                << '\n';
    }
    finish(out, path);
}

TrajectoryData read_trajectory_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "k,i,u")
        throw IoError("bad trajectory CSV header in " + path);

    TrajectoryData data;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t k, i;
        double u;
        if (std::sscanf(line.c_str(), "%zu,%zu,%lf", &k, &i, &u) != 3)
            throw IoError("bad trajectory CSV row in " + path + ": " + line);
        if (data.steps.empty() || data.steps.back() != k) {
            data.steps.push_back(k);
            data.snapshots.emplace_back();
        }
        if (i != data.snapshots.back().size())
            throw IoError("non-contiguous point index in " + path);
        data.snapshots.back().push_back(u);
    }
    return data;
}

void emit_ensemble_csv(const EnsembleResult& res, const std::string& runs_path,
                       const std::string& stats_path) {
    {
        std::ofstream out = open_out(runs_path);
        out << "k,run,norm2\n";
        for (std::size_t j = 0; j < res.norm_series.size(); ++j)
            for (std::size_t s = 0; s < res.steps.size(); ++s)
                out << res.steps[s] << ',' << j << ','
                    << format_double(res.norm_series[j][s]) << '\n';
        finish(out, runs_path);
    }
    {
        std::ofstream out = open_out(stats_path);
        out << "k,mean,std\n";
        for (std::size_t s = 0; s < res.steps.size(); ++s)
            out << res.steps[s] << ',' << format_double(res.mean_series[s])
                << ',' << format_double(res.std_series[s]) << '\n';
        finish(out, stats_path);
    }
}

void emit_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "N,mode,reps,median_ns,min_ns\n";
    for (const auto& row : rows)
        out << row.n_points << ',' << to_string(row.mode) << ',' << row.reps
            << ',' << row.median_ns << ',' << row.min_ns << '\n';
    finish(out, path);
}

}  // namespace heat
