// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "simuav/harness.hpp"
#include "simuav/baselines.hpp"
#include "simuav/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace simuav {

namespace fs = std::filesystem;

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ExperimentPlan ExperimentPlan::from_config(const SimConfig& cfg, const fs::path& out_dir)
{
    ExperimentPlan p;
    p.config = cfg;
    p.methods = cfg.methods;
    p.layers = cfg.layer_sweep;
    p.seeds = cfg.seeds;
    p.out_dir = out_dir;
    return p;
}

void ExperimentPlan::validate() const
{
    if (methods.empty())
        throw std::invalid_argument("plan needs at least one method");
    for (const auto& m : methods)
        if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end())
            throw std::invalid_argument("unknown method '" + m + "'");
    if (seeds.empty())
        throw std::invalid_argument("plan needs at least one seed");
    if (layers.empty())
        throw std::invalid_argument("plan needs at least one layer count");
    for (auto l : layers)
        if (l < 1)
            throw std::invalid_argument("layer counts must be at least 1");
    config.validate();
}

RunSeeds RunSeeds::derive(std::uint64_t master, const std::string& method, std::size_t layers, std::uint64_t seed)
{
    return {substream(master, "scenario", seed), substream(master, "channels", seed),
            substream(master, "method:" + method, layers, seed)};
}

RunRecord run_single(const SimConfig& base, const std::string& method, std::size_t layers, std::uint64_t seed,
                     AoDiagnostics* diagnostics, Solution* solution)
{
    RunRecord rec;
    rec.method = method;
    rec.layers = layers;
    rec.seed = seed;
    const auto start = std::chrono::steady_clock::now();
    try {
        const SimConfig cfg = base.with_layers(layers);
        const RunSeeds seeds = RunSeeds::derive(cfg.rng_seed, method, layers, seed);
        const SimStack stack = SimStack::build(cfg);
        const Scenario scenario = build_scenario(cfg, seeds.scenario);
        const ChannelSet channels = sample_channels(stack, scenario, cfg.effective_ref_gain(), seeds.channels);

        Solution sol;
        if (method == "ao") {
            sol = run_ao(cfg, stack, scenario, channels, seeds.method, diagnostics);
        } else if (method == "ud") {
            sol = uniform_deployment(cfg, stack, scenario, channels, seeds.method);
        } else if (method == "rd") {
            sol = random_solution(cfg, stack, scenario, channels, seeds.method, cfg.rd_candidates);
        } else if (method == "nosim") {
            sol = without_sim_capacity(cfg, scenario, channels);
        } else if (method == "pso") {
            sol = evolutionary_optimize(cfg, stack, scenario, channels, EvoKind::Pso, seeds.method);
        } else if (method == "de") {
            sol = evolutionary_optimize(cfg, stack, scenario, channels, EvoKind::De, seeds.method);
        } else {
            throw std::invalid_argument("unknown method '" + method + "'");
        }
        rec.capacity = sol.capacity;
        rec.trace = sol.trace;
        rec.status = sol.termination == Termination::Error ? "error: " + sol.error : "ok";
        if (solution)
            *solution = std::move(sol);
    } catch (const std::exception& e) {
        rec.capacity = std::nan("");
        rec.status = std::string("error: ") + e.what();
    }
    // Keep the status a single CSV field.
    std::replace(rec.status.begin(), rec.status.end(), ',', ';');
    std::replace(rec.status.begin(), rec.status.end(), '\n', ' ');
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

ExperimentOutput run_experiment(const ExperimentPlan& plan)
{
    plan.validate();
    struct Job {
        std::string method;
        std::size_t layers;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& m : plan.methods)
        for (auto l : plan.layers)
            for (auto s : plan.seeds)
                jobs.push_back({m, l, s});

    std::vector<RunRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++)
            records[i] = run_single(plan.config, jobs[i].method, jobs[i].layers, jobs[i].seed);
    };
    std::size_t threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t)
            pool.emplace_back(worker);
        worker();
    }

    fs::create_directories(plan.out_dir);
    ExperimentOutput out;
    out.sweep_csv = plan.out_dir / "sweep.csv";
    out.trace_csv = plan.out_dir / "trace.csv";
    out.manifest = plan.out_dir / "manifest.txt";
    const std::string hash = plan.config.hash();

    std::ofstream sweep(out.sweep_csv), trace(out.trace_csv);
    if (!sweep || !trace)
        throw std::runtime_error("cannot write into " + plan.out_dir.string());
    sweep << kSweepHeader << '\n';
    trace << kTraceHeader << '\n';
    for (const auto& r : records) {
        char wall[32];
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
        sweep << r.method << ',' << r.layers << ',' << r.seed << ',' << format_number(r.capacity) << ',' << wall << ','
              << r.status << ',' << hash << '\n';
        for (const auto& t : r.trace)
            trace << r.method << ',' << r.seed << ',' << r.layers << ',' << t.tau << ',' << t.block << ','
                  << format_number(t.capacity) << ',' << hash << '\n';
    }

    std::ofstream man(out.manifest);
    man << "config_hash=" << hash << "\nmaster_seed=" << plan.config.rng_seed << "\nmethods=";
    for (std::size_t i = 0; i < plan.methods.size(); ++i)
        man << (i ? "," : "") << plan.methods[i];
    man << "\nlayers=";
    for (std::size_t i = 0; i < plan.layers.size(); ++i)
        man << (i ? "," : "") << plan.layers[i];
    man << "\nseeds=";
    for (std::size_t i = 0; i < plan.seeds.size(); ++i)
        man << (i ? "," : "") << plan.seeds[i];
    man << "\nrows=" << records.size() << "\nthreads=" << threads << "\ncompiler=" << __VERSION__
        << "\neigen=" << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION << "\n[config]\n"
        << plan.config.canonical();

    out.records = std::move(records);
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

std::vector<SummaryRow> summarize(const fs::path& sweep_csv)
{
    std::ifstream in(sweep_csv);
    if (!in)
        throw CsvError("cannot open " + sweep_csv.string());
    std::string line;
    if (!std::getline(in, line) || line != kSweepHeader)
        throw CsvError(sweep_csv.string() + ": expected header '" + kSweepHeader + "'");

    std::map<std::pair<std::string, std::size_t>, std::vector<double>> groups;
    std::vector<std::pair<std::string, std::size_t>> order;
    std::string hash;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        const auto f = split(line);
        auto bad = [&](const std::string& why) {
            return CsvError(sweep_csv.string() + " line " + std::to_string(lineno) + ": " + why);
        };
        if (f.size() != 7)
            throw bad("expected 7 fields, got " + std::to_string(f.size()));
        if (hash.empty())
            hash = f[6];
        else if (f[6] != hash)
            throw bad("rows from different configurations (" + hash + " vs " + f[6] + ")");
        std::size_t layers = 0;
        double cap = 0.0;
        try {
            std::size_t pos = 0;
            layers = std::stoul(f[1], &pos);
            if (pos != f[1].size())
                throw std::invalid_argument("L");
            cap = std::stod(f[3], &pos);
            if (pos != f[3].size())
                throw std::invalid_argument("capacity");
        } catch (const std::exception&) {
            throw bad("non-numeric L or capacity");
        }
        auto key = std::make_pair(f[0], layers);
        if (!groups.count(key))
            order.push_back(key);
        groups[key].push_back(cap);
    }

    std::vector<SummaryRow> out;
    for (const auto& key : order) {
        const auto& v = groups[key];
        SummaryRow r{key.first, key.second, 0.0, 0.0, v.size()};
        for (double x : v)
            r.mean += x;
        r.mean /= static_cast<double>(v.size());
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v)
                ss += (x - r.mean) * (x - r.mean);
            r.std = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
        out.push_back(r);
    }
    return out;
}

void write_summary(const std::vector<SummaryRow>& rows, const fs::path& out)
{
    if (out.has_parent_path())
        fs::create_directories(out.parent_path());
    std::ofstream o(out);
    if (!o)
        throw std::runtime_error("cannot write " + out.string());
    o << kSummaryHeader << '\n';
    for (const auto& r : rows)
        o << r.method << ',' << r.layers << ',' << format_number(r.mean) << ',' << format_number(r.std) << ',' << r.n
          << '\n';
}

namespace {

void write_complex(const Eigen::MatrixXcd& A, const fs::path& p)
{
    std::ofstream o(p);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            o << (j ? "," : "") << format_number(A(i, j).real()) << ',' << format_number(A(i, j).imag());
        o << '\n';
    }
}

} // namespace

void dump_physics(const SimConfig& cfg, const fs::path& out_dir)
{
    fs::create_directories(out_dir);
    const SimStack stack = SimStack::build(cfg);
    const Eigen::MatrixXcd W = cfg.layers > 1 ? stack.W(2) : build_inter_layer_matrix(stack.geometry);
    write_complex(W, out_dir / "W.csv");
    write_complex(stack.output_vec, out_dir / "w1.csv");
    write_complex(stack.corr.cast<cd>(), out_dir / "R.csv");
}

} // namespace simuav
