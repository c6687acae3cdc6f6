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

// simuav: command-line front end for single runs, sweeps and summaries.

#include "simuav/harness.hpp"
#include "simuav/rng.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace simuav;

namespace {

struct Common {
    std::string config;
    std::vector<std::string> seeds;
    std::vector<std::size_t> layers;
    std::vector<std::string> methods;
    std::string out = "out";
    std::size_t threads = 0;
};

SimConfig load(const Common& c)
{
    return c.config.empty() ? SimConfig{} : load_config(c.config);
}

std::vector<std::uint64_t> seeds_from(const std::vector<std::string>& specs)
{
    std::vector<std::uint64_t> out;
    for (const auto& s : specs) {
        auto part = parse_config("[experiment]\nseeds = " + s + "\n").seeds;
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

ExperimentPlan plan_from(const Common& c)
{
    auto plan = ExperimentPlan::from_config(load(c), c.out);
    if (!c.seeds.empty())
        plan.seeds = seeds_from(c.seeds);
    if (!c.layers.empty())
        plan.layers = c.layers;
    if (!c.methods.empty())
        plan.methods = c.methods;
    plan.threads = c.threads;
    return plan;
}

void write_diagnostics(const SimConfig& base, std::size_t layers, std::uint64_t seed, const AoDiagnostics& d,
                       const Solution& sol, const fs::path& dir)
{
    std::ofstream sca(dir / "sca_trace.csv");
    sca << "tau,outer,surrogate,capacity_bps_hz,max_delta_m,accepted\n";
    for (const auto& s : d.sca)
        sca << s.tau << ',' << s.row.outer << ',' << format_number(s.row.surrogate) << ','
            << format_number(s.row.capacity) << ',' << format_number(s.row.max_delta) << ',' << s.row.accepted
            << '\n';

    std::ofstream gain(dir / "gain_trace.csv");
    gain << "tau,uav,sweep,layer,gain\n";
    for (const auto& g : d.gains)
        gain << g.tau << ',' << g.row.uav << ',' << g.row.sweep << ',' << g.row.layer << ','
             << format_number(g.row.gain) << '\n';

    // Rebuild the run's channels to report the final links.
    const SimConfig cfg = base.with_layers(layers);
    const RunSeeds rs = RunSeeds::derive(cfg.rng_seed, "ao", layers, seed);
    const SimStack stack = SimStack::build(cfg);
    const Scenario scenario = build_scenario(cfg, rs.scenario);
    const ChannelSet channels = sample_channels(stack, scenario, cfg.effective_ref_gain(), rs.channels);
    const auto& st = sol.state;
    const LinkMetrics lm =
        link_metrics(normalized_gain_powers(stack, channels, st.phases), st.scenario, LinkBudget::from(cfg));

    std::ofstream links(dir / "links.csv");
    links << "user,uav,associated,distance_m,gain_power,sinr,rate_bps_hz\n";
    for (std::size_t m = 0; m < st.scenario.users.size(); ++m)
        for (std::size_t u = 0; u < st.scenario.uavs.size(); ++u)
            links << m << ',' << u << ',' << st.association.matrix()(int(m), int(u)) << ','
                  << format_number(st.scenario.distance(m, u)) << ',' << format_number(lm.gain_power(m, u)) << ','
                  << format_number(lm.sinr(m, u)) << ',' << format_number(lm.rate(m, u)) << '\n';

    std::ofstream pos(dir / "positions.csv");
    pos << "kind,index,x_m,y_m,z_m\n";
    for (std::size_t m = 0; m < st.scenario.users.size(); ++m) {
        const auto& p = st.scenario.users[m];
        pos << "user," << m << ',' << format_number(p.x()) << ',' << format_number(p.y()) << ','
            << format_number(p.z()) << '\n';
    }
    for (std::size_t u = 0; u < st.scenario.uavs.size(); ++u) {
        const auto& p = st.scenario.uavs[u];
        pos << "uav," << u << ',' << format_number(p.x()) << ',' << format_number(p.y()) << ','
            << format_number(p.z()) << '\n';
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"UAV-mounted stacked metasurface uplink simulator"};
    app.require_subcommand(1);

    Common c;
    auto add_common = [&c](CLI::App* sub) {
        sub->add_option("--config", c.config, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", c.out, "output directory");
        sub->add_option("--methods", c.methods, "subset of ao,rd,ud,nosim,pso,de")->delimiter(',');
        sub->add_option("--layers", c.layers, "layer counts, e.g. 1,2,3")->delimiter(',');
    };

    auto* run = app.add_subcommand("run", "one seed, one or more methods");
    add_common(run);
    std::uint64_t run_seed = 1;
    bool diagnostics = false;
    run->add_option("--seed", run_seed, "seed index");
    run->add_flag("--diagnostics", diagnostics, "also write sca_trace.csv, gain_trace.csv, links.csv (ao only)");

    auto* sweep = app.add_subcommand("sweep", "methods x layers x seeds");
    add_common(sweep);
    sweep->add_option("--seeds", c.seeds, "seed list, e.g. 1-20 or 1,4,9");
    sweep->add_option("--threads", c.threads, "worker threads (0 = all cores)");

    auto* summ = app.add_subcommand("summarize", "aggregate sweep.csv into summary.csv");
    std::string sweep_in, summary_out;
    summ->add_option("sweep_csv", sweep_in, "input sweep.csv")->required()->check(CLI::ExistingFile);
    summ->add_option("--out", summary_out, "output file (default: summary.csv next to the input)");

    auto* dump = app.add_subcommand("dump-physics", "write W.csv, w1.csv and R.csv");
    add_common(dump);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto plan = plan_from(c);
            plan.seeds = {run_seed};
            plan.threads = 1;
            if (!diagnostics) {
                auto out = run_experiment(plan);
                for (const auto& r : out.records)
                    std::cout << r.method << " L=" << r.layers << " seed=" << r.seed << " capacity="
                              << format_number(r.capacity) << " status=" << r.status << '\n';
                return 0;
            }
            if (plan.methods != std::vector<std::string>{"ao"} || plan.layers.size() != 1)
                throw std::invalid_argument("--diagnostics needs --methods ao and a single --layers value");
            plan.validate();
            fs::create_directories(plan.out_dir);
            AoDiagnostics d;
            Solution sol;
            const auto rec = run_single(plan.config, "ao", plan.layers[0], run_seed, &d, &sol);
            run_experiment(plan);
            if (rec.status != "ok")
                throw std::runtime_error(rec.status);
            write_diagnostics(plan.config, plan.layers[0], run_seed, d, sol, plan.out_dir);
            std::cout << "ao L=" << rec.layers << " seed=" << run_seed << " capacity=" << format_number(rec.capacity)
                      << '\n';
        } else if (*sweep) {
            auto out = run_experiment(plan_from(c));
            std::size_t failed = 0;
            for (const auto& r : out.records)
                failed += r.status != "ok";
            std::cout << out.records.size() << " rows -> " << out.sweep_csv.string();
            if (failed)
                std::cout << " (" << failed << " failed)";
            std::cout << '\n';
        } else if (*summ) {
            fs::path dst = summary_out.empty() ? fs::path(sweep_in).parent_path() / "summary.csv" : fs::path(summary_out);
            auto rows = summarize(sweep_in);
            write_summary(rows, dst);
            std::cout << rows.size() << " groups -> " << dst.string() << '\n';
        } else if (*dump) {
            SimConfig cfg = load(c);
            if (!c.layers.empty())
                cfg = cfg.with_layers(c.layers.front());
            dump_physics(cfg, c.out);
        }
    } catch (const std::exception& e) {
        std::cerr << "simuav: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
