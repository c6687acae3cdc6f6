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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include "simuav/baselines.hpp"
#include "simuav/harness.hpp"
#include "simuav/rng.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

using namespace simuav;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        o.pass = false;
        o.detail += " [over the " + std::to_string(int(limit_s)) + " s budget]";
    }
    failures += !o.pass;
    std::printf("%s %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Placement sub-problem drawn from the reference setup: real geometry,
// fading and random phases, random one-to-one association.
LocationProblem placement_instance(std::uint64_t seed, Positions& q0)
{
    SimConfig cfg;
    const auto stack = SimStack::build(cfg);
    const auto sc = build_scenario(cfg, seed);
    const auto ch = sample_channels(stack, sc, cfg.effective_ref_gain(), seed);
    const auto phases = PhaseProfile::random(cfg.num_uavs, cfg.layers, cfg.atoms_per_layer, seed);
    Rng gen(substream(seed, "acceptance-assoc"));
    const auto assoc = random_association(cfg.num_users, cfg.num_uavs, gen);
    q0 = sc.uav_xy();
    return make_location_problem(cfg, sc, normalized_gain_powers(stack, ch, phases), assoc);
}

Eigen::MatrixXd true_slack(const LocationProblem& p, const Positions& q)
{
    Eigen::MatrixXd S(p.num_users(), p.num_uavs());
    for (std::size_t u = 0; u < p.num_uavs(); ++u)
        for (std::size_t m = 0; m < p.num_users(); ++m)
            S(m, u) = p.distance_sq(q[u], m);
    return S;
}

struct Stats {
    double mean = 0, std = 0, se = 0;
    std::size_t n = 0;
};

Stats stats(const std::vector<double>& v)
{
    Stats s;
    s.n = v.size();
    for (double x : v)
        s.mean += x;
    s.mean /= double(s.n);
    for (double x : v)
        s.std += (x - s.mean) * (x - s.mean);
    s.std = s.n > 1 ? std::sqrt(s.std / double(s.n - 1)) : 0.0;
    s.se = s.std / std::sqrt(double(s.n));
    return s;
}

std::vector<std::string> read_lines(const fs::path& p)
{
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

std::vector<std::string> without_column(const std::vector<std::string>& rows, int col)
{
    std::vector<std::string> out;
    for (const auto& r : rows) {
        std::stringstream ss(r);
        std::string f, kept;
        for (int i = 0; std::getline(ss, f, ','); ++i)
            if (i != col)
                kept += f + ',';
        out.push_back(kept);
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    const fs::path out = argc > 1 ? fs::path(argv[1]) : fs::current_path() / "acceptance_out";
    constexpr double pi = std::numbers::pi;

    criterion(1, "association oracle equivalence", 10, [] {
        Rng gen(substream(1, "c1"));
        std::uniform_real_distribution<double> val(0.0, 10.0);
        std::uniform_int_distribution<int> mdist(1, 6), udist(1, 3);
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const int M = mdist(gen), U = udist(gen);
            Eigen::MatrixXd R(M, U);
            for (auto& x : R.reshaped())
                x = val(gen);
            worst = std::max(worst, std::abs(solve_association(R).objective(R) -
                                             brute_force_association(R).objective(R)));
        }
        return Outcome{worst <= 1e-9, fmt("200 instances, max objective gap %.3g", worst)};
    });

    criterion(2, "surrogate under-estimator", 60, [] {
        double worst_over = -1e300, worst_gap = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Positions q0;
            const auto p = placement_instance(seed, q0);
            const auto c = surrogate_coefficients(p, q0);
            const double R0 = location_capacity(p, q0);
            worst_gap = std::max(worst_gap, std::abs(reduced_surrogate(p, c, q0) - R0));
            worst_gap = std::max(worst_gap, std::abs(surrogate_value(p, c, q0, true_slack(p, q0)) - R0));
            Rng gen(substream(seed, "c2"));
            std::uniform_real_distribution<double> coord(0.0, p.area_side);
            for (int t = 0; t < 1000; ++t) {
                Positions q(p.num_uavs());
                for (auto& x : q)
                    x = {coord(gen), coord(gen)};
                const double R = location_capacity(p, q);
                worst_over = std::max(worst_over, reduced_surrogate(p, c, q) - R);
                worst_over = std::max(worst_over, surrogate_value(p, c, q, true_slack(p, q)) - R);
            }
        }
        return Outcome{worst_over <= 1e-9 && worst_gap <= 1e-10,
                       fmt("max(surrogate - R) %.3g, gap at expansion %.3g", worst_over, worst_gap)};
    });

    criterion(3, "reduced-surrogate gradient check", 30, [] {
        double worst = 0.0;
        int points = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Positions q0;
            const auto p = placement_instance(seed, q0);
            const auto c = surrogate_coefficients(p, q0);
            Rng gen(substream(seed, "c3"));
            std::normal_distribution<double> off(0.0, 100.0);
            for (int t = 0; t < 5; ++t, ++points) {
                Positions q = q0;
                for (auto& x : q)
                    x += Eigen::Vector2d(off(gen), off(gen));
                const auto g = reduced_surrogate_gradient(p, c, q);
                double err = 0.0, scale = 0.0;
                for (std::size_t u = 0; u < q.size(); ++u)
                    for (int d = 0; d < 2; ++d) {
                        Positions a = q, b = q;
                        a[u](d) += 1e-4;
                        b[u](d) -= 1e-4;
                        const double fd = (reduced_surrogate(p, c, a) - reduced_surrogate(p, c, b)) / 2e-4;
                        err = std::max(err, std::abs(fd - g[u](d)));
                        scale = std::max(scale, std::abs(g[u](d)));
                    }
                worst = std::max(worst, err / scale);
            }
        }
        return Outcome{worst < 1e-5, fmt("%d points, max relative error %.3g", points, worst)};
    });

    criterion(4, "per-layer phase optimality", 30, [&] {
        SimConfig cfg;
        cfg.layers = 3;
        const auto stack = SimStack::build(cfg);
        const std::size_t K = stack.atoms();
        double worst_bound = 0.0, worst_random = -1e300;
        std::size_t updates = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto sc = build_scenario(cfg, seed);
            const auto ch = sample_channels(stack, sc, cfg.effective_ref_gain(), seed);
            auto phases = PhaseProfile::random(1, cfg.layers, K, seed);
            auto th = phases.uav(0);
            const auto& h = ch.h_tilde(0, 0);
            Rng gen(substream(seed, "c4"));
            std::uniform_real_distribution<double> ang(0.0, 2 * pi);
            std::vector<double> alt(K);
            for (std::size_t sweep = 0; sweep < cfg.phase_iters; ++sweep)
                for (std::size_t l = 1; l <= cfg.layers; ++l) {
                    const auto part = layer_partials(stack, th, l, h);
                    auto layer = th.subspan((l - 1) * K, K);
                    const auto next = update_layer(part, layer);
                    std::copy(next.begin(), next.end(), layer.begin());
                    const double gain = std::abs(partial_gain(part, layer));
                    const double bound = (part.F.cwiseAbs().array() * part.Lh.cwiseAbs().array()).sum();
                    worst_bound = std::max(worst_bound, std::abs(gain - bound));
                    for (int r = 0; r < 1000; ++r) {
                        for (auto& a : alt)
                            a = ang(gen);
                        worst_random = std::max(worst_random, std::abs(partial_gain(part, alt)) - gain);
                    }
                    ++updates;
                }
        }
        return Outcome{worst_bound <= 1e-9 && worst_random <= 0.0,
                       fmt("%zu updates, |gain - bound| <= %.3g, best random alternative margin %.3g", updates,
                           worst_bound, worst_random)};
    });

    criterion(5, "channel statistics", 60, [] {
        SimConfig cfg;
        const auto stack = SimStack::build(cfg);
        Scenario sc;
        sc.area_side = 1000;
        sc.altitude = 50;
        sc.safety_distance = 1;
        for (int m = 0; m < 1000; ++m)
            sc.users.emplace_back(m, 0, 0);
        for (int u = 0; u < 100; ++u)
            sc.uavs.emplace_back(10.0 * u, 500, 50);
        const auto ch = sample_channels(stack, sc, 1.0, 2024);
        Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(36, 36);
        for (const auto& h : ch.normalized)
            cov.noalias() += h * h.adjoint();
        cov /= double(ch.normalized.size());
        const double err = (cov - stack.corr.cast<cd>()).norm() / stack.corr.norm();
        return Outcome{err < 0.05, fmt("%zu samples, relative Frobenius error %.4f", ch.normalized.size(), err)};
    });

    criterion(6, "AO block monotonicity", 600, [] {
        SimConfig cfg;
        double worst = 0.0;
        std::size_t max_iter = 0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Solution sol;
            const auto rec = run_single(cfg, "ao", 3, seed, nullptr, &sol);
            if (rec.status != "ok")
                return Outcome{false, "seed " + std::to_string(seed) + ": " + rec.status};
            max_iter = std::max(max_iter, sol.iterations);
            for (std::size_t i = 1; i < sol.trace.size(); ++i)
                if (sol.trace[i].block == "assoc" || sol.trace[i].block == "loc")
                    worst = std::max(worst, sol.trace[i - 1].capacity - sol.trace[i].capacity);
        }
        return Outcome{worst <= 1e-9 && max_iter <= cfg.ao_max_iters,
                       fmt("20 runs, largest block drop %.3g, most iterations %zu", worst, max_iter)};
    });

    // Shared sweep for criteria 7-10.
    SimConfig cfg;
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 20; ++s)
        seeds.push_back(s);
    const std::vector<std::size_t> layers{1, 2, 3, 5, 7};
    ExperimentPlan plan;
    plan.config = cfg;
    plan.methods = {"ao", "ud", "nosim"};
    plan.layers = layers;
    plan.seeds = seeds;
    plan.out_dir = out / "run1";
    ExperimentOutput sweep;
    const auto t0 = std::chrono::steady_clock::now();
    bool sweep_ok = true;
    try {
        sweep = run_experiment(plan);
    } catch (const std::exception& e) {
        std::printf("sweep failed: %s\n", e.what());
        sweep_ok = false;
    }
    const double sweep_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("     sweep: %zu runs in %.1f s -> %s\n", sweep.records.size(), sweep_s, plan.out_dir.c_str());

    auto capacities = [&](const std::string& method, std::size_t l) {
        std::vector<double> v;
        for (const auto& r : sweep.records)
            if (r.method == method && r.layers == l && r.status == "ok")
                v.push_back(r.capacity);
        return v;
    };

    criterion(7, "capacity trend in L", 1800, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        std::string detail = "AO means:";
        bool monotone = true;
        Stats prev;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            const auto s = stats(capacities("ao", layers[i]));
            detail += fmt(" L=%zu %.3f+-%.3f", layers[i], s.mean, s.se);
            if (s.n < 20)
                return Outcome{false, "fewer than 20 runs at L=" + std::to_string(layers[i])};
            if (i > 0 && s.mean < prev.mean - prev.se)
                monotone = false;
            prev = s;
        }
        const double ratio = stats(capacities("ao", 7)).mean / stats(capacities("ao", 1)).mean;
        detail += fmt("; non-decreasing within 1 SE: %s; L7/L1 = %.3f (need >= 1.5); sweep %.1f s",
                      monotone ? "yes" : "no", ratio, sweep_s);
        return Outcome{monotone && ratio >= 1.5 && sweep_s < 1800, detail};
    });

    criterion(8, "AO vs UD at L=7", 1800, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        const auto ao = stats(capacities("ao", 7)), ud = stats(capacities("ud", 7));
        const double ratio = ao.mean / ud.mean;
        return Outcome{ao.n >= 20 && ud.n == ao.n && ratio >= 1.5 && sweep_s < 1800,
                       fmt("AO %.3f, UD %.3f, ratio %.3f (need >= 1.5); sweep %.1f s", ao.mean, ud.mean, ratio,
                           sweep_s)};
    });

    criterion(9, "SIM benefit", 0, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        std::string detail;
        bool ok = true;
        for (std::size_t l : {3, 7}) {
            const auto ao = stats(capacities("ao", l)), bare = stats(capacities("nosim", l));
            ok &= ao.n >= 20 && ao.mean > bare.mean;
            detail += fmt("L=%zu AO %.3f vs no-SIM %.3f; ", l, ao.mean, bare.mean);
        }
        return Outcome{ok, detail};
    });

    criterion(10, "determinism", 0, [&] {
        if (!sweep_ok)
            return Outcome{false, "sweep failed"};
        auto again = plan;
        again.out_dir = out / "run2";
        again.threads = 2;
        const auto second = run_experiment(again);
        const auto a = without_column(read_lines(sweep.sweep_csv), 4);
        const auto b = without_column(read_lines(second.sweep_csv), 4);
        const bool sweep_same = a == b;
        const bool trace_same = read_lines(sweep.trace_csv) == read_lines(second.trace_csv);
        return Outcome{sweep_same && trace_same && a.size() == 301,
                       fmt("%zu sweep rows; sweep.csv %s, trace.csv %s", a.size() - 1,
                           sweep_same ? "identical" : "DIFFERENT", trace_same ? "identical" : "DIFFERENT")};
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
