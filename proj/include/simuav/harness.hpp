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

#pragma once

#include "simuav/ao.hpp"
#include "simuav/config.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace simuav {

inline const std::vector<std::string> kMethods{"ao", "rd", "ud", "nosim", "pso", "de"};

struct ExperimentPlan {
    SimConfig config;
    std::vector<std::string> methods{"ao"};
    std::vector<std::size_t> layers{3};
    std::vector<std::uint64_t> seeds{1};
    std::filesystem::path out_dir;
    std::size_t threads = 0; // 0 selects the hardware concurrency

    static ExperimentPlan from_config(const SimConfig& cfg, const std::filesystem::path& out_dir);
    // Throws std::invalid_argument on an empty or unknown method list,
    // missing seeds, or L < 1.
    void validate() const;
};

// Seeds for one (method, L, seed index) cell. Scenario and channel draws
// depend on the seed only, so every method and layer count sees the same
// users, initial placement and fading.
struct RunSeeds {
    std::uint64_t scenario;
    std::uint64_t channels;
    std::uint64_t method;
    static RunSeeds derive(std::uint64_t master, const std::string& method, std::size_t layers, std::uint64_t seed);
};

struct RunRecord {
    std::string method;
    std::size_t layers = 0;
    std::uint64_t seed = 0;
    double capacity = 0.0;
    double wall_ms = 0.0;
    std::string status; // "ok" or "error: ..."
    std::vector<TraceRow> trace;
};

// Runs a single cell; never throws (failures land in `status`).
RunRecord run_single(const SimConfig& cfg, const std::string& method, std::size_t layers, std::uint64_t seed,
                     AoDiagnostics* diagnostics = nullptr, Solution* solution = nullptr);

struct ExperimentOutput {
    std::vector<RunRecord> records; // ordered by (method, L, seed) as listed in the plan
    std::filesystem::path sweep_csv;
    std::filesystem::path trace_csv;
    std::filesystem::path manifest;
};

// Writes sweep.csv, trace.csv and manifest.txt into plan.out_dir.
ExperimentOutput run_experiment(const ExperimentPlan& plan);

inline constexpr const char* kSweepHeader = "method,L,seed,capacity_bps_hz,wall_ms,status,config_hash";
inline constexpr const char* kTraceHeader = "method,seed,L,tau,block,capacity_bps_hz,config_hash";
inline constexpr const char* kSummaryHeader = "method,L,mean,std,n";

struct SummaryRow {
    std::string method;
    std::size_t layers = 0;
    double mean = 0.0;
    double std = 0.0; // sample standard deviation, 0 for n = 1
    std::size_t n = 0;
};

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Groups sweep rows by (method, L). Throws CsvError for malformed input or
// rows from more than one configuration.
std::vector<SummaryRow> summarize(const std::filesystem::path& sweep_csv);
void write_summary(const std::vector<SummaryRow>& rows, const std::filesystem::path& out);

// %.17g: round-trips every double, so equal runs give equal bytes.
std::string format_number(double v);

// W, w1 and R as CSV (complex entries as re,im column pairs).
void dump_physics(const SimConfig& cfg, const std::filesystem::path& out_dir);

} // namespace simuav
