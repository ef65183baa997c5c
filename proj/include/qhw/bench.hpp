#pragma once

/// @file bench.hpp
/// Batch experiment harness: seeded runs of every (instance, algorithm, run)
/// triple, per-run trace CSVs, and aggregation of those traces into a table of
/// mean best-so-far fitness at fixed generation checkpoints.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qhw/algorithms.hpp"

namespace qhw::bench {

inline constexpr const char* kOutputDirEnv = "QHW_OUTPUT_DIR";

struct ExperimentSpec {
    std::vector<std::string> instances;
    std::vector<Algorithm> algorithms{Algorithm::CGA, Algorithm::QEA, Algorithm::HQEA};
    std::size_t runs = 10;
    std::vector<std::size_t> checkpoints{50, 100, 250, 500, 1000};
    std::uint64_t master_seed = 1;
    std::string output_dir = "traces";
    std::size_t jobs = 0; // 0 picks the hardware concurrency
    OptimizerConfig config;

    /// Throws std::invalid_argument; called before any run starts.
    void validate() const;
};

/// Reads an ExperimentSpec from JSON. Unknown keys are rejected. Recognized:
/// instances, algorithms, runs, checkpoints, master_seed, output_dir, jobs,
/// max_generations, population_size, migration_period, delta_theta, local_n,
/// remote_n, n_max, trials, fraction, crossover_rate, mutation_rate, elitism.
ExperimentSpec spec_from_json(std::string_view text);
ExperimentSpec load_spec(const std::string& path);

/// Seed shared by all algorithms for run `run_index` on `instance_id`.
std::uint64_t run_seed(std::uint64_t master_seed, std::string_view instance_id,
                       std::size_t run_index);

std::string trace_file_name(std::string_view instance_id, Algorithm algorithm,
                            std::size_t run_index);

/// Header `algorithm,instance_id,seed,generation,best_fitness`, one row per
/// generation starting at 1, LF line endings.
void write_trace_csv(std::ostream& out, const RunTrace& trace);
RunTrace read_trace_csv(std::istream& in);
RunTrace load_trace(const std::filesystem::path& path);

/// Runs the full experiment on a worker pool and returns the written files.
std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec);

/// Mean rounded half-up to the nearest integer (exact integer arithmetic).
Fitness round_half_up_mean(std::span<const Fitness> values);

struct TableBlock {
    std::string instance_id;
    std::size_t runs = 0;
    std::vector<std::size_t> checkpoints;
    std::vector<Algorithm> algorithms;
    std::vector<std::vector<Fitness>> cells; // [checkpoint][algorithm]
};

struct ResultTable {
    std::vector<TableBlock> blocks;
};

/// Throws std::runtime_error listing every missing (instance, algorithm, seed)
/// combination or checkpoint beyond a trace's length.
ResultTable aggregate(const std::vector<RunTrace>& traces,
                      const std::vector<std::size_t>& checkpoints);

/// Loads every *.csv trace in `dir` (files named table*.csv are skipped).
std::vector<RunTrace> load_traces(const std::filesystem::path& dir);

std::string table_to_csv(const ResultTable& table);
std::string table_to_text(const ResultTable& table);

/// Throws std::invalid_argument when walk_steps > n_max.
AngleDistribution walk_distribution(int walk_steps, int n_max);

} // namespace qhw::bench
