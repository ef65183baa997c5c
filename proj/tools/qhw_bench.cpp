// qhw_bench: instance generation, batch runs, result tables and walk
// distribution export for the Hadamard-walk optimizers.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhw/bench.hpp"
#include "qhw/knapsack.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << contents) || !out.flush()) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hadamard-walk quantum-inspired optimizers on 0-1 knapsack"};
    app.require_subcommand(1);

    // gen
    std::size_t gen_items = 200;
    std::string gen_profile = "strongly_correlated";
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a knapsack instance (JSON)");
    gen->add_option("--items", gen_items, "Number of items")->check(CLI::PositiveNumber);
    gen->add_option("--profile", gen_profile, "strongly_correlated | uncorrelated")
        ->check(CLI::IsMember({"strongly_correlated", "uncorrelated"}));
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--out,-o", gen_out, "Output path (default <id>.json)");

    // run
    std::string spec_path;
    std::vector<std::string> run_instances;
    std::vector<std::string> run_algorithms;
    std::size_t run_runs = 0;
    std::vector<std::size_t> run_checkpoints;
    std::size_t run_generations = 0;
    std::uint64_t run_seed = 0;
    std::string run_out;
    std::size_t run_jobs = 0;
    int local_n = 0;
    int remote_n = 0;
    int n_max = 0;
    std::size_t trials = 0;
    double fraction = 0.0;
    auto* run = app.add_subcommand("run", "Run seeded experiments and write trace CSVs");
    run->add_option("--spec", spec_path, "Experiment spec (JSON)")->check(CLI::ExistingFile);
    run->add_option("--instance,-i", run_instances, "Instance file (repeatable)");
    run->add_option("--algorithms", run_algorithms, "Subset of CGA,QEA,HQEA")
        ->delimiter(',')
        ->check(CLI::IsMember({"CGA", "QEA", "HQEA"}));
    run->add_option("--runs", run_runs, "Runs per algorithm and instance")
        ->check(CLI::PositiveNumber);
    run->add_option("--checkpoints", run_checkpoints, "Generation checkpoints")->delimiter(',');
    run->add_option("--generations", run_generations, "Generations per run")
        ->check(CLI::PositiveNumber);
    run->add_option("--seed", run_seed, "Master seed");
    run->add_option("--out,-o", run_out, "Trace output directory");
    run->add_option("--jobs,-j", run_jobs, "Worker threads (default: all cores)");
    run->add_option("--local-n", local_n, "Walk steps for local search")->check(CLI::PositiveNumber);
    run->add_option("--remote-n", remote_n, "Walk steps for remote search")
        ->check(CLI::PositiveNumber);
    run->add_option("--n-max", n_max, "Walk position mapped to pi")->check(CLI::PositiveNumber);
    run->add_option("--trials", trials, "Proposal rounds per refined individual");
    run->add_option("--fraction", fraction, "Share of the population refined")
        ->check(CLI::Range(0.0, 1.0));

    // table
    std::string table_dir;
    std::vector<std::size_t> table_checkpoints{50, 100, 250, 500, 1000};
    std::string table_out;
    auto* table = app.add_subcommand("table", "Aggregate trace CSVs into a result table");
    table->add_option("trace_dir", table_dir, "Directory of trace CSVs")->required();
    table->add_option("--checkpoints", table_checkpoints, "Generation checkpoints")
        ->delimiter(',');
    table->add_option("--out,-o", table_out, "Table CSV path (default <trace_dir>/table.csv)");

    // walkdist
    int walk_n = 10;
    int walk_n_max = 100;
    std::string walk_out;
    auto* walkdist = app.add_subcommand("walkdist", "Export a Hadamard walk angle distribution");
    walkdist->add_option("--n", walk_n, "Walk steps")->check(CLI::NonNegativeNumber);
    walkdist->add_option("--n-max", walk_n_max, "Position mapped to pi")
        ->check(CLI::PositiveNumber);
    walkdist->add_option("--out,-o", walk_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*gen) {
            const auto inst =
                qhw::generate_instance(gen_items, qhw::parse_profile(gen_profile), gen_seed);
            const std::string path = gen_out.empty() ? inst.id + ".json" : gen_out;
            qhw::save_instance(inst, path);
            std::cout << inst.id << '\n';
        } else if (*run) {
            qhw::bench::ExperimentSpec spec;
            try {
                if (!spec_path.empty()) {
                    spec = qhw::bench::load_spec(spec_path);
                }
                if (const char* env = std::getenv(qhw::bench::kOutputDirEnv); env && *env) {
                    spec.output_dir = env;
                }
                if (!run_instances.empty()) spec.instances = run_instances;
                if (!run_algorithms.empty()) {
                    spec.algorithms.clear();
                    for (const auto& a : run_algorithms) {
                        spec.algorithms.push_back(qhw::parse_algorithm(a));
                    }
                }
                if (run_runs) spec.runs = run_runs;
                if (!run_checkpoints.empty()) spec.checkpoints = run_checkpoints;
                if (run_generations) spec.config.max_generations = run_generations;
                if (run->count("--seed")) spec.master_seed = run_seed;
                if (!run_out.empty()) spec.output_dir = run_out;
                if (run_jobs) spec.jobs = run_jobs;
                if (local_n) spec.config.local.walk_steps = local_n;
                if (remote_n) spec.config.remote.walk_steps = remote_n;
                if (n_max) spec.config.local.n_max = spec.config.remote.n_max = n_max;
                if (run->count("--trials")) {
                    spec.config.local.trials = spec.config.remote.trials = trials;
                }
                if (run->count("--fraction")) {
                    spec.config.local.fraction = spec.config.remote.fraction = fraction;
                }
                if (spec.instances.empty()) {
                    throw std::invalid_argument("no instance files given");
                }
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto files = qhw::bench::run_experiment(spec);
            std::cout << "wrote " << files.size() << " trace files to " << spec.output_dir << '\n';
        } else if (*table) {
            const auto traces = qhw::bench::load_traces(table_dir);
            const auto result = qhw::bench::aggregate(traces, table_checkpoints);
            const std::string out_path =
                table_out.empty() ? (std::filesystem::path(table_dir) / "table.csv").string()
                                  : table_out;
            write_file(out_path, qhw::bench::table_to_csv(result));
            std::cout << qhw::bench::table_to_text(result);
        } else if (*walkdist) {
            qhw::AngleDistribution dist = [&] {
                try {
                    return qhw::bench::walk_distribution(walk_n, walk_n_max);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }();
            if (walk_out.empty()) {
                qhw::write_walk_csv(std::cout, dist);
            } else {
                std::ostringstream csv;
                qhw::write_walk_csv(csv, dist);
                write_file(walk_out, csv.str());
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return 0;
}
