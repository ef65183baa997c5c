#include "qhw/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace qhw::bench {

namespace fs = std::filesystem;

void ExperimentSpec::validate() const {
    if (runs < 1) {
        throw std::invalid_argument("experiment: runs must be at least 1");
    }
    if (algorithms.empty()) {
        throw std::invalid_argument("experiment: no algorithms selected");
    }
    if (checkpoints.empty()) {
        throw std::invalid_argument("experiment: no checkpoints given");
    }
    if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) ||
        std::adjacent_find(checkpoints.begin(), checkpoints.end()) != checkpoints.end()) {
        throw std::invalid_argument("experiment: checkpoints must be strictly increasing");
    }
    if (checkpoints.front() < 1) {
        throw std::invalid_argument("experiment: checkpoints start at generation 1");
    }
    if (checkpoints.back() > config.max_generations) {
        throw std::invalid_argument("experiment: checkpoint " + std::to_string(checkpoints.back()) +
                                    " exceeds max generations " +
                                    std::to_string(config.max_generations));
    }
    config.validate();
}

ExperimentSpec spec_from_json(std::string_view text) {
    ExperimentSpec spec;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("experiment spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("experiment spec must be a JSON object");
    }
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "instances") {
                spec.instances = value.get<std::vector<std::string>>();
            } else if (key == "algorithms") {
                spec.algorithms.clear();
                for (const auto& name : value.get<std::vector<std::string>>()) {
                    spec.algorithms.push_back(parse_algorithm(name));
                }
            } else if (key == "runs") {
                spec.runs = value.get<std::size_t>();
            } else if (key == "checkpoints") {
                spec.checkpoints = value.get<std::vector<std::size_t>>();
            } else if (key == "master_seed") {
                spec.master_seed = value.get<std::uint64_t>();
            } else if (key == "output_dir") {
                spec.output_dir = value.get<std::string>();
            } else if (key == "jobs") {
                spec.jobs = value.get<std::size_t>();
            } else if (key == "max_generations") {
                spec.config.max_generations = value.get<std::size_t>();
            } else if (key == "population_size") {
                spec.config.population_size = value.get<std::size_t>();
            } else if (key == "migration_period") {
                spec.config.migration_period = value.get<std::size_t>();
            } else if (key == "delta_theta") {
                spec.config.delta_theta = value.get<double>();
            } else if (key == "local_n") {
                spec.config.local.walk_steps = value.get<int>();
            } else if (key == "remote_n") {
                spec.config.remote.walk_steps = value.get<int>();
            } else if (key == "n_max") {
                spec.config.local.n_max = spec.config.remote.n_max = value.get<int>();
            } else if (key == "trials") {
                spec.config.local.trials = spec.config.remote.trials = value.get<std::size_t>();
            } else if (key == "fraction") {
                spec.config.local.fraction = spec.config.remote.fraction = value.get<double>();
            } else if (key == "crossover_rate") {
                spec.config.cga.crossover_rate = value.get<double>();
            } else if (key == "mutation_rate") {
                spec.config.cga.mutation_rate = value.get<double>();
            } else if (key == "elitism") {
                spec.config.cga.elitism = value.get<std::size_t>();
            } else {
                throw std::invalid_argument("experiment spec: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("experiment spec: ") + e.what());
    }
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open spec file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return spec_from_json(buffer.str());
}

std::uint64_t run_seed(std::uint64_t master_seed, std::string_view instance_id,
                       std::size_t run_index) {
    return stream_seed(master_seed, "run", {label_hash(instance_id), run_index});
}

std::string trace_file_name(std::string_view instance_id, Algorithm algorithm,
                            std::size_t run_index) {
    char run[16];
    std::snprintf(run, sizeof run, "%03zu", run_index);
    return std::string(instance_id) + "__" + std::string(algorithm_name(algorithm)) + "__run" +
           run + ".csv";
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
    out << "algorithm,instance_id,seed,generation,best_fitness\n";
    const std::string prefix = std::string(algorithm_name(trace.algorithm)) + "," +
                               trace.instance_id + "," + std::to_string(trace.seed) + ",";
    for (std::size_t g = 0; g < trace.best_per_generation.size(); ++g) {
        out << prefix << (g + 1) << ',' << trace.best_per_generation[g] << '\n';
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
    std::size_t used = 0;
    T value{};
    try {
        if constexpr (std::is_same_v<T, std::uint64_t>) {
            value = std::stoull(s, &used);
        } else {
            value = std::stoll(s, &used);
        }
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) {
        throw std::runtime_error(std::string("trace CSV: bad ") + what + " '" + s + "'");
    }
    return value;
}

} // namespace

RunTrace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "algorithm,instance_id,seed,generation,best_fitness") {
        throw std::runtime_error("trace CSV: missing or unexpected header");
    }
    RunTrace trace;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 5) {
            throw std::runtime_error("trace CSV: expected 5 fields in '" + line + "'");
        }
        const Algorithm alg = parse_algorithm(f[0]);
        const auto seed = parse_number<std::uint64_t>(f[2], "seed");
        const auto generation = parse_number<std::int64_t>(f[3], "generation");
        const auto best = parse_number<std::int64_t>(f[4], "best_fitness");
        if (first) {
            trace.algorithm = alg;
            trace.instance_id = f[1];
            trace.seed = seed;
            first = false;
        } else if (alg != trace.algorithm || f[1] != trace.instance_id || seed != trace.seed) {
            throw std::runtime_error("trace CSV: rows from more than one run");
        }
        if (generation != static_cast<std::int64_t>(trace.best_per_generation.size()) + 1) {
            throw std::runtime_error("trace CSV: generations must run 1, 2, 3, ...");
        }
        trace.best_per_generation.push_back(best);
    }
    if (first) {
        throw std::runtime_error("trace CSV: no data rows");
    }
    return trace;
}

RunTrace load_trace(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open trace '" + path.string() + "'");
    }
    try {
        return read_trace_csv(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::vector<fs::path> run_experiment(const ExperimentSpec& spec) {
    spec.validate();

    struct Task {
        std::size_t instance;
        Algorithm algorithm;
        std::size_t run;
    };

    // Load everything up front so a missing file fails before any run starts.
    std::vector<KnapsackInstance> instances;
    for (const std::string& path : spec.instances) {
        if (!fs::exists(path)) {
            throw std::runtime_error("instance file not found: " + path);
        }
        instances.push_back(load_instance(path));
    }

    const fs::path out_dir(spec.output_dir);
    fs::create_directories(out_dir);

    std::vector<Task> tasks;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (const Algorithm a : spec.algorithms) {
            for (std::size_t r = 0; r < spec.runs; ++r) {
                tasks.push_back({i, a, r});
            }
        }
    }
    std::vector<fs::path> written(tasks.size());

    std::size_t workers = spec.jobs ? spec.jobs : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(tasks.size(), 1));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    const auto work = [&] {
        for (std::size_t k = next++; k < tasks.size(); k = next++) {
            try {
                const Task& task = tasks[k];
                const KnapsackInstance& inst = instances[task.instance];
                const RunTrace trace =
                    run_algorithm(task.algorithm, inst, spec.config,
                                  run_seed(spec.master_seed, inst.id, task.run));
                const fs::path path = out_dir / trace_file_name(inst.id, task.algorithm, task.run);
                std::ofstream out(path, std::ios::binary | std::ios::trunc);
                write_trace_csv(out, trace);
                if (!out.flush()) {
                    throw std::runtime_error("failed writing trace '" + path.string() + "'");
                }
                written[k] = path;
            } catch (...) {
                const std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = tasks.size();
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return written;
}

Fitness round_half_up_mean(std::span<const Fitness> values) {
    if (values.empty()) {
        throw std::invalid_argument("round_half_up_mean: no values");
    }
    // floor((2 * sum + n) / (2 * n)) == floor(mean + 1/2)
    Fitness sum = 0;
    for (const Fitness v : values) {
        sum += v;
    }
    const auto n = static_cast<Fitness>(values.size());
    const Fitness num = 2 * sum + n;
    const Fitness den = 2 * n;
    Fitness q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) {
        --q;
    }
    return q;
}

ResultTable aggregate(const std::vector<RunTrace>& traces,
                      const std::vector<std::size_t>& checkpoints) {
    if (checkpoints.empty()) {
        throw std::invalid_argument("aggregate: no checkpoints");
    }
    // instance -> algorithm -> seed -> trace
    std::map<std::string, std::map<Algorithm, std::map<std::uint64_t, const RunTrace*>>> grouped;
    std::set<Algorithm> all_algorithms;
    std::vector<std::string> problems;
    for (const RunTrace& t : traces) {
        auto& slot = grouped[t.instance_id][t.algorithm][t.seed];
        if (slot) {
            problems.push_back("duplicate trace for " + t.instance_id + "/" +
                               std::string(algorithm_name(t.algorithm)) + " seed " +
                               std::to_string(t.seed));
        }
        slot = &t;
        all_algorithms.insert(t.algorithm);
    }

    ResultTable table;
    for (const auto& [instance_id, by_alg] : grouped) {
        std::set<std::uint64_t> seeds;
        for (const auto& [alg, by_seed] : by_alg) {
            for (const auto& [seed, trace] : by_seed) {
                seeds.insert(seed);
            }
        }
        for (const Algorithm alg : all_algorithms) {
            const auto it = by_alg.find(alg);
            for (const std::uint64_t seed : seeds) {
                if (it == by_alg.end() || !it->second.contains(seed)) {
                    problems.push_back("missing trace " + instance_id + "/" +
                                       std::string(algorithm_name(alg)) + " seed " +
                                       std::to_string(seed));
                }
            }
        }

        TableBlock block;
        block.instance_id = instance_id;
        block.runs = seeds.size();
        block.checkpoints = checkpoints;
        block.algorithms.assign(all_algorithms.begin(), all_algorithms.end());
        for (const std::size_t cp : checkpoints) {
            std::vector<Fitness> row;
            for (const Algorithm alg : block.algorithms) {
                std::vector<Fitness> values;
                if (const auto it = by_alg.find(alg); it != by_alg.end()) {
                    for (const auto& [seed, trace] : it->second) {
                        if (cp < 1 || cp > trace->best_per_generation.size()) {
                            problems.push_back(
                                "trace " + instance_id + "/" + std::string(algorithm_name(alg)) +
                                " seed " + std::to_string(seed) + " has " +
                                std::to_string(trace->best_per_generation.size()) +
                                " generations, checkpoint " + std::to_string(cp) + " unavailable");
                            continue;
                        }
                        values.push_back(trace->best_per_generation[cp - 1]);
                    }
                }
                row.push_back(values.empty() ? 0 : round_half_up_mean(values));
            }
            block.cells.push_back(std::move(row));
        }
        table.blocks.push_back(std::move(block));
    }

    if (!problems.empty()) {
        std::string message = "incomplete trace set:";
        for (const std::string& p : problems) {
            message += "\n  " + p;
        }
        throw std::runtime_error(message);
    }
    return table;
}

std::vector<RunTrace> load_traces(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("trace directory not found: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const fs::path& p = entry.path();
        if (entry.is_regular_file() && p.extension() == ".csv" &&
            !p.filename().string().starts_with("table")) {
            files.push_back(p);
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<RunTrace> traces;
    traces.reserve(files.size());
    for (const fs::path& p : files) {
        traces.push_back(load_trace(p));
    }
    return traces;
}

std::string table_to_csv(const ResultTable& table) {
    std::ostringstream out;
    for (std::size_t b = 0; b < table.blocks.size(); ++b) {
        const TableBlock& block = table.blocks[b];
        if (b == 0) {
            out << "instance_id,iterations";
            for (const Algorithm a : block.algorithms) {
                out << ',' << algorithm_name(a);
            }
            out << '\n';
        }
        for (std::size_t r = 0; r < block.checkpoints.size(); ++r) {
            out << block.instance_id << ',' << block.checkpoints[r];
            for (const Fitness v : block.cells[r]) {
                out << ',' << v;
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string table_to_text(const ResultTable& table) {
    std::ostringstream out;
    std::size_t id_width = std::string_view("Instance").size();
    for (const TableBlock& block : table.blocks) {
        id_width = std::max(id_width, block.instance_id.size());
    }
    constexpr int kCol = 10;
    for (const TableBlock& block : table.blocks) {
        out << std::left << std::setw(static_cast<int>(id_width)) << "Instance" << " | "
            << std::right << std::setw(kCol) << "Iterations";
        for (const Algorithm a : block.algorithms) {
            out << " | " << std::setw(kCol) << algorithm_name(a);
        }
        out << '\n';
        const std::size_t width = id_width + 3 + kCol + block.algorithms.size() * (3 + kCol);
        out << std::string(width, '-') << '\n';
        for (std::size_t r = 0; r < block.checkpoints.size(); ++r) {
            out << std::left << std::setw(static_cast<int>(id_width))
                << (r == 0 ? block.instance_id : std::string()) << " | " << std::right
                << std::setw(kCol) << block.checkpoints[r];
            for (const Fitness v : block.cells[r]) {
                out << " | " << std::setw(kCol) << v;
            }
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

AngleDistribution walk_distribution(int walk_steps, int n_max) {
    if (walk_steps < 0) {
        throw std::invalid_argument("walkdist: n must be non-negative");
    }
    if (n_max < 1) {
        throw std::invalid_argument("walkdist: n_max must be positive");
    }
    if (walk_steps > n_max) {
        throw std::invalid_argument("walkdist: n (" + std::to_string(walk_steps) +
                                    ") exceeds n_max (" + std::to_string(n_max) + ")");
    }
    return to_angle_distribution(run_walk(walk_steps), n_max);
}

} // namespace qhw::bench
