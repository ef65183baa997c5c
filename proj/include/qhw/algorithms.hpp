#pragma once

/// @file algorithms.hpp
/// The three optimizers compared on knapsack instances: HQEA (QEA plus
/// Hadamard-walk remote and local search), the plain QEA baseline, and a
/// conventional generational GA.
///
/// Every random decision is drawn from a stream named by (run seed, concern,
/// generation, slot), so adding or removing a phase never shifts the random
/// numbers seen by another phase.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qhw/knapsack.hpp"
#include "qhw/qea_core.hpp"
#include "qhw/qhw_search.hpp"

namespace qhw {

enum class Algorithm { CGA, QEA, HQEA };

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

struct CgaParams {
    double crossover_rate = 0.65;
    double mutation_rate = 0.05;
    std::size_t elitism = 1;
};

struct OptimizerConfig {
    std::size_t population_size = 10;
    std::size_t max_generations = 1000;
    double delta_theta = kDefaultDeltaTheta;
    std::size_t migration_period = 100;
    SearchParams local = SearchParams::local_defaults();
    SearchParams remote = SearchParams::remote_defaults();
    CgaParams cga;

    void validate() const;
};

struct RunTrace {
    Algorithm algorithm = Algorithm::HQEA;
    std::string instance_id;
    std::uint64_t seed = 0;
    std::vector<Fitness> best_per_generation; // index g holds generation g + 1
    std::size_t evaluations_used = 0;

    bool operator==(const RunTrace&) const = default;
};

/// Called for every bitstring handed to the fitness function.
using EvaluationObserver = std::function<void(const Bitstring&, Fitness)>;

RunTrace run_hqea(const KnapsackInstance& inst, const OptimizerConfig& config, std::uint64_t seed,
                  const EvaluationObserver& observer = {});

RunTrace run_qea(const KnapsackInstance& inst, const OptimizerConfig& config, std::uint64_t seed,
                 const EvaluationObserver& observer = {});

RunTrace run_cga(const KnapsackInstance& inst, const OptimizerConfig& config, std::uint64_t seed,
                 const EvaluationObserver& observer = {});

RunTrace run_algorithm(Algorithm algorithm, const KnapsackInstance& inst,
                       const OptimizerConfig& config, std::uint64_t seed,
                       const EvaluationObserver& observer = {});

/// Roulette-wheel selection probabilities. Zero fitness gets weight 1e-9 of
/// the total; an all-zero population is uniform.
std::vector<double> roulette_probabilities(std::span<const Fitness> fitnesses);

/// Index drawn proportionally to `probabilities` (one uniform from rng).
std::size_t roulette_pick(std::span<const double> probabilities, Rng& rng);

} // namespace qhw
