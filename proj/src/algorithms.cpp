#include "qhw/algorithms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qhw {

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::CGA:
        return "CGA";
    case Algorithm::QEA:
        return "QEA";
    case Algorithm::HQEA:
        return "HQEA";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (const Algorithm a : {Algorithm::CGA, Algorithm::QEA, Algorithm::HQEA}) {
        if (name == algorithm_name(a)) {
            return a;
        }
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
    if (population_size < 2) {
        throw std::invalid_argument("config: population size must be at least 2");
    }
    if (max_generations < 1) {
        throw std::invalid_argument("config: max generations must be at least 1");
    }
    if (migration_period < 1) {
        throw std::invalid_argument("config: migration period must be at least 1");
    }
    const auto is_rate = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!is_rate(cga.crossover_rate) || !is_rate(cga.mutation_rate)) {
        throw std::invalid_argument("config: CGA rates must lie in [0, 1]");
    }
    if (cga.elitism > population_size) {
        throw std::invalid_argument("config: elitism exceeds population size");
    }
    local.validate();
    remote.validate();
}

namespace {

class Scorer {
  public:
    Scorer(const KnapsackInstance& inst, const EvaluationObserver& observer)
        : inst_(inst), observer_(observer) {}

    ScoredSolution operator()(const Bitstring& raw, Rng& repair_rng) const {
        ScoredSolution s;
        s.bits = repair(inst_, raw, repair_rng);
        s.fitness = evaluate(inst_, s.bits);
        if (observer_) {
            observer_(s.bits, s.fitness);
        }
        ++count_;
        return s;
    }

    std::size_t count() const { return count_; }

  private:
    const KnapsackInstance& inst_;
    const EvaluationObserver& observer_;
    mutable std::size_t count_ = 0;
};

RunTrace run_quantum(Algorithm algorithm, const KnapsackInstance& inst,
                     const OptimizerConfig& config, std::uint64_t seed,
                     const EvaluationObserver& observer) {
    config.validate();
    inst.validate();
    const std::size_t pop = config.population_size;
    const Scorer scorer(inst, observer);
    const Evaluator evaluator = [&scorer](const Bitstring& raw, Rng& rng) {
        return scorer(raw, rng);
    };

    RunTrace trace{algorithm, inst.id, seed, {}, 0};
    trace.best_per_generation.reserve(config.max_generations);

    std::vector<Member> population(pop, Member{new_individual(inst.size()), {}});
    SolutionBank bank;
    std::vector<ScoredSolution> solutions(pop);

    for (std::size_t t = 1; t <= config.max_generations; ++t) {
        for (std::size_t j = 0; j < pop; ++j) {
            Rng observe_rng = make_stream(seed, "observe", {t, j});
            Rng repair_rng = make_stream(seed, "repair", {t, j});
            population[j].solution = scorer(observe(population[j].q, observe_rng), repair_rng);
        }

        if (algorithm == Algorithm::HQEA) {
            const auto streams_for = [seed, t](std::string_view phase) {
                return [seed, t, phase](std::size_t j, std::string_view label) {
                    return make_stream(seed, std::string(label) + "/" + std::string(phase), {t, j});
                };
            };
            remote_search(population, config.remote, evaluator, streams_for("remote"));
            local_search(population, config.local, evaluator, streams_for("local"));
        }

        if (!bank.empty()) {
            for (std::size_t j = 0; j < pop; ++j) {
                const ScoredSolution& b = bank.entry(j);
                const ScoredSolution& x = population[j].solution;
                population[j].q = qea_update(population[j].q, x.bits, b.bits,
                                             x.fitness >= b.fitness, config.delta_theta);
            }
        }

        for (std::size_t j = 0; j < pop; ++j) {
            solutions[j] = population[j].solution;
        }
        bank = update_bank(bank, solutions);
        bank = migrate(bank, t, config.migration_period);
        trace.best_per_generation.push_back(bank.global_best().fitness);
    }
    trace.evaluations_used = scorer.count();
    return trace;
}

} // namespace

RunTrace run_hqea(const KnapsackInstance& inst, const OptimizerConfig& config, std::uint64_t seed,
                  const EvaluationObserver& observer) {
    return run_quantum(Algorithm::HQEA, inst, config, seed, observer);
}

RunTrace run_qea(const KnapsackInstance& inst, const OptimizerConfig& config, std::uint64_t seed,
                 const EvaluationObserver& observer) {
    return run_quantum(Algorithm::QEA, inst, config, seed, observer);
}

std::vector<double> roulette_probabilities(std::span<const Fitness> fitnesses) {
    if (fitnesses.empty()) {
        throw std::invalid_argument("roulette_probabilities: empty population");
    }
    double total = 0.0;
    for (const Fitness f : fitnesses) {
        if (f < 0) {
            throw std::invalid_argument("roulette_probabilities: negative fitness");
        }
        total += static_cast<double>(f);
    }
    std::vector<double> weights(fitnesses.size());
    if (total == 0.0) {
        std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(weights.size()));
        return weights;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        weights[i] = fitnesses[i] > 0 ? static_cast<double>(fitnesses[i]) : 1e-9 * total;
        sum += weights[i];
    }
    for (double& w : weights) {
        w /= sum;
    }
    return weights;
}

std::size_t roulette_pick(std::span<const double> probabilities, Rng& rng) {
    if (probabilities.empty()) {
        throw std::invalid_argument("roulette_pick: empty wheel");
    }
    const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    const double target = rng.uniform() * total;
    double running = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        running += probabilities[i];
        if (target < running) {
            return i;
        }
    }
    return probabilities.size() - 1;
}

RunTrace run_cga(const KnapsackInstance& inst, const OptimizerConfig& config, std::uint64_t seed,
                 const EvaluationObserver& observer) {
    config.validate();
    inst.validate();
    const std::size_t pop = config.population_size;
    const std::size_t n = inst.size();
    const Scorer scorer(inst, observer);

    RunTrace trace{Algorithm::CGA, inst.id, seed, {}, 0};
    trace.best_per_generation.reserve(config.max_generations);

    std::vector<ScoredSolution> population(pop);
    for (std::size_t j = 0; j < pop; ++j) {
        Rng init_rng = make_stream(seed, "cga_init", {1, j});
        Bitstring raw(n);
        for (auto& bit : raw) {
            bit = init_rng.chance(0.5) ? 1 : 0;
        }
        Rng repair_rng = make_stream(seed, "repair", {1, j});
        population[j] = scorer(raw, repair_rng);
    }

    const auto by_fitness_desc = [](const std::vector<ScoredSolution>& v) {
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return v[a].fitness > v[b].fitness; });
        return order;
    };

    Fitness best = 0;
    for (const auto& s : population) {
        best = std::max(best, s.fitness);
    }
    trace.best_per_generation.push_back(best);

    std::vector<Fitness> fitnesses(pop);
    for (std::size_t t = 2; t <= config.max_generations; ++t) {
        for (std::size_t j = 0; j < pop; ++j) {
            fitnesses[j] = population[j].fitness;
        }
        const std::vector<double> wheel = roulette_probabilities(fitnesses);
        Rng select_rng = make_stream(seed, "cga_select", {t});
        Rng crossover_rng = make_stream(seed, "cga_crossover", {t});

        std::vector<Bitstring> children;
        children.reserve(pop + 1);
        while (children.size() < pop) {
            const Bitstring& p1 = population[roulette_pick(wheel, select_rng)].bits;
            const Bitstring& p2 = population[roulette_pick(wheel, select_rng)].bits;
            Bitstring c1 = p1;
            Bitstring c2 = p2;
            if (crossover_rng.chance(config.cga.crossover_rate)) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (crossover_rng.chance(0.5)) {
                        std::swap(c1[i], c2[i]);
                    }
                }
            }
            children.push_back(std::move(c1));
            children.push_back(std::move(c2));
        }
        children.resize(pop);

        std::vector<ScoredSolution> offspring(pop);
        for (std::size_t j = 0; j < pop; ++j) {
            Rng mutate_rng = make_stream(seed, "cga_mutate", {t, j});
            for (auto& bit : children[j]) {
                if (mutate_rng.chance(config.cga.mutation_rate)) {
                    bit ^= 1U;
                }
            }
            Rng repair_rng = make_stream(seed, "repair", {t, j});
            offspring[j] = scorer(children[j], repair_rng);
        }

        // Elites from the previous generation replace the worst offspring.
        const auto elite_order = by_fitness_desc(population);
        auto victim_order = by_fitness_desc(offspring);
        std::reverse(victim_order.begin(), victim_order.end());
        for (std::size_t e = 0; e < config.cga.elitism; ++e) {
            offspring[victim_order[e]] = population[elite_order[e]];
        }
        population = std::move(offspring);

        for (const auto& s : population) {
            best = std::max(best, s.fitness);
        }
        trace.best_per_generation.push_back(best);
    }
    trace.evaluations_used = scorer.count();
    return trace;
}

RunTrace run_algorithm(Algorithm algorithm, const KnapsackInstance& inst,
                       const OptimizerConfig& config, std::uint64_t seed,
                       const EvaluationObserver& observer) {
    switch (algorithm) {
    case Algorithm::CGA:
        return run_cga(inst, config, seed, observer);
    case Algorithm::QEA:
        return run_qea(inst, config, seed, observer);
    case Algorithm::HQEA:
        return run_hqea(inst, config, seed, observer);
    }
    throw std::invalid_argument("run_algorithm: unknown algorithm");
}

} // namespace qhw
