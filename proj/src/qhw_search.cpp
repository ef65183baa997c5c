#include "qhw/qhw_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qhw {

void SearchParams::validate() const {
    if (walk_steps < 1 || walk_steps > n_max) {
        throw std::invalid_argument("search params: need 1 <= walk steps (" +
                                    std::to_string(walk_steps) + ") <= n_max (" +
                                    std::to_string(n_max) + ")");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("search params: fraction must lie in (0, 1]");
    }
}

std::vector<std::size_t> select_individuals(std::span<const Fitness> fitnesses, double fraction,
                                            SearchMode mode) {
    if (fitnesses.empty()) {
        throw std::invalid_argument("select_individuals: empty population");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("select_individuals: fraction must lie in (0, 1]");
    }
    const std::size_t n = fitnesses.size();
    // Guard against 0.3 * 10 = 3.0000000000000004 rounding up to 4.
    const double raw = fraction * static_cast<double>(n);
    auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9 * raw));
    count = std::clamp<std::size_t>(count, 1, n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return mode == SearchMode::local ? fitnesses[a] > fitnesses[b]
                                         : fitnesses[a] < fitnesses[b];
    });
    order.resize(count);
    return order;
}

RefineResult qhw_refine(const Member& member, const SearchParams& params,
                        const AngleDistribution& walk, const Evaluator& evaluate,
                        Rng& walk_rng, Rng& score_rng) {
    RefineResult result{member, 0, 0};
    std::vector<double> deltas(member.q.size());
    for (std::size_t round = 0; round < params.trials; ++round) {
        for (double& d : deltas) {
            d = walk.sample(walk_rng);
        }
        QbitIndividual candidate = rotate_all(result.member.q, deltas);
        ScoredSolution scored = evaluate(observe(candidate, score_rng), score_rng);
        ++result.evaluations;
        if (scored.fitness > result.member.solution.fitness) {
            result.member.q = std::move(candidate);
            result.member.solution = std::move(scored);
            ++result.accepted;
        }
    }
    return result;
}

SearchStats qhw_search(std::vector<Member>& population, const SearchParams& params,
                       const Evaluator& evaluate, const StreamFactory& streams,
                       WalkCache& cache) {
    params.validate();
    SearchStats stats;
    if (population.empty()) {
        return stats;
    }
    std::vector<Fitness> fitnesses;
    fitnesses.reserve(population.size());
    for (const Member& m : population) {
        fitnesses.push_back(m.solution.fitness);
    }
    stats.selected = select_individuals(fitnesses, params.fraction, params.mode);
    if (params.trials == 0) {
        return stats;
    }
    const auto walk = cache.get(params.walk_steps, params.n_max);
    for (const std::size_t j : stats.selected) {
        Rng walk_rng = streams(j, "walk");
        Rng score_rng = streams(j, "refine_score");
        RefineResult r = qhw_refine(population[j], params, *walk, evaluate, walk_rng, score_rng);
        population[j] = std::move(r.member);
        stats.evaluations += r.evaluations;
        stats.accepted += r.accepted;
    }
    return stats;
}

} // namespace qhw
