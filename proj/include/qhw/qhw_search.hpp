#pragma once

/// @file qhw_search.hpp
/// Hadamard-walk search operators. Remote search applies long walks to the
/// worst individuals (exploration); local search applies short walks to the
/// best ones (exploitation). Each refinement proposes per-q-bit walk rotations
/// and keeps a proposal only when its sampled fitness strictly improves.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "qhw/qea_core.hpp"
#include "qhw/quantum_walk.hpp"

namespace qhw {

enum class SearchMode { local, remote };

struct SearchParams {
    int walk_steps = 10;
    int n_max = 100;
    std::size_t trials = 5;
    double fraction = 0.20;
    SearchMode mode = SearchMode::local;

    /// Throws std::invalid_argument unless 1 <= walk_steps <= n_max and
    /// fraction is in (0, 1].
    void validate() const;

    static SearchParams local_defaults() { return {10, 100, 5, 0.20, SearchMode::local}; }
    static SearchParams remote_defaults() { return {100, 100, 5, 0.20, SearchMode::remote}; }
};

/// ceil(fraction * size) indices with the highest (local) or lowest (remote)
/// fitness, ordered best-first (local) or worst-first (remote); ties go to
/// the lower index.
std::vector<std::size_t> select_individuals(std::span<const Fitness> fitnesses, double fraction,
                                            SearchMode mode);

/// Observed bitstring -> (repaired bitstring, fitness).
using Evaluator = std::function<ScoredSolution(const Bitstring& observed, Rng& rng)>;

/// A population member: the q-bit individual and its current observed solution.
struct Member {
    QbitIndividual q;
    ScoredSolution solution;
};

struct RefineResult {
    Member member;
    std::size_t evaluations = 0;
    std::size_t accepted = 0;
};

/// Runs `params.trials` proposal rounds on one individual. Each round draws
/// an independent walk angle per q-bit from `walk_rng`, then scores the
/// rotated candidate with one observation plus `evaluate` on `score_rng`.
RefineResult qhw_refine(const Member& member, const SearchParams& params,
                        const AngleDistribution& walk, const Evaluator& evaluate,
                        Rng& walk_rng, Rng& score_rng);

/// Per-call stream source: maps (member index, concern label) to a stream.
using StreamFactory = std::function<Rng(std::size_t index, std::string_view label)>;

struct SearchStats {
    std::vector<std::size_t> selected;
    std::size_t evaluations = 0;
    std::size_t accepted = 0;
};

/// Refines the selected members of `population` in place.
SearchStats qhw_search(std::vector<Member>& population, const SearchParams& params,
                       const Evaluator& evaluate, const StreamFactory& streams,
                       WalkCache& cache = WalkCache::global());

inline SearchStats local_search(std::vector<Member>& population, SearchParams params,
                                const Evaluator& evaluate, const StreamFactory& streams,
                                WalkCache& cache = WalkCache::global()) {
    params.mode = SearchMode::local;
    return qhw_search(population, params, evaluate, streams, cache);
}

inline SearchStats remote_search(std::vector<Member>& population, SearchParams params,
                                 const Evaluator& evaluate, const StreamFactory& streams,
                                 WalkCache& cache = WalkCache::global()) {
    params.mode = SearchMode::remote;
    return qhw_search(population, params, evaluate, streams, cache);
}

} // namespace qhw
