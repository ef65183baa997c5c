#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qhw/rng.hpp"

namespace qhw {

using Fitness = std::int64_t;

/// 0/1 decision vector, one byte per item.
using Bitstring = std::vector<std::uint8_t>;

struct KnapsackInstance {
    std::string id;
    std::vector<std::int64_t> weights;
    std::vector<std::int64_t> profits;
    std::int64_t capacity = 0;

    std::size_t size() const { return weights.size(); }
    std::int64_t total_weight() const;

    /// Throws std::invalid_argument on mismatched lengths or non-positive data.
    void validate() const;

    bool operator==(const KnapsackInstance&) const = default;
};

enum class InstanceProfile { uncorrelated, strongly_correlated };

InstanceProfile parse_profile(std::string_view name);
std::string_view profile_name(InstanceProfile profile);

/// Weights uniform in [1, 10]; profits w + 5 (strongly correlated) or uniform
/// in [1, 10] (uncorrelated); capacity ceil(sum(w) / 2).
KnapsackInstance generate_instance(std::size_t num_items,
                                   InstanceProfile profile = InstanceProfile::strongly_correlated,
                                   std::uint64_t seed = 1);

std::int64_t weight_of(const KnapsackInstance& inst, const Bitstring& x);
bool is_feasible(const KnapsackInstance& inst, const Bitstring& x);

/// Total profit of a feasible selection. Infeasible or mis-sized input throws
/// std::invalid_argument; callers repair first.
Fitness evaluate(const KnapsackInstance& inst, const Bitstring& x);

/// Drops uniformly random selected items until the load fits, then visits the
/// unselected items in uniformly random order and adds each one that still fits.
Bitstring repair(const KnapsackInstance& inst, Bitstring x, Rng& rng);

/// Exact optimum by exhaustive enumeration; refuses more than 24 items.
Fitness brute_force_optimum(const KnapsackInstance& inst);

inline constexpr std::size_t kMaxBruteForceItems = 24;

// JSON: {"capacity": int, "id": str, "profits": [int], "weights": [int]}
std::string instance_to_json(const KnapsackInstance& inst);
KnapsackInstance instance_from_json(std::string_view text);

KnapsackInstance load_instance(const std::string& path);
void save_instance(const KnapsackInstance& inst, const std::string& path);

} // namespace qhw
