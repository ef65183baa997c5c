#include "qhw/knapsack.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qhw {

std::int64_t KnapsackInstance::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
}

void KnapsackInstance::validate() const {
    if (weights.empty()) {
        throw std::invalid_argument("knapsack instance '" + id + "' has no items");
    }
    if (weights.size() != profits.size()) {
        throw std::invalid_argument("knapsack instance '" + id +
                                    "': weights and profits differ in length");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0 || profits[i] <= 0) {
            throw std::invalid_argument("knapsack instance '" + id +
                                        "': weights and profits must be positive");
        }
    }
    if (capacity <= 0) {
        throw std::invalid_argument("knapsack instance '" + id + "': capacity must be positive");
    }
}

InstanceProfile parse_profile(std::string_view name) {
    if (name == "strongly_correlated") {
        return InstanceProfile::strongly_correlated;
    }
    if (name == "uncorrelated") {
        return InstanceProfile::uncorrelated;
    }
    throw std::invalid_argument("unknown instance profile '" + std::string(name) + "'");
}

std::string_view profile_name(InstanceProfile profile) {
    return profile == InstanceProfile::strongly_correlated ? "strongly_correlated"
                                                           : "uncorrelated";
}

KnapsackInstance generate_instance(std::size_t num_items, InstanceProfile profile,
                                   std::uint64_t seed) {
    if (num_items == 0) {
        throw std::invalid_argument("generate_instance: need at least one item");
    }
    Rng rng = make_stream(seed, "instance", {static_cast<std::uint64_t>(profile), num_items});
    KnapsackInstance inst;
    inst.id = std::string(profile == InstanceProfile::strongly_correlated ? "sc" : "uc") + "-" +
              std::to_string(num_items) + "-s" + std::to_string(seed);
    inst.weights.resize(num_items);
    inst.profits.resize(num_items);
    for (std::size_t i = 0; i < num_items; ++i) {
        inst.weights[i] = 1 + static_cast<std::int64_t>(rng.below(10));
        inst.profits[i] = profile == InstanceProfile::strongly_correlated
                              ? inst.weights[i] + 5
                              : 1 + static_cast<std::int64_t>(rng.below(10));
    }
    inst.capacity = (inst.total_weight() + 1) / 2;
    return inst;
}

namespace {

void check_size(const KnapsackInstance& inst, const Bitstring& x) {
    if (x.size() != inst.size()) {
        throw std::invalid_argument("bitstring length " + std::to_string(x.size()) +
                                    " does not match instance size " +
                                    std::to_string(inst.size()));
    }
}

} // namespace

std::int64_t weight_of(const KnapsackInstance& inst, const Bitstring& x) {
    check_size(inst, x);
    std::int64_t w = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            w += inst.weights[i];
        }
    }
    return w;
}

bool is_feasible(const KnapsackInstance& inst, const Bitstring& x) {
    return weight_of(inst, x) <= inst.capacity;
}

Fitness evaluate(const KnapsackInstance& inst, const Bitstring& x) {
    check_size(inst, x);
    std::int64_t w = 0;
    Fitness p = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            w += inst.weights[i];
            p += inst.profits[i];
        }
    }
    if (w > inst.capacity) {
        throw std::invalid_argument("evaluate: selection weight " + std::to_string(w) +
                                    " exceeds capacity " + std::to_string(inst.capacity));
    }
    return p;
}

Bitstring repair(const KnapsackInstance& inst, Bitstring x, Rng& rng) {
    check_size(inst, x);
    std::vector<std::size_t> selected;
    std::vector<std::size_t> unselected;
    std::int64_t load = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            selected.push_back(i);
            load += inst.weights[i];
        } else {
            unselected.push_back(i);
        }
    }

    while (load > inst.capacity) {
        const auto pick = static_cast<std::size_t>(rng.below(selected.size()));
        const std::size_t item = selected[pick];
        selected[pick] = selected.back();
        selected.pop_back();
        x[item] = 0;
        load -= inst.weights[item];
        unselected.push_back(item);
    }

    // Fill pass in a random order; sort first so the order depends only on
    // the set of unselected items and the stream.
    std::sort(unselected.begin(), unselected.end());
    for (std::size_t i = unselected.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(unselected[i - 1], unselected[j]);
    }
    for (const std::size_t item : unselected) {
        if (load + inst.weights[item] <= inst.capacity) {
            x[item] = 1;
            load += inst.weights[item];
        }
    }
    return x;
}

Fitness brute_force_optimum(const KnapsackInstance& inst) {
    const std::size_t n = inst.size();
    if (n > kMaxBruteForceItems) {
        throw std::invalid_argument("brute_force_optimum: " + std::to_string(n) +
                                    " items exceeds the limit of " +
                                    std::to_string(kMaxBruteForceItems));
    }
    // Gray-code walk over all subsets, one item toggled per step.
    std::int64_t weight = 0;
    Fitness profit = 0;
    Fitness best = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 1; step < count; ++step) {
        const auto bit = static_cast<std::size_t>(__builtin_ctzll(step));
        gray ^= std::uint64_t{1} << bit;
        const bool in = (gray >> bit) & 1U;
        weight += in ? inst.weights[bit] : -inst.weights[bit];
        profit += in ? inst.profits[bit] : -inst.profits[bit];
        if (weight <= inst.capacity && profit > best) {
            best = profit;
        }
    }
    return best;
}

std::string instance_to_json(const KnapsackInstance& inst) {
    nlohmann::json j;
    j["id"] = inst.id;
    j["capacity"] = inst.capacity;
    j["weights"] = inst.weights;
    j["profits"] = inst.profits;
    return j.dump() + "\n";
}

KnapsackInstance instance_from_json(std::string_view text) {
    KnapsackInstance inst;
    try {
        const auto j = nlohmann::json::parse(text);
        inst.id = j.at("id").get<std::string>();
        inst.capacity = j.at("capacity").get<std::int64_t>();
        inst.weights = j.at("weights").get<std::vector<std::int64_t>>();
        inst.profits = j.at("profits").get<std::vector<std::int64_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed instance JSON: ") + e.what());
    }
    inst.validate();
    return inst;
}

KnapsackInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open instance file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return instance_from_json(buffer.str());
}

void save_instance(const KnapsackInstance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write instance file '" + path + "'");
    }
    out << instance_to_json(inst);
    if (!out.flush()) {
        throw std::runtime_error("failed writing instance file '" + path + "'");
    }
}

} // namespace qhw
