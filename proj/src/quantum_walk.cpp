#include "qhw/quantum_walk.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qhw {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Amplitude kI{0.0, 1.0};

} // namespace

WalkState::WalkState(int num_steps_total)
    : total_(num_steps_total) {
    if (num_steps_total < 0) {
        throw std::invalid_argument("init_walk: step count must be non-negative");
    }
    const auto sites = static_cast<std::size_t>(2 * num_steps_total + 1);
    left_.assign(sites, Amplitude{});
    right_.assign(sites, Amplitude{});
    left_[index(0)] = kI * kInvSqrt2;
    right_[index(0)] = Amplitude{kInvSqrt2, 0.0};
}

Amplitude WalkState::amplitude(int chirality, int position) const {
    if (chirality != 0 && chirality != 1) {
        throw std::invalid_argument("WalkState::amplitude: chirality must be 0 or 1");
    }
    if (position < -total_ || position > total_) {
        return {};
    }
    return chirality == 0 ? left_[index(position)] : right_[index(position)];
}

double WalkState::norm_squared() const {
    double sum = 0.0;
    for (std::size_t s = 0; s < left_.size(); ++s) {
        sum += std::norm(left_[s]) + std::norm(right_[s]);
    }
    return sum;
}

WalkState init_walk(int n) { return WalkState(n); }

WalkState step_walk(const WalkState& state) {
    if (state.taken_ >= state.total_) {
        throw std::logic_error("step_walk: walk already took all of its steps");
    }
    WalkState next = state;
    std::fill(next.left_.begin(), next.left_.end(), Amplitude{});
    std::fill(next.right_.begin(), next.right_.end(), Amplitude{});

    // Support after t steps is [-t, t] with parity t.
    const int t = state.taken_;
    for (int k = -t; k <= t; k += 2) {
        const Amplitude a0 = state.left_[state.index(k)];
        const Amplitude a1 = state.right_[state.index(k)];
        next.left_[next.index(k - 1)] += (a0 + kI * a1) * kInvSqrt2;
        next.right_[next.index(k + 1)] += (kI * a0 + a1) * kInvSqrt2;
    }
    next.taken_ = t + 1;
    return next;
}

double PositionDistribution::probability(int position) const {
    const auto it = std::lower_bound(
        probabilities.begin(), probabilities.end(), position,
        [](const auto& entry, int k) { return entry.first < k; });
    return (it != probabilities.end() && it->first == position) ? it->second : 0.0;
}

double PositionDistribution::total() const {
    double sum = 0.0;
    for (const auto& [k, p] : probabilities) {
        sum += p;
    }
    return sum;
}

PositionDistribution run_walk(int n) {
    WalkState state = init_walk(n);
    while (state.steps_taken() < n) {
        state = step_walk(state);
    }
    PositionDistribution dist;
    for (int k = -n; k <= n; k += 2) {
        const double p = std::norm(state.amplitude(0, k)) + std::norm(state.amplitude(1, k));
        if (p > 0.0) {
            dist.probabilities.emplace_back(k, p);
        }
    }
    return dist;
}

AngleDistribution::AngleDistribution(std::vector<Entry> entries, int n_max)
    : entries_(std::move(entries)), n_max_(n_max) {
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.position < b.position; });
    cumulative_.reserve(entries_.size());
    double running = 0.0;
    for (const Entry& e : entries_) {
        if (e.probability < 0.0) {
            throw std::invalid_argument("AngleDistribution: negative probability");
        }
        running += e.probability;
        cumulative_.push_back(running);
    }
}

double AngleDistribution::max_abs_angle() const {
    double m = 0.0;
    for (const Entry& e : entries_) {
        if (e.probability > 0.0) {
            m = std::max(m, std::abs(e.angle));
        }
    }
    return m;
}

double AngleDistribution::sample(Rng& rng) const {
    if (entries_.empty()) {
        throw std::logic_error("sample_angle: empty distribution");
    }
    const double target = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) {
        --it;
    }
    return entries_[static_cast<std::size_t>(it - cumulative_.begin())].angle;
}

AngleDistribution to_angle_distribution(const PositionDistribution& dist, int n_max) {
    if (n_max < 1) {
        throw std::invalid_argument("to_angle_distribution: n_max must be positive");
    }
    std::vector<AngleDistribution::Entry> entries;
    entries.reserve(dist.probabilities.size());
    for (const auto& [k, p] : dist.probabilities) {
        if (k < -n_max || k > n_max) {
            throw std::out_of_range("to_angle_distribution: position " + std::to_string(k) +
                                    " outside [-" + std::to_string(n_max) + ", " +
                                    std::to_string(n_max) + "]");
        }
        entries.push_back({k, k * std::numbers::pi / n_max, p});
    }
    return AngleDistribution(std::move(entries), n_max);
}

double sample_angle(const AngleDistribution& dist, Rng& rng) { return dist.sample(rng); }

double variance(const PositionDistribution& dist) {
    double mean = 0.0;
    double second = 0.0;
    for (const auto& [k, p] : dist.probabilities) {
        mean += p * k;
        second += p * k * k;
    }
    return std::max(0.0, second - mean * mean);
}

void write_walk_csv(std::ostream& out, const AngleDistribution& dist) {
    out << "position,angle_rad,probability\n";
    char line[96];
    for (const auto& e : dist.entries()) {
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", e.position, e.angle, e.probability);
        out << line;
    }
}

std::shared_ptr<const AngleDistribution> WalkCache::get(int walk_steps, int n_max) {
    const std::lock_guard lock(mutex_);
    const auto key = std::make_pair(walk_steps, n_max);
    if (const auto it = cache_.find(key); it != cache_.end()) {
        return it->second;
    }
    auto dist = std::make_shared<const AngleDistribution>(
        to_angle_distribution(run_walk(walk_steps), n_max));
    cache_.emplace(key, dist);
    return dist;
}

std::size_t WalkCache::size() const {
    const std::lock_guard lock(mutex_);
    return cache_.size();
}

WalkCache& WalkCache::global() {
    static WalkCache instance;
    return instance;
}

} // namespace qhw
