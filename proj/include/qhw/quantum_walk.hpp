#pragma once

/// @file quantum_walk.hpp
/// Discrete-time Hadamard walk on the line and the rotation-angle distribution
/// derived from it.
///
/// The coin is H = (1/sqrt2) [[1, i], [i, 1]] acting on the chirality pair
/// (a0, a1) at every site. After the coin, chirality 0 shifts to k - 1 and
/// chirality 1 shifts to k + 1. The walk starts at the origin with
/// a0 = i/sqrt2 and a1 = 1/sqrt2. Under this convention the distribution
/// drifts toward negative positions; the opposite shift convention produces
/// the mirror image P(k) -> P(-k).

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "qhw/rng.hpp"

namespace qhw {

using Amplitude = std::complex<double>;

class WalkState {
  public:
    /// Initial state of an n-step walk on positions [-n, n].
    explicit WalkState(int num_steps_total);

    int num_steps_total() const { return total_; }
    int steps_taken() const { return taken_; }

    /// Amplitude for chirality (0 or 1) at position k; zero outside [-n, n].
    Amplitude amplitude(int chirality, int position) const;

    /// Sum of |amplitude|^2 over all sites and chiralities.
    double norm_squared() const;

  private:
    friend WalkState step_walk(const WalkState& state);

    std::size_t index(int position) const { return static_cast<std::size_t>(position + total_); }

    int total_;
    int taken_ = 0;
    std::vector<Amplitude> left_;  // chirality 0
    std::vector<Amplitude> right_; // chirality 1
};

/// Probability of each reachable lattice position, sorted by position.
/// Positions with exactly zero probability (wrong parity, or the
/// interference-cancelled right edge) are omitted.
struct PositionDistribution {
    std::vector<std::pair<int, double>> probabilities;

    double probability(int position) const;
    double total() const;
};

/// Rotation angles k*pi/n_max with their probabilities, sorted by angle.
class AngleDistribution {
  public:
    struct Entry {
        int position;
        double angle;
        double probability;
    };

    AngleDistribution(std::vector<Entry> entries, int n_max);

    const std::vector<Entry>& entries() const { return entries_; }
    int n_max() const { return n_max_; }
    bool empty() const { return entries_.empty(); }

    /// Largest |angle| with nonzero probability.
    double max_abs_angle() const;

    /// Inverse-CDF draw; consumes exactly one uniform from rng.
    double sample(Rng& rng) const;

  private:
    std::vector<Entry> entries_;
    std::vector<double> cumulative_;
    int n_max_;
};

WalkState init_walk(int n);

/// One coin flip followed by the chirality-dependent shift.
/// Throws std::logic_error when the walk already took all of its steps.
WalkState step_walk(const WalkState& state);

/// Position distribution after exactly n steps from the initial state.
PositionDistribution run_walk(int n);

/// Maps position k to angle k*pi/n_max. Throws std::out_of_range when a
/// position lies outside [-n_max, n_max].
AngleDistribution to_angle_distribution(const PositionDistribution& dist, int n_max);

double sample_angle(const AngleDistribution& dist, Rng& rng);

/// E[k^2] - E[k]^2.
double variance(const PositionDistribution& dist);

/// Writes `position,angle_rad,probability` rows with a header line.
void write_walk_csv(std::ostream& out, const AngleDistribution& dist);

/// Thread-safe memo of angle distributions keyed by (walk steps, n_max).
class WalkCache {
  public:
    std::shared_ptr<const AngleDistribution> get(int walk_steps, int n_max);

    std::size_t size() const;

    /// Process-wide instance shared by the search operators.
    static WalkCache& global();

  private:
    mutable std::mutex mutex_;
    std::map<std::pair<int, int>, std::shared_ptr<const AngleDistribution>> cache_;
};

} // namespace qhw
