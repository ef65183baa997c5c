#pragma once

/// @file qea_core.hpp
/// Q-bit individuals, observation, rotation updates and the elitist solution
/// bank shared by the quantum-inspired optimizers.

#include <array>
#include <numbers>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhw/knapsack.hpp"
#include "qhw/rng.hpp"

namespace qhw {

/// Individual of q-bits stored as angles; bit i has amplitudes
/// (alpha, beta) = (cos theta_i, sin theta_i) and observes as 1 with
/// probability sin^2 theta_i. Angles are unbounded.
struct QbitIndividual {
    std::vector<double> thetas;

    std::size_t size() const { return thetas.size(); }
    double alpha(std::size_t i) const;
    double beta(std::size_t i) const;
    double probability_one(std::size_t i) const;

    bool operator==(const QbitIndividual&) const = default;
};

/// Uniform superposition: every theta = pi/4.
QbitIndividual new_individual(std::size_t num_bits);

Bitstring observe(const QbitIndividual& ind, Rng& rng);

/// theta_i += deltas[i]. Throws std::invalid_argument on length mismatch.
QbitIndividual rotate_all(const QbitIndividual& ind, std::span<const double> deltas);

/// One row of the rotation lookup table. The rotation is `steps * delta`
/// applied in the direction that moves sin^2(theta) toward b_i.
struct RotationRule {
    int x;
    int b;
    bool x_not_worse;
    int steps; // 0 or 1
};

// Rows with x == b never rotate. When x differs from b the rotation fires only
// if x is worse than the stored best, pulling the q-bit toward the bank bit.
inline constexpr std::array<RotationRule, 8> kRotationTable{{
    {0, 0, false, 0},
    {0, 0, true, 0},
    {0, 1, false, 1},
    {0, 1, true, 0},
    {1, 0, false, 1},
    {1, 0, true, 0},
    {1, 1, false, 0},
    {1, 1, true, 0},
}};

/// Sign of the rotation that moves the observation probability toward
/// `target_bit` from angle theta: +1, -1, or 0 when already at the target pole.
/// The sign of alpha*beta picks the quadrant; |alpha*beta| below 1e-12 is
/// treated as a pole.
int rotation_direction(double theta, int target_bit);

inline constexpr double kDefaultDeltaTheta = 0.01 * std::numbers::pi;

/// Rotation-gate update of `ind` toward the bank bitstring b.
QbitIndividual qea_update(const QbitIndividual& ind, const Bitstring& x, const Bitstring& b,
                          bool x_not_worse, double delta_theta = kDefaultDeltaTheta);

struct ScoredSolution {
    Bitstring bits;
    Fitness fitness = 0;

    bool operator==(const ScoredSolution&) const = default;
};

/// Per-slot best solutions B(t) plus the overall best b. Empty until the
/// first population is stored.
class SolutionBank {
  public:
    SolutionBank() = default;

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<ScoredSolution>& entries() const { return entries_; }
    const ScoredSolution& entry(std::size_t j) const { return entries_.at(j); }
    const ScoredSolution& global_best() const;

    bool operator==(const SolutionBank&) const = default;

  private:
    friend SolutionBank update_bank(const SolutionBank& bank,
                                    std::span<const ScoredSolution> population);
    friend SolutionBank migrate(const SolutionBank& bank, std::size_t generation,
                                std::size_t period);

    std::vector<ScoredSolution> entries_;
    std::optional<ScoredSolution> global_best_;
};

/// Slot j keeps the fitter of its entry and population[j]; ties keep the
/// incumbent. An empty bank adopts the population.
SolutionBank update_bank(const SolutionBank& bank, std::span<const ScoredSolution> population);

/// Global migration: on generations that are multiples of `period` every slot
/// is overwritten with the global best.
SolutionBank migrate(const SolutionBank& bank, std::size_t generation, std::size_t period);

// {"thetas": [radians...]}
std::string individual_to_json(const QbitIndividual& ind);
QbitIndividual individual_from_json(std::string_view text);

} // namespace qhw
