#include "qhw/qea_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace qhw {

double QbitIndividual::alpha(std::size_t i) const { return std::cos(thetas.at(i)); }
double QbitIndividual::beta(std::size_t i) const { return std::sin(thetas.at(i)); }

double QbitIndividual::probability_one(std::size_t i) const {
    const double b = beta(i);
    return b * b;
}

QbitIndividual new_individual(std::size_t num_bits) {
    if (num_bits == 0) {
        throw std::invalid_argument("new_individual: need at least one q-bit");
    }
    return QbitIndividual{std::vector<double>(num_bits, std::numbers::pi / 4)};
}

Bitstring observe(const QbitIndividual& ind, Rng& rng) {
    Bitstring bits(ind.size());
    for (std::size_t i = 0; i < ind.size(); ++i) {
        bits[i] = rng.uniform() < ind.probability_one(i) ? 1 : 0;
    }
    return bits;
}

QbitIndividual rotate_all(const QbitIndividual& ind, std::span<const double> deltas) {
    if (deltas.size() != ind.size()) {
        throw std::invalid_argument("rotate_all: " + std::to_string(deltas.size()) +
                                    " deltas for " + std::to_string(ind.size()) + " q-bits");
    }
    QbitIndividual out = ind;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.thetas[i] += deltas[i];
    }
    return out;
}

int rotation_direction(double theta, int target_bit) {
    const double a = std::cos(theta);
    const double b = std::sin(theta);
    const double ab = a * b;
    if (std::abs(ab) < 1e-12) {
        const bool at_zero_pole = b * b < 0.5;
        if (target_bit == 1) {
            return at_zero_pole ? 1 : 0;
        }
        return at_zero_pole ? 0 : -1;
    }
    // d/dtheta sin^2(theta) = 2 alpha beta
    const int up = ab > 0.0 ? 1 : -1;
    return target_bit == 1 ? up : -up;
}

QbitIndividual qea_update(const QbitIndividual& ind, const Bitstring& x, const Bitstring& b,
                          bool x_not_worse, double delta_theta) {
    if (x.size() != ind.size() || b.size() != ind.size()) {
        throw std::invalid_argument("qea_update: individual, x and b differ in length");
    }
    QbitIndividual out = ind;
    for (std::size_t i = 0; i < ind.size(); ++i) {
        const int xi = x[i] ? 1 : 0;
        const int bi = b[i] ? 1 : 0;
        const std::size_t row = static_cast<std::size_t>(xi * 4 + bi * 2 + (x_not_worse ? 1 : 0));
        const int steps = kRotationTable[row].steps;
        if (steps != 0) {
            out.thetas[i] += steps * rotation_direction(ind.thetas[i], bi) * delta_theta;
        }
    }
    return out;
}

const ScoredSolution& SolutionBank::global_best() const {
    if (!global_best_) {
        throw std::logic_error("SolutionBank::global_best: bank is empty");
    }
    return *global_best_;
}

SolutionBank update_bank(const SolutionBank& bank, std::span<const ScoredSolution> population) {
    SolutionBank out = bank;
    if (out.entries_.empty()) {
        out.entries_.assign(population.begin(), population.end());
    } else {
        if (population.size() != out.entries_.size()) {
            throw std::invalid_argument("update_bank: population size " +
                                        std::to_string(population.size()) +
                                        " differs from bank size " +
                                        std::to_string(out.entries_.size()));
        }
        for (std::size_t j = 0; j < population.size(); ++j) {
            if (population[j].fitness > out.entries_[j].fitness) {
                out.entries_[j] = population[j];
            }
        }
    }
    for (const ScoredSolution& e : out.entries_) {
        if (!out.global_best_ || e.fitness > out.global_best_->fitness) {
            out.global_best_ = e;
        }
    }
    return out;
}

SolutionBank migrate(const SolutionBank& bank, std::size_t generation, std::size_t period) {
    if (period == 0) {
        throw std::invalid_argument("migrate: period must be at least 1");
    }
    SolutionBank out = bank;
    if (generation % period == 0 && out.global_best_) {
        for (ScoredSolution& e : out.entries_) {
            e = *out.global_best_;
        }
    }
    return out;
}

std::string individual_to_json(const QbitIndividual& ind) {
    return nlohmann::json{{"thetas", ind.thetas}}.dump();
}

QbitIndividual individual_from_json(std::string_view text) {
    QbitIndividual ind;
    try {
        ind.thetas = nlohmann::json::parse(text).at("thetas").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed individual JSON: ") + e.what());
    }
    for (std::size_t i = 0; i < ind.size(); ++i) {
        const double a = ind.alpha(i);
        const double b = ind.beta(i);
        if (!std::isfinite(ind.thetas[i]) || std::abs(a * a + b * b - 1.0) > 1e-12) {
            throw std::runtime_error("individual JSON: q-bit " + std::to_string(i) +
                                     " is not normalized");
        }
    }
    return ind;
}

} // namespace qhw
