#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qhw {

/// Seeded 64-bit random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The std distributions are not (their algorithms vary between
/// standard libraries), so uniform reals and bounded integers are derived here
/// from raw engine output. Results are bit-reproducible for a given seed on any
/// conforming toolchain.
class Rng {
  public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform();

    /// Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    /// Bernoulli trial with success probability p.
    bool chance(double p) { return uniform() < p; }

  private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a hash of a label, used to name independent streams.
std::uint64_t label_hash(std::string_view label);

/// Seed for the stream identified by (master seed, concern label, coordinates).
/// Different labels or coordinates give statistically independent streams.
std::uint64_t stream_seed(std::uint64_t master, std::string_view label,
                          std::initializer_list<std::uint64_t> coords);

inline Rng make_stream(std::uint64_t master, std::string_view label,
                       std::initializer_list<std::uint64_t> coords) {
    return Rng(stream_seed(master, label, coords));
}

} // namespace qhw
