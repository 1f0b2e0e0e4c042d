#ifndef RISRA_RNG_HPP_
#define RISRA_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>

namespace risra {

/// Stage tags used to split one trial's randomness into independent streams.
/// The access stream is further offset per policy, so every policy sees the
/// same placements and quality measurements in a given trial.
enum class StreamTag : std::uint64_t {
    placement = 1,
    quality = 2,
    access = 16,
};

/**
 * @brief Counter-based 64-bit generator (SplitMix64 output function).
 *
 * The state is a plain counter; each draw advances it by the golden-ratio
 * increment and hashes it. Substreams are derived by hashing
 * (seed, trial, tag), so a trial's draws never depend on how trials are
 * scheduled across workers.
 *
 * Satisfies std::uniform_random_bit_generator. The helper draws below are
 * defined here rather than through <random> distributions so that results
 * are identical across standard library implementations.
 */
class Rng
{
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Stream for (seed, trial, tag): state = mix(mix(mix(seed) + trial) + tag).
    static Rng substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag);
    static Rng substream(std::uint64_t seed, std::uint64_t trial, StreamTag tag)
    {
        return substream(seed, trial, static_cast<std::uint64_t>(tag));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on [lo, hi]; returns lo exactly when lo == hi.
    double uniform(double lo, double hi);
    /// Unbiased integer in [0, n); n must be positive.
    std::size_t index(std::size_t n);
    /// Standard normal via Box-Muller (one variate per call).
    double normal();
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::uint64_t state_;
};

/// SplitMix64 finalizer; a bijective 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

} // namespace risra

#endif /* RISRA_RNG_HPP_ */
