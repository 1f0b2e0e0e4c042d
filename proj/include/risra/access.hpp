#ifndef RISRA_ACCESS_HPP_
#define RISRA_ACCESS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "risra/grid.hpp"
#include "risra/rng.hpp"

namespace risra {

/// Channel qualities measured by the devices during downlink training.
struct QualityMatrix
{
    Grid values;                   ///< q_k(s), clamped at zero
    std::vector<double> c;         ///< per-device downlink quality constant
    std::vector<double> noise_std; ///< per-device estimation error std
};

/**
 * Slot selections for one frame. Slot indices are 0-based throughout the
 * library; each device's list is sorted ascending and duplicate-free.
 */
struct AccessDecision
{
    std::vector<std::vector<int>> slots_per_device;

    std::size_t devices() const { return slots_per_device.size(); }
    std::size_t total_replicas() const;
    std::vector<int> replica_counts() const;
};

enum class Policy { carp, sscp, crdsap, irsap };

struct PolicyKind
{
    Policy kind = Policy::carp;
    int sscp_replicas = 2; ///< only meaningful for sscp

    static PolicyKind carp() { return {Policy::carp, 2}; }
    static PolicyKind sscp(int s) { return {Policy::sscp, s}; }
    static PolicyKind crdsap() { return {Policy::crdsap, 2}; }
    static PolicyKind irsap() { return {Policy::irsap, 2}; }

    /// Parses "carp", "sscp", "crdsap" or "irsap"; sscp takes `sscp_replicas`.
    static PolicyKind parse(std::string_view name, int sscp_replicas = 2);

    bool requires_training() const { return kind == Policy::carp || kind == Policy::sscp; }
    /// Smallest frame length the policy can operate on.
    int min_slots() const;
    std::string name() const;
    /// Offset added to StreamTag::access; distinct for every policy variant.
    std::uint64_t stream_offset() const;

    bool operator==(const PolicyKind&) const = default;
};

/// q_k(s) = c_k gamma_k(s) + eps_k(s), eps Gaussian; negative values clamp to 0.
QualityMatrix measure_quality(const SnrMatrix& snr, std::span<const double> c,
                              std::span<const double> noise_std, Rng& rng);

/// Perfect estimation: q == gamma.
QualityMatrix perfect_quality(const SnrMatrix& snr);

/// Per-slot transmit probabilities q(s)/sum(q); uniform for an all-zero row.
std::vector<double> carp_probabilities(std::span<const double> quality);

/// Independent Bernoulli(p(s)) per slot; falls back to {argmax q} when nothing
/// is picked, with tied maxima drawn uniformly.
std::vector<int> carp_select(Rng& rng, std::span<const double> probabilities,
                             std::span<const double> quality);

/// The `replicas` strongest slots, ties to the lower index.
std::vector<int> sscp_select(std::span<const double> quality, int replicas);

/// Two distinct slots, uniform over pairs.
std::vector<int> crdsap_select(Rng& rng, int slots);

/// Degree pmf over s = 2..S; element i holds P(s = i + 2).
std::vector<double> irsap_degree_pmf(int slots);

/// Expected replicas per device, (1 + 1/(S-1)) * sum_{s=2..S} 1/(s-1).
double irsap_mean_degree(int slots);

/// Degree by inverse CDF, then that many distinct slots uniformly.
std::vector<int> irsap_select(Rng& rng, int slots);

/// Uniform `count`-subset of {0..slots-1} by partial Fisher-Yates, sorted.
std::vector<int> sample_distinct_slots(Rng& rng, int slots, int count);

/// Builds every device's selection with the given policy. `quality` must be
/// non-null iff the policy needs training; it is ignored (with a warning)
/// for the random policies.
AccessDecision decide_access(const PolicyKind& policy, const QualityMatrix* quality, Rng& rng,
                             int devices, int slots);

} // namespace risra

#endif /* RISRA_ACCESS_HPP_ */
