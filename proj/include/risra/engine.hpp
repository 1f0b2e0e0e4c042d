#ifndef RISRA_ENGINE_HPP_
#define RISRA_ENGINE_HPP_

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "risra/access.hpp"
#include "risra/channel.hpp"
#include "risra/power_metrics.hpp"
#include "risra/receiver.hpp"

namespace risra {

/// Everything one Monte Carlo point needs. Defaults are the baseline scenario
/// (K = 10, S = 20, N = 100, rho_MTD = 10 mW).
struct ScenarioConfig
{
    RisGeometry ris;
    NodePlacement ap{20.0, std::numbers::pi / 4, db_to_linear(5.0)};
    Range mtd_distance{25.0, 100.0};
    Range mtd_angle{0.0, std::numbers::pi / 2};
    double mtd_gain = db_to_linear(5.0);
    RadioParams radio{0.01, dbm_to_watts(-94.0), 1.0};
    /// mtd_tx_power is taken from `radio`
    PowerParams power{1.2, 0.1, dbw_to_watts(9.0), 1.2, 0.01, 0.04, 1.5e-3, 3};
    bool always_charge_training = false;
    double access_slot = 1.0;
    double training_ratio = 0.2;
    PolicyKind policy = PolicyKind::carp();
    double estimation_c = 1.0;
    double estimation_noise_std = 0.0;
    int devices = 10;
    int slots = 20;
    int trials = 1000;
    std::uint64_t seed = 1;

    FrameTiming timing() const { return {access_slot, training_ratio, slots}; }
    PowerParams power_params() const;
    /// Training ratio actually applied to the frame length for `p`.
    double effective_training_ratio(const PolicyKind& p) const
    {
        return p.requires_training() ? training_ratio : 0.0;
    }
    /// Throws std::invalid_argument with a one-line message.
    void validate() const;
    /// Validation of everything except the policy, plus the policy given.
    void validate_for(const PolicyKind& p) const;
};

/// One frame's random scene: placements, SNRs and, when needed, measured qualities.
struct ChannelRealization
{
    std::vector<NodePlacement> placements;
    SnrMatrix snr;
    std::optional<QualityMatrix> quality;
};

struct TrialResult
{
    int successes = 0;
    std::vector<int> replica_counts;
    PowerBreakdown power;
    double throughput = 0.0;
    double energy_efficiency = 0.0;
    DecodeResult decode;

    int total_replicas() const;
};

struct AggregateResult
{
    double mean_A = 0.0;
    double mean_G = 0.0;
    double ci95_G = 0.0; ///< half-width
    double mean_P = 0.0;
    double ci95_P = 0.0;
    double ee_ratio_of_means = 0.0; ///< mean_G / mean_P
    double ee_mean_of_ratios = 0.0;
    double ci95_ee = 0.0; ///< delta-method half-width for ee_ratio_of_means
    double mean_replicas = 0.0; ///< per frame, summed over devices
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Per-trial numbers kept for aggregation.
struct TrialSummary
{
    int successes = 0;
    int replicas = 0;
    double throughput = 0.0;
    double power = 0.0;
};

ChannelRealization draw_channel(const ScenarioConfig& cfg, std::uint64_t trial,
                                bool need_quality);

TrialResult evaluate_policy(const ScenarioConfig& cfg, const PolicyKind& policy,
                            const ChannelRealization& channel, std::uint64_t trial);

/// Full pipeline for trial `trial` of cfg.policy under cfg.seed.
TrialResult simulate_frame(const ScenarioConfig& cfg, std::uint64_t trial);

/// Sample means and normal-approximation 95% CIs, summed in index order.
AggregateResult aggregate(std::span<const TrialSummary> trials, std::uint64_t seed);

/// Worker count 0 means one per hardware thread. Results do not depend on it.
AggregateResult run_monte_carlo(const ScenarioConfig& cfg, int workers = 0);

/// Runs several policies over the same channel realizations. Each entry
/// equals run_monte_carlo() with cfg.policy set to that policy.
std::vector<AggregateResult> run_policies(const ScenarioConfig& cfg,
                                          std::span<const PolicyKind> policies, int workers = 0);

enum class SweepAxis { devices, mtd_tx_power, elements, slots };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

/// Substitutes one axis value. N keeps n_x == n_z and must be a perfect square.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

struct SweepSpec
{
    SweepAxis axis = SweepAxis::devices;
    std::vector<double> values;
    ScenarioConfig base;
    std::vector<PolicyKind> policies;
};

struct SweepRow
{
    PolicyKind policy;
    double axis_value = 0.0;
    ScenarioConfig point;
    AggregateResult result;
};

/// One row per (policy, value), ordered by policy as given, then by value.
std::vector<SweepRow> sweep(const SweepSpec& spec, int workers = 0);

struct OptimalS
{
    PolicyKind policy;
    std::vector<SweepRow> curve; ///< ascending S
    int best_throughput_slots = 0;
    int best_ee_slots = 0;
};

/// Grid search over S for several policies; ties go to the smaller S.
/// S values below a policy's minimum (2 for crdsap/irsap, s for sscp) are
/// skipped for that policy only; policies valid at an S share its channel draws.
std::vector<OptimalS> optimal_over_s(const ScenarioConfig& base,
                                     std::span<const PolicyKind> policies,
                                     std::span<const int> s_values, int workers = 0);

/// Single-policy search on cfg.policy; every S must be valid for it.
OptimalS optimal_over_s(const ScenarioConfig& cfg, std::span<const int> s_values,
                        int workers = 0);

} // namespace risra

#endif /* RISRA_ENGINE_HPP_ */
