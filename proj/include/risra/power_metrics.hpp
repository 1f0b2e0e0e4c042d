#ifndef RISRA_POWER_METRICS_HPP_
#define RISRA_POWER_METRICS_HPP_

#include <span>

namespace risra {

struct PowerParams
{
    double ap_pa_inverse_eff = 1.2;   ///< xi_AP
    double ap_tx_power = 0.1;         ///< [W] per training slot
    double ap_static = 7.943282347242815; ///< [W] (9 dBW)
    double mtd_pa_inverse_eff = 1.2;  ///< xi_MTD
    double mtd_tx_power = 0.01;       ///< [W]
    double mtd_static = 0.04;         ///< [W]
    double phase_shifter_power = 1.5e-3; ///< [W] per element
    int phase_shifter_bits = 3;

    void validate() const;
};

struct FrameTiming
{
    double access_slot = 1.0;    ///< T_as [s]
    double training_ratio = 0.2; ///< r = T_ts / T_as
    int slots = 20;

    void validate() const;
};

struct PowerBreakdown
{
    double ap = 0.0;
    double ris = 0.0;
    double mtd = 0.0; ///< sum over contending devices

    double total() const { return ap + ris + mtd; }
};

struct FrameMetrics
{
    int successes = 0;
    double throughput = 0.0; ///< [packet/s]
    PowerBreakdown power;
    double energy_efficiency = 0.0; ///< [packet/s/W]
};

/// Training term S*xi*rho is charged only when the downlink training ran.
double ap_power(const PowerParams& params, int slots, bool training_used);
double ris_power(int elements, double phase_shifter_power);
double mtd_power(const PowerParams& params, int replicas);
double total_power(double ap, double ris, std::span<const double> mtd);

/// G = A / ((1 + r_eff) S T_as), r_eff = 0 without training.
double throughput(int successes, const FrameTiming& timing, bool training_used);
/// Throws std::invalid_argument for nonpositive power.
double energy_efficiency(double throughput, double power);

/// Metrics of one frame given its realized replica counts.
FrameMetrics frame_metrics(const PowerParams& params, const FrameTiming& timing, int elements,
                           int successes, std::span<const int> replica_counts,
                           bool training_used, bool charge_ap_training);

} // namespace risra

#endif /* RISRA_POWER_METRICS_HPP_ */
