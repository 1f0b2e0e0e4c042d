#include "risra/power_metrics.hpp"

#include <stdexcept>

namespace risra {

void PowerParams::validate() const
{
    if (!(ap_pa_inverse_eff > 1.0) || !(mtd_pa_inverse_eff > 1.0))
        throw std::invalid_argument("PA inverse efficiencies must be > 1");
    if (!(ap_tx_power > 0.0) || !(ap_static > 0.0) || !(mtd_tx_power > 0.0) ||
        !(mtd_static > 0.0) || !(phase_shifter_power > 0.0))
        throw std::invalid_argument("all power parameters must be positive");
    if (phase_shifter_bits < 1)
        throw std::invalid_argument("phase shifter resolution must be >= 1 bit");
}

void FrameTiming::validate() const
{
    if (!(access_slot > 0.0))
        throw std::invalid_argument("access slot duration must be positive");
    if (!(training_ratio >= 0.0))
        throw std::invalid_argument("training slot ratio must be >= 0");
    if (slots < 1)
        throw std::invalid_argument("frame needs at least one slot");
}

double ap_power(const PowerParams& params, int slots, bool training_used)
{
    if (!training_used)
        return params.ap_static;
    return slots * params.ap_pa_inverse_eff * params.ap_tx_power + params.ap_static;
}

double ris_power(int elements, double phase_shifter_power)
{
    return elements * phase_shifter_power;
}

double mtd_power(const PowerParams& params, int replicas)
{
    return replicas * params.mtd_pa_inverse_eff * params.mtd_tx_power + params.mtd_static;
}

double total_power(double ap, double ris, std::span<const double> mtd)
{
    double sum = ap + ris;
    for (double p : mtd)
        sum += p;
    return sum;
}

double throughput(int successes, const FrameTiming& timing, bool training_used)
{
    const double r = training_used ? timing.training_ratio : 0.0;
    return successes / ((1.0 + r) * timing.slots * timing.access_slot);
}

double energy_efficiency(double throughput, double power)
{
    if (!(power > 0.0))
        throw std::invalid_argument("energy efficiency needs positive power");
    return throughput / power;
}

FrameMetrics frame_metrics(const PowerParams& params, const FrameTiming& timing, int elements,
                           int successes, std::span<const int> replica_counts,
                           bool training_used, bool charge_ap_training)
{
    FrameMetrics m;
    m.successes = successes;
    m.throughput = throughput(successes, timing, training_used);
    m.power.ap = ap_power(params, timing.slots, training_used || charge_ap_training);
    m.power.ris = ris_power(elements, params.phase_shifter_power);
    for (int replicas : replica_counts)
        m.power.mtd += mtd_power(params, replicas);
    m.energy_efficiency = energy_efficiency(m.throughput, m.power.total());
    return m;
}

} // namespace risra
