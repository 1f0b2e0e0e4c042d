#include "risra/access.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <numeric>
#include <stdexcept>

namespace risra {

std::size_t AccessDecision::total_replicas() const
{
    std::size_t total = 0;
    for (const auto& slots : slots_per_device)
        total += slots.size();
    return total;
}

std::vector<int> AccessDecision::replica_counts() const
{
    std::vector<int> counts;
    counts.reserve(slots_per_device.size());
    for (const auto& slots : slots_per_device)
        counts.push_back(static_cast<int>(slots.size()));
    return counts;
}

PolicyKind PolicyKind::parse(std::string_view name, int sscp_replicas)
{
    if (name == "carp")
        return carp();
    if (name == "sscp") {
        if (sscp_replicas < 1)
            throw std::invalid_argument("sscp replica count must be >= 1");
        return sscp(sscp_replicas);
    }
    if (name == "crdsap")
        return crdsap();
    if (name == "irsap")
        return irsap();
    throw std::invalid_argument("unknown policy '" + std::string(name) +
                                "' (expected carp, sscp, crdsap or irsap)");
}

int PolicyKind::min_slots() const
{
    switch (kind) {
    case Policy::carp:
        return 1;
    case Policy::sscp:
        return sscp_replicas;
    case Policy::crdsap:
    case Policy::irsap:
        return 2;
    }
    return 1;
}

std::string PolicyKind::name() const
{
    switch (kind) {
    case Policy::carp:
        return "carp";
    case Policy::sscp:
        return "sscp";
    case Policy::crdsap:
        return "crdsap";
    case Policy::irsap:
        return "irsap";
    }
    return "unknown";
}

std::uint64_t PolicyKind::stream_offset() const
{
    switch (kind) {
    case Policy::carp:
        return 0;
    case Policy::crdsap:
        return 1;
    case Policy::irsap:
        return 2;
    case Policy::sscp:
        return 100 + static_cast<std::uint64_t>(sscp_replicas);
    }
    return 0;
}

QualityMatrix measure_quality(const SnrMatrix& snr, std::span<const double> c,
                              std::span<const double> noise_std, Rng& rng)
{
    if (c.size() != snr.rows() || noise_std.size() != snr.rows())
        throw std::invalid_argument("quality constants must have one entry per device");

    QualityMatrix q;
    q.values = Grid(snr.rows(), snr.cols());
    q.c.assign(c.begin(), c.end());
    q.noise_std.assign(noise_std.begin(), noise_std.end());
    for (std::size_t k = 0; k < snr.rows(); ++k) {
        for (std::size_t s = 0; s < snr.cols(); ++s) {
            double value = c[k] * snr(k, s);
            if (noise_std[k] > 0.0)
                value += noise_std[k] * rng.normal();
            q.values(k, s) = std::max(value, 0.0);
        }
    }
    return q;
}

QualityMatrix perfect_quality(const SnrMatrix& snr)
{
    QualityMatrix q;
    q.values = snr;
    q.c.assign(snr.rows(), 1.0);
    q.noise_std.assign(snr.rows(), 0.0);
    return q;
}

std::vector<double> carp_probabilities(std::span<const double> quality)
{
    const double total = std::accumulate(quality.begin(), quality.end(), 0.0);
    std::vector<double> p(quality.size());
    const bool all_equal = std::adjacent_find(quality.begin(), quality.end(),
                                              std::not_equal_to<>()) == quality.end();
    if (!(total > 0.0) || all_equal) {
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(quality.size()));
        return p;
    }
    for (std::size_t s = 0; s < quality.size(); ++s)
        p[s] = quality[s] / total;
    return p;
}

std::vector<int> carp_select(Rng& rng, std::span<const double> probabilities,
                             std::span<const double> quality)
{
    std::vector<int> chosen;
    for (std::size_t s = 0; s < probabilities.size(); ++s) {
        if (rng.bernoulli(probabilities[s]))
            chosen.push_back(static_cast<int>(s));
    }
    if (chosen.empty()) {
        // Tied maxima are drawn uniformly from the same stream, which keeps
        // the selection law symmetric across slots of equal quality.
        const double best = *std::max_element(quality.begin(), quality.end());
        std::vector<int> tied;
        for (std::size_t s = 0; s < quality.size(); ++s) {
            if (quality[s] == best)
                tied.push_back(static_cast<int>(s));
        }
        chosen.push_back(tied.size() == 1 ? tied.front() : tied[rng.index(tied.size())]);
    }
    return chosen;
}

std::vector<int> sscp_select(std::span<const double> quality, int replicas)
{
    const int slots = static_cast<int>(quality.size());
    if (replicas < 1 || replicas > slots)
        throw std::invalid_argument("sscp needs 1 <= s <= S");
    std::vector<int> order(slots);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return quality[a] > quality[b]; });
    order.resize(replicas);
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<int> sample_distinct_slots(Rng& rng, int slots, int count)
{
    if (count < 0 || count > slots)
        throw std::invalid_argument("cannot pick that many distinct slots");
    std::vector<int> pool(slots);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < count; ++i) {
        const auto j = i + static_cast<int>(rng.index(static_cast<std::size_t>(slots - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<int> crdsap_select(Rng& rng, int slots)
{
    if (slots < 2)
        throw std::invalid_argument("crdsap needs at least 2 slots");
    return sample_distinct_slots(rng, slots, 2);
}

std::vector<double> irsap_degree_pmf(int slots)
{
    if (slots < 2)
        throw std::invalid_argument("irsap needs at least 2 slots");
    const double scale = 1.0 + 1.0 / (slots - 1);
    std::vector<double> pmf;
    pmf.reserve(slots - 1);
    for (int s = 2; s <= slots; ++s)
        pmf.push_back(scale / (static_cast<double>(s - 1) * s));
    return pmf;
}

double irsap_mean_degree(int slots)
{
    if (slots < 2)
        throw std::invalid_argument("irsap needs at least 2 slots");
    double harmonic = 0.0;
    for (int s = 2; s <= slots; ++s)
        harmonic += 1.0 / (s - 1);
    return (1.0 + 1.0 / (slots - 1)) * harmonic;
}

std::vector<int> irsap_select(Rng& rng, int slots)
{
    if (slots < 2)
        throw std::invalid_argument("irsap needs at least 2 slots");
    const double scale = 1.0 + 1.0 / (slots - 1);
    const double u = rng.uniform();
    int degree = slots;
    double cdf = 0.0;
    for (int s = 2; s < slots; ++s) {
        cdf += scale / (static_cast<double>(s - 1) * s);
        if (u < cdf) {
            degree = s;
            break;
        }
    }
    return sample_distinct_slots(rng, slots, degree);
}

AccessDecision decide_access(const PolicyKind& policy, const QualityMatrix* quality, Rng& rng,
                             int devices, int slots)
{
    if (slots < policy.min_slots())
        throw std::invalid_argument(policy.name() + " needs at least " +
                                    std::to_string(policy.min_slots()) + " slots, got " +
                                    std::to_string(slots));
    if (policy.requires_training()) {
        if (quality == nullptr)
            throw std::invalid_argument(policy.name() + " requires measured channel qualities");
        if (quality->values.rows() != static_cast<std::size_t>(devices) ||
            quality->values.cols() != static_cast<std::size_t>(slots))
            throw std::invalid_argument("quality matrix does not match K x S");
    } else if (quality != nullptr) {
        std::clog << "warning: " << policy.name()
                  << " does not use channel qualities; ignoring the supplied matrix\n";
    }

    AccessDecision decision;
    decision.slots_per_device.reserve(devices);
    for (int k = 0; k < devices; ++k) {
        switch (policy.kind) {
        case Policy::carp: {
            const auto row = quality->values.row(k);
            decision.slots_per_device.push_back(carp_select(rng, carp_probabilities(row), row));
            break;
        }
        case Policy::sscp:
            decision.slots_per_device.push_back(
                sscp_select(quality->values.row(k), policy.sscp_replicas));
            break;
        case Policy::crdsap:
            decision.slots_per_device.push_back(crdsap_select(rng, slots));
            break;
        case Policy::irsap:
            decision.slots_per_device.push_back(irsap_select(rng, slots));
            break;
        }
    }
    return decision;
}

} // namespace risra
