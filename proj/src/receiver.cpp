#include "risra/receiver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace risra {

SlotOccupancy build_occupancy(const AccessDecision& decision, int slots)
{
    SlotOccupancy occ;
    occ.devices.resize(slots);
    for (std::size_t k = 0; k < decision.slots_per_device.size(); ++k) {
        for (int s : decision.slots_per_device[k]) {
            if (s < 0 || s >= slots)
                throw std::out_of_range("access decision references slot outside the frame");
            occ.devices[s].push_back(static_cast<int>(k));
        }
    }
    return occ;
}

DecodeResult sic_decode(const SlotOccupancy& occupancy, const SnrMatrix& snr, double threshold,
                        std::span<const int> scan_order)
{
    const int slots = static_cast<int>(occupancy.slots());
    if (snr.cols() != occupancy.slots())
        throw std::invalid_argument("SNR matrix width does not match the number of slots");

    std::vector<int> order;
    if (scan_order.empty()) {
        order.resize(slots);
        std::iota(order.begin(), order.end(), 0);
    } else {
        order.assign(scan_order.begin(), scan_order.end());
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
            if (sorted[i] != i || static_cast<int>(sorted.size()) != slots)
                throw std::invalid_argument("scan order must be a permutation of the slots");
        }
    }

    // Per-slot count of undecoded replicas.
    std::vector<int> remaining(slots);
    for (int s = 0; s < slots; ++s) {
        remaining[s] = static_cast<int>(occupancy.devices[s].size());
        for (int k : occupancy.devices[s]) {
            if (k < 0 || static_cast<std::size_t>(k) >= snr.rows())
                throw std::out_of_range("occupancy references a device outside the SNR matrix");
        }
    }

    // Slots of each device, for cancellation.
    std::vector<std::vector<int>> device_slots(snr.rows());
    for (int s = 0; s < slots; ++s) {
        for (int k : occupancy.devices[s])
            device_slots[k].push_back(s);
    }

    std::vector<char> decoded(snr.rows(), 0);
    DecodeResult result;
    for (int pass = 1;; ++pass) {
        bool progress = false;
        for (int s : order) {
            if (remaining[s] != 1)
                continue;
            const auto& here = occupancy.devices[s];
            const auto it = std::find_if(here.begin(), here.end(),
                                         [&](int k) { return !decoded[k]; });
            const int k = *it;
            if (snr(k, s) < threshold)
                continue;
            decoded[k] = 1;
            result.trace.push_back({pass, s, k});
            for (int other : device_slots[k])
                --remaining[other];
            progress = true;
        }
        if (!progress)
            break;
        result.iterations = pass;
    }

    for (std::size_t k = 0; k < decoded.size(); ++k) {
        if (decoded[k])
            result.decoded.push_back(static_cast<int>(k));
    }
    return result;
}

std::string format_trace(const DecodeResult& result)
{
    std::string out;
    for (const auto& e : result.trace) {
        out += std::to_string(e.iteration) + "," + std::to_string(e.slot + 1) + "," +
               std::to_string(e.device + 1) + "\n";
    }
    return out;
}

} // namespace risra
