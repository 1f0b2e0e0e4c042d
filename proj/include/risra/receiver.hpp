#ifndef RISRA_RECEIVER_HPP_
#define RISRA_RECEIVER_HPP_

#include <span>
#include <string>
#include <vector>

#include "risra/access.hpp"
#include "risra/grid.hpp"

namespace risra {

/// Per-slot lists of devices that placed a replica there (0-based, ascending).
struct SlotOccupancy
{
    std::vector<std::vector<int>> devices;

    std::size_t slots() const { return devices.size(); }
};

struct DecodeEvent
{
    int iteration; ///< 1-based pass number
    int slot;
    int device;

    bool operator==(const DecodeEvent&) const = default;
};

struct DecodeResult
{
    std::vector<int> decoded; ///< ascending device indices
    int iterations = 0;       ///< passes that decoded at least one device
    std::vector<DecodeEvent> trace;
};

SlotOccupancy build_occupancy(const AccessDecision& decision, int slots);

/**
 * @brief Successive interference cancellation over one access block.
 *
 * Each pass visits the slots in `scan_order` (all slots ascending when
 * empty). A slot holding exactly one undecoded replica is decoded when that
 * device's SNR in the slot reaches `threshold`; the device's replicas are
 * then cancelled from every slot immediately. Passes repeat until one
 * decodes nothing. The decoded set is the same for every scan order.
 */
DecodeResult sic_decode(const SlotOccupancy& occupancy, const SnrMatrix& snr, double threshold,
                        std::span<const int> scan_order = {});

inline int count_successes(const DecodeResult& result)
{
    return static_cast<int>(result.decoded.size());
}

/// One "iter,slot,device" line per decode event, 1-based slot and device.
std::string format_trace(const DecodeResult& result);

} // namespace risra

#endif /* RISRA_RECEIVER_HPP_ */
