#ifndef RISRA_TESTS_SIC_ORACLE_HPP_
#define RISRA_TESTS_SIC_ORACLE_HPP_

// Exhaustive decode-schedule oracle for small SIC instances. Every decode
// order reachable by single steps is explored; the result lists the decoded
// sets of all terminal states.

#include <cstdint>
#include <set>
#include <vector>

#include "risra/grid.hpp"

namespace risra::testing {

struct OracleResult
{
    std::set<std::uint32_t> fixed_points; ///< decoded-device bitmasks with no move left
    int longest_schedule = 0;
};

inline OracleResult exhaustive_sic(const std::vector<std::vector<int>>& slot_devices,
                                   const Grid& snr, double threshold)
{
    OracleResult out;
    std::set<std::uint32_t> seen;
    std::vector<std::pair<std::uint32_t, int>> stack{{0u, 0}};
    while (!stack.empty()) {
        const auto [mask, depth] = stack.back();
        stack.pop_back();
        if (!seen.insert(mask).second)
            continue;
        bool moved = false;
        for (std::size_t s = 0; s < slot_devices.size(); ++s) {
            int alive = 0, last = -1;
            for (int k : slot_devices[s]) {
                if (!(mask & (1u << k))) {
                    ++alive;
                    last = k;
                }
            }
            if (alive == 1 && snr(last, s) >= threshold) {
                moved = true;
                stack.push_back({mask | (1u << last), depth + 1});
            }
        }
        if (!moved) {
            out.fixed_points.insert(mask);
            if (depth > out.longest_schedule)
                out.longest_schedule = depth;
        }
    }
    return out;
}

inline std::uint32_t to_mask(const std::vector<int>& devices)
{
    std::uint32_t m = 0;
    for (int k : devices)
        m |= 1u << k;
    return m;
}

} // namespace risra::testing

#endif /* RISRA_TESTS_SIC_ORACLE_HPP_ */
