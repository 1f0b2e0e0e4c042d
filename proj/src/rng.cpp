#include "risra/rng.hpp"

#include <cmath>
#include <numbers>

namespace risra {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x)
{
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag)
{
    std::uint64_t key = mix64(seed + kGolden);
    key = mix64(key + trial * kGolden + 1);
    key = mix64(key + tag * 0xD1B54A32D192ED03ULL);
    return Rng(key);
}

Rng::result_type Rng::operator()()
{
    state_ += kGolden;
    return mix64(state_);
}

double Rng::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    if (lo == hi)
        return lo;
    return lo + (hi - lo) * uniform();
}

std::size_t Rng::index(std::size_t n)
{
    // Lemire's multiply-shift with rejection.
    const std::uint64_t range = n;
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * range;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t floor = (0 - range) % range;
        while (low < floor) {
            m = static_cast<unsigned __int128>((*this)()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

double Rng::normal()
{
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace risra
