#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "risra/power_metrics.hpp"

using namespace risra;

namespace {

const PowerParams table{1.2, 0.1, 7.94328234724281502, 1.2, 0.01, 0.04, 1.5e-3, 3};
const FrameTiming baseline{1.0, 0.2, 20};

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST_CASE("AP power")
{
    CHECK(rel(ap_power(table, 20, true), 10.3432823472428150) < 1e-6);
    CHECK(rel(ap_power(table, 20, true), 10.3432823472428150) < 1e-15);
    CHECK(ap_power(table, 20, false) == table.ap_static);
    CHECK(ap_power(table, 0, true) == table.ap_static);
    for (int s = 1; s < 40; ++s)
        CHECK(ap_power(table, s + 1, true) > ap_power(table, s, true));
}

TEST_CASE("RIS power")
{
    CHECK(ris_power(100, 1.5e-3) == 0.15);
    CHECK(ris_power(1, 1.5e-3) == 1.5e-3);
    CHECK(ris_power(200, 1.5e-3) == 2 * ris_power(100, 1.5e-3));
}

TEST_CASE("MTD power")
{
    CHECK(mtd_power(table, 2) == 0.064);
    CHECK(rel(mtd_power(table, 2) - mtd_power(table, 1), 1.2 * 0.01) < 1e-12);
    PowerParams quiet = table;
    quiet.mtd_tx_power = 1e-300;
    CHECK(mtd_power(quiet, 3) == doctest::Approx(0.04).epsilon(1e-15));
}

TEST_CASE("total power")
{
    CHECK(total_power(10.0, 0.15, {}) == 10.15);
    const std::vector<double> mtd(10, mtd_power(table, 2));
    const double p = total_power(ap_power(table, 20, true), ris_power(100, 1.5e-3), mtd);
    CHECK(rel(p, 11.1332823472428150) < 1e-14);
    std::vector<double> mixed{0.3, 0.01, 2.0, 0.064};
    const double a = total_power(1.0, 0.1, mixed);
    std::reverse(mixed.begin(), mixed.end());
    CHECK(a == doctest::Approx(total_power(1.0, 0.1, mixed)).epsilon(1e-15));
}

TEST_CASE("throughput")
{
    CHECK(throughput(10, baseline, true) == doctest::Approx(10.0 / 24).epsilon(1e-15));
    CHECK(throughput(0, baseline, true) == 0.0);
    CHECK(throughput(10, baseline, false) == 0.5);
    for (int a = 0; a <= 30; ++a)
        CHECK(throughput(a, baseline, true) <= 30 / (1.2 * 20 * 1.0) + 1e-15);
}

TEST_CASE("energy efficiency")
{
    CHECK(energy_efficiency(0.0, 11.0) == 0.0);
    CHECK(rel(energy_efficiency(10.0 / 24, 11.1332823472428150), 0.0374253210931864312) < 1e-14);
    CHECK(energy_efficiency(0.4167, 11.133) == doctest::Approx(0.0374).epsilon(1e-3));
    CHECK(energy_efficiency(0.8, 2.0) == 2 * energy_efficiency(0.4, 2.0));
    CHECK_THROWS(energy_efficiency(1.0, 0.0));
    CHECK_THROWS(energy_efficiency(1.0, -2.0));
}

TEST_CASE("frame metrics")
{
    const std::vector<int> counts(10, 2);
    const auto m = frame_metrics(table, baseline, 100, 10, counts, true, false);
    CHECK(m.successes == 10);
    CHECK(rel(m.power.total(), 11.1332823472428150) < 1e-14);
    CHECK(rel(m.energy_efficiency * m.power.total(), m.throughput) < 1e-12);

    const auto untrained = frame_metrics(table, baseline, 100, 10, counts, false, false);
    CHECK(untrained.power.ap == table.ap_static);
    CHECK(untrained.throughput == 0.5);
    const auto charged = frame_metrics(table, baseline, 100, 10, counts, false, true);
    CHECK(charged.power.ap == m.power.ap);
    CHECK(charged.throughput == 0.5);

    std::vector<int> more = counts;
    more[3] = 3;
    CHECK(frame_metrics(table, baseline, 100, 10, more, true, false).power.total() >
          m.power.total());
    CHECK(frame_metrics(table, baseline, 121, 10, counts, true, false).power.total() >
          m.power.total());
}

TEST_CASE("parameter validation")
{
    CHECK_NOTHROW(table.validate());
    PowerParams bad = table;
    bad.ap_pa_inverse_eff = 0.9;
    CHECK_THROWS(bad.validate());
    bad = table;
    bad.mtd_static = 0.0;
    CHECK_THROWS(bad.validate());
    CHECK_NOTHROW(baseline.validate());
    CHECK_THROWS((FrameTiming{0.0, 0.2, 20}.validate()));
    CHECK_THROWS((FrameTiming{1.0, -0.1, 20}.validate()));
    CHECK_THROWS((FrameTiming{1.0, 0.2, 0}.validate()));
}
