#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "risra/channel.hpp"

using namespace risra;
using std::numbers::pi;

namespace {

RisGeometry baseline_ris()
{
    return RisGeometry{10, 10, 0.1, 0.1, 0.1};
}

NodePlacement baseline_ap()
{
    return {20.0, pi / 4, std::pow(10.0, 0.5)};
}

NodePlacement mtd_at(double distance, double angle)
{
    return {distance, angle, std::pow(10.0, 0.5)};
}

// Term-by-term reference, written without the library's recurrence.
std::complex<double> loop_array_factor(int n_x, int n_z, double d_x, double wavelength,
                                       double theta_k, double theta_s)
{
    const double w = 2.0 * pi / wavelength;
    std::complex<double> sum = 0.0;
    for (int n = 1; n <= n_x; ++n)
        sum += std::exp(std::complex<double>(0.0, w * (std::sin(theta_k) - std::sin(theta_s)) *
                                                      n * d_x));
    return static_cast<double>(n_z) * sum;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST_CASE("phase shift set endpoints and spacing")
{
    const auto s5 = phase_shift_set(5).angles;
    REQUIRE(s5.size() == 5);
    for (int i = 0; i < 5; ++i)
        CHECK(s5[i] == doctest::Approx(i * pi / 8).epsilon(1e-15));
    CHECK(phase_shift_set(2).angles == std::vector<double>{0.0, pi / 2});
    CHECK(phase_shift_set(1).angles == std::vector<double>{0.0});
    CHECK_THROWS(phase_shift_set(0));

    for (int s = 2; s <= 40; ++s) {
        const auto a = phase_shift_set(s).angles;
        CHECK(a.front() == 0.0);
        CHECK(a.back() == doctest::Approx(pi / 2).epsilon(1e-15));
        for (int i = 1; i < s; ++i)
            CHECK(a[i] > a[i - 1]);
    }
}

TEST_CASE("path loss")
{
    const auto ris = baseline_ris();
    const auto ap = baseline_ap();
    // 10 * (0.01 / 500)^2 / (16 pi^2), evaluated at 30 digits.
    CHECK(rel(path_loss(ris, ap, mtd_at(25.0, 0.0)), 2.53302959105844428e-11) < 1e-13);
    CHECK(path_loss(ris, ap, mtd_at(25.0, pi / 2)) < 1e-40);
    CHECK(rel(path_loss(ris, ap, mtd_at(50.0, 0.3)), path_loss(ris, ap, mtd_at(25.0, 0.3)) / 4) <
          1e-14);
}

TEST_CASE("total phase")
{
    const auto ris = baseline_ris();
    const auto ap = baseline_ap();
    CHECK(rel(total_phase(ris, ap, mtd_at(25.0, 0.0)), 2802.99753207094290) < 1e-14);
    const auto aligned = mtd_at(30.0, ap.angle);
    CHECK(rel(total_phase(ris, ap, aligned), 2.0 * pi / 0.1 * 50.0) < 1e-15);
}

TEST_CASE("array factor against loop summation")
{
    const auto ris = baseline_ris();
    // Per-element phase is exactly pi here, so the sum is a null.
    const auto null_af = array_factor(ris, pi / 6, 0.0);
    const auto null_ref = loop_array_factor(10, 10, 0.1, 0.1, pi / 6, 0.0);
    CHECK(std::abs(null_af - null_ref) <= 1e-12 * 100);

    for (double tk : {0.0, 0.1, 0.3, 0.77, 1.2, pi / 2}) {
        for (double ts : {0.0, 0.05, 0.4, 1.0, pi / 2}) {
            const auto af = array_factor(ris, tk, ts);
            const auto ref = loop_array_factor(10, 10, 0.1, 0.1, tk, ts);
            CHECK(std::abs(af - ref) <= 1e-12 * std::max(std::abs(ref), 1.0));
            CHECK(std::abs(af) <= 100.0 * (1 + 1e-12));
            CHECK(std::abs(std::abs(af) - std::abs(array_factor(ris, ts, tk))) < 1e-10);
        }
    }
}

TEST_CASE("array factor peak and closed form")
{
    for (int nx : {1, 2, 5, 10, 20}) {
        for (int nz : {1, 3, 20}) {
            const RisGeometry ris{nx, nz, 0.1, 0.1, 0.1};
            for (double t : {0.0, 0.4, 1.3}) {
                CHECK(std::abs(array_factor(ris, t, t)) ==
                      doctest::Approx(static_cast<double>(nx) * nz).epsilon(1e-12));
            }
        }
    }
    // Off the nulls the geometric-series form matches the direct sum.
    const RisGeometry ris{20, 10, 0.05, 0.05, 0.1};
    for (double tk = 0.0; tk <= pi / 2; tk += 0.0731) {
        for (double ts = 0.0; ts <= pi / 2; ts += 0.113) {
            const auto direct = array_factor(ris, tk, ts);
            if (std::abs(direct) < 1e-3)
                continue;
            CHECK(std::abs(array_factor_closed_form(ris, tk, ts) - direct) <=
                  1e-10 * std::abs(direct));
        }
    }
}

TEST_CASE("channel coefficient and snr")
{
    const auto ris = baseline_ris();
    const auto ap = baseline_ap();
    const RadioParams radio{0.01, 3.98107170553497250e-13, 1.0};

    const auto mtd = mtd_at(25.0, 0.0);
    const auto h = channel_coefficient(ris, ap, mtd, 0.0);
    // Composite oracle: sqrt(beta) * e^{j psi} * 100 from the scalar values above.
    const std::complex<double> h_ref =
        std::sqrt(2.53302959105844428e-11) * std::polar(100.0, 2802.99753207094290);
    CHECK(std::abs(h - h_ref) <= 1e-10 * std::abs(h_ref));
    CHECK(rel(snr(radio, h), 6362.68266039196663) < 1e-10);
    CHECK(snr(radio, h) == doctest::Approx(6.4e3).epsilon(0.01));

    CHECK(std::abs(channel_coefficient(ris, ap, mtd_at(25.0, pi / 2), 0.3)) < 1e-20);
    CHECK(snr(radio, 0.0) == 0.0);
    RadioParams doubled = radio;
    doubled.mtd_tx_power *= 2;
    CHECK(rel(snr(doubled, h), 2 * snr(radio, h)) < 1e-15);
    CHECK(snr(radio, std::conj(h)) == snr(radio, h));

    for (double tk : {0.2, 0.9}) {
        for (double ts : {0.0, 0.5, 1.4}) {
            const auto m = mtd_at(60.0, tk);
            const double expect =
                std::sqrt(path_loss(ris, ap, m)) * std::abs(array_factor(ris, tk, ts));
            CHECK(rel(std::abs(channel_coefficient(ris, ap, m, ts)), expect) < 1e-12);
        }
    }
}

TEST_CASE("snr matrix matches per-entry evaluation")
{
    const auto ris = baseline_ris();
    const auto ap = baseline_ap();
    const RadioParams radio{0.01, 3.98107170553497250e-13, 1.0};
    const std::vector<NodePlacement> mtds{mtd_at(25.0, 0.0), mtd_at(40.0, 0.3),
                                          mtd_at(99.0, 1.5), mtd_at(70.0, pi / 2)};
    for (int slots : {1, 2, 7, 40}) {
        const auto phases = phase_shift_set(slots);
        const auto m = snr_matrix(ris, ap, radio, mtds, phases);
        REQUIRE(m.rows() == mtds.size());
        REQUIRE(m.cols() == static_cast<std::size_t>(slots));
        for (std::size_t k = 0; k < mtds.size(); ++k) {
            for (int s = 0; s < slots; ++s) {
                const double ref =
                    snr(radio, channel_coefficient(ris, ap, mtds[k], phases.angles[s]));
                CHECK(std::abs(m(k, s) - ref) <= 1e-9 * std::max(ref, 1e-6));
            }
        }
    }
}

TEST_CASE("placement sampling")
{
    Rng a = Rng::substream(7, 3, StreamTag::placement);
    Rng b = Rng::substream(7, 3, StreamTag::placement);
    const auto pa = sample_mtd_placements(a, 50, {25.0, 100.0}, {0.0, pi / 2}, 3.0);
    const auto pb = sample_mtd_placements(b, 50, {25.0, 100.0}, {0.0, pi / 2}, 3.0);
    REQUIRE(pa.size() == 50);
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].distance == pb[i].distance);
        CHECK(pa[i].angle == pb[i].angle);
        CHECK(pa[i].distance >= 25.0);
        CHECK(pa[i].distance <= 100.0);
        CHECK(pa[i].angle >= 0.0);
        CHECK(pa[i].angle <= pi / 2);
    }

    Rng c = Rng::substream(1, 0, StreamTag::placement);
    for (const auto& p : sample_mtd_placements(c, 100, {50.0, 50.0}, {0.2, 0.2}, 1.0)) {
        CHECK(p.distance == 50.0);
        CHECK(p.angle == 0.2);
    }

    constexpr int n = 100000;
    Rng d = Rng::substream(11, 0, StreamTag::placement);
    const auto many = sample_mtd_placements(d, n, {25.0, 100.0}, {0.0, pi / 2}, 1.0);
    double sum = 0.0, sum_a = 0.0;
    for (const auto& p : many) {
        sum += p.distance;
        sum_a += p.angle;
    }
    const double se_d = 75.0 / std::sqrt(12.0 * n);
    const double se_a = (pi / 2) / std::sqrt(12.0 * n);
    CHECK(std::abs(sum / n - 62.5) < 3 * se_d);
    CHECK(std::abs(sum_a / n - pi / 4) < 3 * se_a);

    Rng e = Rng::substream(1, 0, StreamTag::placement);
    CHECK_THROWS(sample_mtd_placements(e, 3, {0.0, 10.0}, {0.0, 1.0}, 1.0));
    CHECK_THROWS(sample_mtd_placements(e, 3, {20.0, 10.0}, {0.0, 1.0}, 1.0));
    CHECK_THROWS(sample_mtd_placements(e, 3, {10.0, 20.0}, {0.0, 2.0}, 1.0));
}

TEST_CASE("unit conversions")
{
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(rel(dbm_to_watts(-94.0), 3.98107170553497250e-13) < 1e-14);
    CHECK(rel(dbw_to_watts(9.0), 7.94328234724281502) < 1e-14);
    CHECK(rel(db_to_linear(5.0), std::sqrt(10.0)) < 1e-15);
    for (double x : {-30.0, -3.0, 0.5, 12.0})
        CHECK(linear_to_db(db_to_linear(x)) == doctest::Approx(x).epsilon(1e-13));
}

TEST_CASE("geometry validation")
{
    CHECK_NOTHROW(baseline_ris().validate());
    CHECK_THROWS((RisGeometry{0, 10, 0.1, 0.1, 0.1}.validate()));
    CHECK_THROWS((RisGeometry{10, 10, 0.2, 0.1, 0.1}.validate()));
    CHECK_THROWS((NodePlacement{-1.0, 0.0, 1.0}.validate()));
    CHECK_THROWS((RadioParams{0.0, 1.0, 1.0}.validate()));
}
