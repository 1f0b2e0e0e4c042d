#include "risra/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risra {

namespace {

using std::numbers::pi;

// Direct summation of step^n, n = 1..count, for a unit phasor step = (c, s).
// Odd and even terms run as two interleaved rotation chains.
std::complex<double> column_sum(int count, double c, double s)
{
    const double c2 = c * c - s * s;
    const double s2 = 2.0 * c * s;
    double odd_re = c, odd_im = s;     // step^1, step^3, ...
    double even_re = c2, even_im = s2; // step^2, step^4, ...
    double sum_re = 0.0, sum_im = 0.0;
    int n = 1;
    for (; n + 1 <= count; n += 2) {
        sum_re += odd_re + even_re;
        sum_im += odd_im + even_im;
        const double next_odd_re = odd_re * c2 - odd_im * s2;
        odd_im = odd_re * s2 + odd_im * c2;
        odd_re = next_odd_re;
        const double next_even_re = even_re * c2 - even_im * s2;
        even_im = even_re * s2 + even_im * c2;
        even_re = next_even_re;
    }
    if (n == count) {
        sum_re += odd_re;
        sum_im += odd_im;
    }
    return {sum_re, sum_im};
}

} // namespace

double RisGeometry::wavenumber() const
{
    return 2.0 * pi / wavelength;
}

void RisGeometry::validate() const
{
    if (n_x < 1 || n_z < 1)
        throw std::invalid_argument("surface needs n_x >= 1 and n_z >= 1, got " +
                                    std::to_string(n_x) + "x" + std::to_string(n_z));
    if (!(wavelength > 0.0))
        throw std::invalid_argument("wavelength must be positive");
    if (!(d_x > 0.0 && d_x <= wavelength) || !(d_z > 0.0 && d_z <= wavelength))
        throw std::invalid_argument("element sides must satisfy 0 < d <= wavelength");
}

void NodePlacement::validate() const
{
    if (!(distance > 0.0))
        throw std::invalid_argument("node distance must be positive");
    if (!(angle >= 0.0 && angle <= pi / 2))
        throw std::invalid_argument("node angle must lie in [0, pi/2]");
    if (!(antenna_gain > 0.0))
        throw std::invalid_argument("antenna gain must be positive");
}

void RadioParams::validate() const
{
    if (!(mtd_tx_power > 0.0) || !(noise_power > 0.0) || !(snr_threshold > 0.0))
        throw std::invalid_argument(
            "MTD transmit power, noise power and SNR threshold must be positive");
}

PhaseShiftSet phase_shift_set(int slots)
{
    if (slots < 1)
        throw std::invalid_argument("number of slots must be >= 1, got " + std::to_string(slots));
    PhaseShiftSet set;
    set.angles.resize(slots, 0.0);
    for (int s = 1; s < slots; ++s)
        set.angles[s] = pi * s / (2.0 * (slots - 1));
    return set;
}

double path_loss(const RisGeometry& ris, const NodePlacement& ap, const NodePlacement& mtd)
{
    const double area_ratio = ris.d_x * ris.d_z / (ap.distance * mtd.distance);
    const double c = std::cos(mtd.angle);
    return ap.antenna_gain * mtd.antenna_gain / (16.0 * pi * pi) * area_ratio * area_ratio * c * c;
}

double total_phase(const RisGeometry& ris, const NodePlacement& ap, const NodePlacement& mtd)
{
    const double offset =
        (std::sin(ap.angle) - std::sin(mtd.angle)) * (ris.n_x + 1) / 2.0 * ris.d_x;
    return ris.wavenumber() * (ap.distance + mtd.distance - offset);
}

std::complex<double> array_factor(const RisGeometry& ris, double theta_k, double theta_s)
{
    const double phi = ris.wavenumber() * (std::sin(theta_k) - std::sin(theta_s)) * ris.d_x;
    return static_cast<double>(ris.n_z) * column_sum(ris.n_x, std::cos(phi), std::sin(phi));
}

std::complex<double> array_factor_closed_form(const RisGeometry& ris, double theta_k,
                                              double theta_s)
{
    const double phi = ris.wavenumber() * (std::sin(theta_k) - std::sin(theta_s)) * ris.d_x;
    const int n = ris.n_x;
    const double half = phi / 2.0;
    double ratio;
    if (std::abs(std::sin(half)) < 1e-12)
        ratio = n * std::cos(n * half) / std::cos(half);
    else
        ratio = std::sin(n * half) / std::sin(half);
    return static_cast<double>(ris.n_z) * std::polar(ratio, half * (n + 1));
}

std::complex<double> channel_coefficient(const RisGeometry& ris, const NodePlacement& ap,
                                         const NodePlacement& mtd, double theta_s)
{
    return std::sqrt(path_loss(ris, ap, mtd)) * std::polar(1.0, total_phase(ris, ap, mtd)) *
           array_factor(ris, mtd.angle, theta_s);
}

double snr(const RadioParams& radio, std::complex<double> h)
{
    return radio.mtd_tx_power * std::norm(h) / radio.noise_power;
}

SnrMatrix snr_matrix(const RisGeometry& ris, const NodePlacement& ap, const RadioParams& radio,
                     std::span<const NodePlacement> mtds, const PhaseShiftSet& phases)
{
    // Per-element phase step exp(j w d_x (sin_k - sin_s)) factors into a device
    // phasor times the conjugate of a slot phasor.
    const double scale = ris.wavenumber() * ris.d_x;
    const std::size_t slots = phases.size();
    std::vector<double> slot_re(slots), slot_im(slots);
    for (std::size_t s = 0; s < slots; ++s) {
        const double a = scale * std::sin(phases.angles[s]);
        slot_re[s] = std::cos(a);
        slot_im[s] = std::sin(a);
    }

    const double nz2 = static_cast<double>(ris.n_z) * ris.n_z;
    SnrMatrix out(mtds.size(), slots);
    for (std::size_t k = 0; k < mtds.size(); ++k) {
        // |exp(j psi)| = 1, so only beta and |Omega| reach the SNR.
        const double gain =
            radio.mtd_tx_power * path_loss(ris, ap, mtds[k]) / radio.noise_power * nz2;
        const double a = scale * std::sin(mtds[k].angle);
        const double dev_re = std::cos(a);
        const double dev_im = std::sin(a);
        for (std::size_t s = 0; s < slots; ++s) {
            const double c = dev_re * slot_re[s] + dev_im * slot_im[s];
            const double sn = dev_im * slot_re[s] - dev_re * slot_im[s];
            out(k, s) = gain * std::norm(column_sum(ris.n_x, c, sn));
        }
    }
    return out;
}

std::vector<NodePlacement> sample_mtd_placements(Rng& rng, int count, Range distance, Range angle,
                                                 double gain)
{
    if (count < 0)
        throw std::invalid_argument("device count must be nonnegative");
    if (!(distance.lo > 0.0) || !(distance.lo <= distance.hi))
        throw std::invalid_argument("distance range must satisfy 0 < d_min <= d_max");
    if (!(angle.lo >= 0.0) || !(angle.lo <= angle.hi) || !(angle.hi <= pi / 2))
        throw std::invalid_argument("angle range must lie within [0, pi/2]");
    if (!(gain > 0.0))
        throw std::invalid_argument("antenna gain must be positive");

    std::vector<NodePlacement> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        NodePlacement p;
        p.distance = rng.uniform(distance.lo, distance.hi);
        p.angle = rng.uniform(angle.lo, angle.hi);
        p.antenna_gain = gain;
        out.push_back(p);
    }
    return out;
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double dbw_to_watts(double dbw)
{
    return db_to_linear(dbw);
}

} // namespace risra
