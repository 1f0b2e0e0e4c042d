#ifndef RISRA_CHANNEL_HPP_
#define RISRA_CHANNEL_HPP_

#include <complex>
#include <span>
#include <vector>

#include "risra/grid.hpp"
#include "risra/rng.hpp"

namespace risra {

/// Reflecting surface in the xz-plane, centered at the origin.
struct RisGeometry
{
    int n_x = 10;
    int n_z = 10;
    double d_x = 0.1;        ///< element width [m]
    double d_z = 0.1;        ///< element height [m]
    double wavelength = 0.1; ///< carrier wavelength [m]

    int elements() const { return n_x * n_z; }
    double wavenumber() const;
    /// Throws std::invalid_argument on a non-physical surface.
    void validate() const;
};

/// Polar position in the xy-plane relative to the surface boresight.
struct NodePlacement
{
    double distance = 1.0;     ///< [m]
    double angle = 0.0;        ///< [rad], in [0, pi/2]
    double antenna_gain = 1.0; ///< linear power gain

    void validate() const;
};

/// Per-slot surface configurations theta_s, 0-based.
struct PhaseShiftSet
{
    std::vector<double> angles;

    std::size_t size() const { return angles.size(); }
};

struct RadioParams
{
    double mtd_tx_power = 0.01;     ///< [W]
    double noise_power = 3.981e-13; ///< [W]
    double snr_threshold = 1.0;     ///< linear

    void validate() const;
};

/// Closed interval used for placement sampling.
struct Range
{
    double lo = 0.0;
    double hi = 0.0;
};

/// S evenly spaced angles spanning [0, pi/2]; S == 1 yields {0}.
PhaseShiftSet phase_shift_set(int slots);

/// Free-space path loss of the surface-assisted link (dimensionless).
double path_loss(const RisGeometry& ris, const NodePlacement& ap, const NodePlacement& mtd);

/// Total propagation phase in radians, not wrapped.
double total_phase(const RisGeometry& ris, const NodePlacement& ap, const NodePlacement& mtd);

/// Array factor by direct summation over the n_x columns; |result| <= N.
std::complex<double> array_factor(const RisGeometry& ris, double theta_k, double theta_s);

/// Geometric-series form of array_factor. Optional fast path, not used by the engine.
std::complex<double> array_factor_closed_form(const RisGeometry& ris, double theta_k,
                                              double theta_s);

std::complex<double> channel_coefficient(const RisGeometry& ris, const NodePlacement& ap,
                                         const NodePlacement& mtd, double theta_s);

double snr(const RadioParams& radio, std::complex<double> h);

/// K x S SNR grid for the given devices over every surface configuration.
SnrMatrix snr_matrix(const RisGeometry& ris, const NodePlacement& ap, const RadioParams& radio,
                     std::span<const NodePlacement> mtds, const PhaseShiftSet& phases);

/// K placements with distance ~ U[distance] and angle ~ U[angle], drawn per device
/// in the order (distance, angle).
std::vector<NodePlacement> sample_mtd_placements(Rng& rng, int count, Range distance, Range angle,
                                                 double gain);

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double dbw_to_watts(double dbw);

} // namespace risra

#endif /* RISRA_CHANNEL_HPP_ */
