// Maxwell-velocity averaging of per-velocity signals and width/shape
// descriptors of the averaged resonance curves.
//
// The velocity integral (1/sqrt(pi)) int f(kv) exp(-(v/vbar)^2) dv is
// evaluated on a symmetric graded panel mesh with a Gauss-Legendre rule per
// panel (panel widths grow geometrically away from the core, capped so the
// Gaussian envelope stays resolved).  A plain Gauss-Hermite rule of any
// practical order cannot resolve the sub-Doppler core that appears when
// k vbar greatly exceeds the homogeneous linewidth, so it is not used here.
#pragma once

#include "hanle/reduced.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hanle::doppler {

using gobe::SystemParams;

struct DopplerParams {
    double k_vbar = 0.0;       ///< Doppler width k*vbar, rate units, >= 0
    int quadrature_order = 96; ///< Gauss-Legendre nodes per mesh panel, >= 1

    /// Convenience: vbar = sqrt(2 kB T / M) for wavenumber k.
    static DopplerParams from_physical(double k, double boltzmann_kb,
                                       double temperature, double mass,
                                       int quadrature_order = 96);
    void validate() const;
};

/// A sampled resonance curve with its provenance.
struct ScanResult {
    std::vector<double> omega_g_grid;  ///< strictly increasing
    std::vector<double> signal;
    SystemParams params;
    DopplerParams doppler;
    std::string normalization;  ///< free-text note, e.g. "raw"

    void validate() const;  ///< grid monotone, equal lengths
};

/// Average of signal_fn over the Maxwell distribution; signal_fn receives the
/// Doppler shift kv in rate units.  k_vbar = 0 returns signal_fn(0) exactly.
/// core_center (units of vbar) recenters the fine region of the mesh, for
/// signals whose sharp structure sits away from v = 0.
double doppler_average(const std::function<double(double)>& signal_fn,
                       const DopplerParams& dp, double core_center = 0.0);

/// Velocity-averaged Hanle scan: for each grid point the low-saturation
/// steady state is evaluated per velocity node with delta_v = delta - kv (the
/// stored delta_v of params acts as the atom-at-rest detuning) and averaged.
/// The returned signal is raw <pi_e>.
ScanResult averaged_scan(const SystemParams& params, const DopplerParams& dp,
                         std::vector<double> omega_g_grid);

/// Display normalization: subtract the wing background (mean of the two grid
/// end values) and scale to the central (omega_g = 0) height.
ScanResult normalized_for_display(const ScanResult& scan);

/// Full width at half the central-extremum height after background
/// subtraction, by linear interpolation between grid points.  Throws
/// std::runtime_error("grid too narrow") when a half-height crossing is
/// missing on either side.
double resonance_width(const ScanResult& scan);

}  // namespace hanle::doppler
