// Generalized-Lorentzian decomposition of scan curves: closed-form parameters
// from the rational-lineshape coefficient tables, damped least-squares fitting
// of sampled curves, and the EIA/EIT sign-reversal point in the collisional
// depolarization rate.
#pragma once

#include "hanle/reduced.hpp"

#include <span>
#include <vector>

namespace hanle::lineshape {

using reduced::PolyCoeffs;

/// Parameters of  A w^2/((x-x0)^2+w^2) + B w (x-x0)/((x-x0)^2+w^2) + C.
/// A > 0 is an enhanced-absorption (EIA) peak, A < 0 a transparency (EIT) dip.
struct LorentzianParams {
    double a = 0.0;       ///< symmetric amplitude
    double b = 0.0;       ///< antisymmetric amplitude
    double c_bg = 0.0;    ///< background
    double omega0 = 0.0;  ///< resonance shift
    double w = 1.0;       ///< width (> 0)
};

/// Closed-form decomposition of the rational lineshape at detuning delta
/// (table units).  Amplitudes come out per unit pi_e0, omega0 and w in the
/// tables' omega unit; scale by pi_e0 and magnetic_unit() for physical curves.
/// Throws std::runtime_error if the denominator discriminant is not positive
/// ("resonance degenerate").
LorentzianParams lorentzian_from_coeffs(const PolyCoeffs& pc, double delta);

/// Model value at omega_g.
double eval_lorentzian(const LorentzianParams& lp, double omega_g);

/// Rescale a normalized-units decomposition to physical units: amplitudes by
/// pi_e0, abscissa (omega0, w) by the magnetic unit.
LorentzianParams to_physical(const LorentzianParams& lp, double magnetic_unit,
                             double pi_e0);

struct FitResult {
    LorentzianParams params;
    double goodness = 0.0;  ///< RMS residual / sample range
    bool converged = false;
    int iterations = 0;
};

/// Damped least squares (Levenberg-Marquardt) with the analytic Jacobian and
/// deterministic initialization: background from the wing mean, omega0 from
/// the extremum, w from a half-width scan.  Needs >= 7 samples.  If the
/// iteration cap is hit the best-so-far parameters are returned with
/// converged = false.
FitResult fit_lorentzian(std::span<const double> omega_g,
                         std::span<const double> signal);

/// Root of A(gamma1_tilde) = 0 on [0, gamma1_max] by bracketed bisection to
/// 1e-10 (A from the closed-form tables at the given ellipticity and detuning,
/// table units).  Throws std::runtime_error("no reversal in range") when A
/// does not change sign there, e.g. for pure circular polarization where A
/// vanishes identically.
double sign_reversal_gamma1(double epsilon, double delta, double gamma1_max = 20.0);

}  // namespace hanle::lineshape
