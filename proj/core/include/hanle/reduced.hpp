// Low-saturation closed system for the ground-state density matrix (the
// excited block is eliminated through its algebraic steady-state relation)
// plus the fully analytic rational lineshape of the closed 1 -> 2 transition
// at zero transit relaxation.
//
// Variable conventions.  The coefficient tables are kept verbatim; their
// natural scan variables are
//     omega = Omega_g / (2 gamma_eg S),   delta = delta_v / (2 gamma_eg),
// i.e. the tables' unit of Zeeman splitting is twice the power-broadening
// rate gamma_eg S.  NormalizedParams stores these table-convention values;
// from_system()/to_system() perform the (verified) physical conversion.
#pragma once

#include "hanle/gobe.hpp"

#include <array>

namespace hanle::reduced {

using gobe::SteadyStateSolution;
using gobe::SystemParams;

/// Dimensionless parameter bundle of the analytic layer (table conventions,
/// see file header).  gamma1_tilde = gamma_1/gamma_r; gamma_tilde =
/// Gamma/(gamma_eg S); saturation S = kappa^2/(gamma_eg^2 + delta_v^2).
struct NormalizedParams {
    double omega = 0.0;
    double delta = 0.0;
    double gamma1_tilde = 0.0;
    double gamma_tilde = 0.0;
    double epsilon = 0.0;
    double saturation = 0.0;

    static NormalizedParams from_system(const SystemParams& p);
    /// Physical realization with the given gamma_r and gamma_eg (beta = 1,
    /// b along z).  kappa is fixed by the stored saturation.
    SystemParams to_system(double gamma_r, double gamma_eg) const;

    /// The validity domain is S << 1; returns a human-readable warning above
    /// S = 0.1, nothing otherwise.
    std::optional<std::string> validity_warning() const;
};

/// Physical Zeeman splitting corresponding to one unit of the tables' omega.
inline double magnetic_unit(const SystemParams& p) {
    return 2.0 * p.gamma_eg * p.saturation();
}

/// Linear absorption scale pi_e^(0) = 2 gamma_eg S / (gamma_r + Gamma).
double pi_e0(const SystemParams& p);

/// Coefficient tables N_ij, D_kl of the rational lineshape
///   pi_e/pi_e0 = sum_i N_i(delta) omega^i / sum_k D_k(delta) omega^k,
///   N_i = sum_j N_ij delta^j  (j <= 2), likewise D_k.
/// Entries with odd i+j (k+l) vanish identically.
struct PolyCoeffs {
    std::array<std::array<double, 3>, 3> n{};  // n[i][j]
    std::array<std::array<double, 3>, 3> d{};  // d[k][l]

    /// N_i(delta) and D_k(delta) by Horner evaluation.
    std::array<double, 3> numerator_at(double delta) const;
    std::array<double, 3> denominator_at(double delta) const;
};

/// The closed 1 -> 2 tables at zero transit relaxation (gamma_tilde = 0),
/// as functions of gamma1_tilde and the ellipticity.
PolyCoeffs analytic_coeffs(double gamma1_tilde, double epsilon);

/// Analytic pi_e/pi_e0 from the tables.  Requires gamma_tilde = 0; any other
/// value throws std::domain_error directing the caller to reduced_numeric.
double analytic_pi_e(const NormalizedParams& np);

/// Steady state of the low-saturation closed equations: the ground block is
/// solved as an ng^2 linear system (the excited block enters through its
/// algebraic elimination), then the excited block and pi_e are reconstructed.
/// The excited-state Zeeman term is intentionally absent from this model.
/// Gamma = 0 requires beta = 1 and is normalized by Tr(rho_gg) = 1, the
/// convention under which the analytic tables are exact; for Gamma > 0 the
/// solve yields Tr(rho_gg) + Tr(rho_ee) = 1 automatically.
SteadyStateSolution reduced_numeric(const SystemParams& params);

}  // namespace hanle::reduced
