// Steady state of the generalized optical Bloch equations for a single
// Fg -> Fe transition driven by an elliptically polarized running wave in a
// static magnetic field of arbitrary direction.  The four density-matrix
// blocks (ground, excited, and both slowly varying optical coherences) are
// vectorized into one linear system and solved by dense partial-pivoting LU.
#pragma once

#include "hanle/angular.hpp"

#include <Eigen/Dense>
#include <optional>

namespace hanle::gobe {

using angular::AngularMomentum;
using angular::Basis;
using angular::Level;
using angular::Polarization;

/// All physical inputs of one steady-state problem.  Rates are in arbitrary
/// but common units; the solver rescales internally so that gamma_r = 1.
struct SystemParams {
    AngularMomentum fg{1};
    AngularMomentum fe{2};
    double beta = 1.0;       ///< branching ratio of Fe -> Fg decay, in (0, 1]
    double kappa = 0.0;      ///< Rabi coupling, >= 0
    double delta_v = 0.0;    ///< detuning including Doppler shift, omega - omega_eg - k v
    double gamma_r = 1.0;    ///< radiative decay rate of the excited level
    double gamma_1 = 0.0;    ///< excited-state collisional depolarization rate
    double gamma_eg = 0.5;   ///< optical coherence dephasing rate
    double Gamma = 0.0;      ///< transit relaxation rate toward the isotropic ground state
    double omega_g = 0.0;    ///< ground-state Zeeman splitting (signed)
    double omega_e = 0.0;    ///< excited-state Zeeman splitting (signed)
    Eigen::Vector3d b_direction{0.0, 0.0, 1.0};
    double epsilon = 0.0;    ///< field ellipticity, [-pi/4, pi/4]

    Basis basis() const { return Basis{fg, fe}; }
    /// Saturation parameter S = kappa^2 / (gamma_eg^2 + delta_v^2).
    double saturation() const {
        return kappa * kappa / (gamma_eg * gamma_eg + delta_v * delta_v);
    }
    /// Collision-free dephasing, gamma_eg = gamma_r/2 + Gamma.  Only meaningful
    /// when gamma_1 = 0.
    SystemParams& with_collisionless_gamma_eg() {
        gamma_eg = 0.5 * gamma_r + Gamma;
        return *this;
    }
    /// Throws std::domain_error on invalid rates, branching ratio, ellipticity,
    /// non-unit b, or |Fg - Fe| > 1.
    void validate() const;
};

/// Block-structured density matrix.  rho_eg_bar is the slowly varying optical
/// coherence (excited rows, ground columns); rho_ge_bar is its adjoint.
struct DensityMatrix {
    Eigen::MatrixXcd rho_gg;
    Eigen::MatrixXcd rho_ee;
    Eigen::MatrixXcd rho_eg_bar;

    Eigen::MatrixXcd rho_ge_bar() const { return rho_eg_bar.adjoint(); }
    double total_population() const {
        return rho_gg.trace().real() + rho_ee.trace().real();
    }
    /// max of the two block Hermiticity defects, infinity norm
    double hermiticity_error() const;
};

struct SteadyStateSolution {
    DensityMatrix rho;
    double pi_e = 0.0;          ///< Tr(rho_ee)
    double residual_norm = 0.0; ///< ||L x - s|| / max(1, ||s||) of the solved system
};

struct SolveOptions {
    int max_sublevels = 21;  ///< reject 2F+1 beyond this (dense-solve guard)
};

/// Ground-state feed from spontaneous decay:
/// G{rho_ee} = beta gamma_r sum_q T^{eg+}_q rho_ee T^{eg}_q.
/// Carries populations and Zeeman coherences alike.
Eigen::MatrixXcd spontaneous_transfer(const Eigen::MatrixXcd& rho_ee,
                                      const AngularMomentum& fg,
                                      const AngularMomentum& fe,
                                      double beta, double gamma_r);

/// Collisional depolarization gamma_1 [rho_ee - Pi_e Tr(rho_ee)/(2Fe+1)].
/// The returned matrix has exactly zero trace.
Eigen::MatrixXcd collisional_depolarization(const Eigen::MatrixXcd& rho_ee,
                                            double gamma_1,
                                            const AngularMomentum& fe);

/// Vectorized steady-state system L x = s over
/// x = [vec rho_gg, vec rho_ee, vec rho_eg_bar, vec rho_ge_bar] (column-major
/// blocks in that order; this layout is a frozen contract).  The source s is
/// the transit-refill term Gamma rho_gg^(0).
struct Liouvillian {
    Eigen::MatrixXcd L;
    Eigen::VectorXcd s;
    int ng = 0;
    int ne = 0;

    int dim() const { return static_cast<int>(L.rows()); }
    int idx_gg(int r, int c) const { return r + c * ng; }
    int idx_ee(int r, int c) const { return ng * ng + r + c * ne; }
    int idx_eg(int r, int c) const { return ng * ng + ne * ne + r + c * ne; }
    int idx_ge(int r, int c) const { return ng * ng + ne * ne + ne * ng + r + c * ng; }
};

Liouvillian build_liouvillian(const SystemParams& params, const SolveOptions& opts = {});

/// Steady state.  Gamma > 0: direct solve.  Gamma = 0 and beta = 1: one
/// population row (ground m = -Fg) is replaced by the closed-system trace
/// constraint.  Gamma = 0 with beta < 1 (or with no light) has no steady
/// state and throws std::runtime_error.
SteadyStateSolution steady_state(const SystemParams& params, const SolveOptions& opts = {});

/// Tr(rho_ee).
double excited_population(const DensityMatrix& rho);

}  // namespace hanle::gobe
