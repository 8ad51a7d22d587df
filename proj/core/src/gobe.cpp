#include "hanle/gobe.hpp"

#include <cmath>
#include <complex>

namespace hanle::gobe {

namespace {

using angular::wigner_t;
using std::complex;

constexpr complex<double> kI{0.0, 1.0};

std::array<Eigen::MatrixXcd, 3> raising_blocks(const Basis& basis) {
    std::array<Eigen::MatrixXcd, 3> t;
    for (int q = -1; q <= 1; ++q)
        t[q + 1] = wigner_t(basis, Level::excited, Level::ground, q)
                       .block(Level::excited, Level::ground);
    return t;
}

}  // namespace

void SystemParams::validate() const {
    if (std::abs(fg.twice_f() - fe.twice_f()) > 2)
        throw std::domain_error("SystemParams: |Fg - Fe| must be <= 1");
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::domain_error("SystemParams: beta must lie in (0, 1]");
    if (kappa < 0.0 || gamma_r <= 0.0 || gamma_1 < 0.0 || gamma_eg < 0.0 || Gamma < 0.0)
        throw std::domain_error("SystemParams: rates must be non-negative (gamma_r > 0)");
    if (gamma_1 == 0.0 && gamma_eg < 0.5 * gamma_r - 1e-12 * gamma_r)
        throw std::domain_error(
            "SystemParams: gamma_eg must be >= gamma_r/2 when gamma_1 = 0");
    if (std::abs(b_direction.norm() - 1.0) > 1e-6)
        throw std::domain_error("SystemParams: b_direction must be a unit vector");
    Polarization check(epsilon);  // range check
    (void)check;
}

double DensityMatrix::hermiticity_error() const {
    const double egg = (rho_gg - rho_gg.adjoint().eval()).cwiseAbs().maxCoeff();
    const double eee = (rho_ee - rho_ee.adjoint().eval()).cwiseAbs().maxCoeff();
    return std::max(egg, eee);
}

Eigen::MatrixXcd spontaneous_transfer(const Eigen::MatrixXcd& rho_ee,
                                      const AngularMomentum& fg,
                                      const AngularMomentum& fe,
                                      double beta, double gamma_r) {
    const Basis basis{fg, fe};
    auto t = raising_blocks(basis);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(basis.ng(), basis.ng());
    for (const auto& tq : t) out += tq.adjoint() * rho_ee * tq;
    return beta * gamma_r * out;
}

Eigen::MatrixXcd collisional_depolarization(const Eigen::MatrixXcd& rho_ee,
                                            double gamma_1,
                                            const AngularMomentum& fe) {
    const int ne = fe.dim();
    const complex<double> t = rho_ee.trace() / static_cast<double>(ne);
    Eigen::MatrixXcd out = gamma_1 * rho_ee;
    for (int i = 0; i < ne; ++i) out(i, i) -= gamma_1 * t;
    // pin the last diagonal so the in-order trace sum cancels exactly (the
    // conservation rule Tr = 0 holds bitwise, not just to roundoff)
    complex<double> partial = 0.0;
    for (int i = 0; i + 1 < ne; ++i) partial += out(i, i);
    out(ne - 1, ne - 1) = -partial;
    return out;
}

Liouvillian build_liouvillian(const SystemParams& params, const SolveOptions& opts) {
    params.validate();
    const Basis basis = params.basis();
    if (basis.ng() > opts.max_sublevels || basis.ne() > opts.max_sublevels)
        throw std::domain_error("build_liouvillian: 2F+1 exceeds the dimension cap");

    const int ng = basis.ng(), ne = basis.ne();

    // rescale all rates to gamma_r = 1 units; the steady state is invariant
    const double u = 1.0 / params.gamma_r;
    const double kappa = params.kappa * u;
    const double delta_v = params.delta_v * u;
    const double gamma_r = 1.0;
    const double gamma_1 = params.gamma_1 * u;
    const double gamma_eg = params.gamma_eg * u;
    const double Gamma = params.Gamma * u;
    const double omega_g = params.omega_g * u;
    const double omega_e = params.omega_e * u;

    const Eigen::MatrixXcd V =
        angular::coupling_operator(basis, Polarization(params.epsilon))
            .block(Level::excited, Level::ground);
    const Eigen::MatrixXcd Vd = V.adjoint();
    const Eigen::MatrixXcd Fg =
        angular::magnetic_projection(basis, Level::ground, params.b_direction)
            .block(Level::ground, Level::ground);
    const Eigen::MatrixXcd Fe =
        angular::magnetic_projection(basis, Level::excited, params.b_direction)
            .block(Level::excited, Level::excited);
    const auto T = raising_blocks(basis);

    Liouvillian lv;
    lv.ng = ng;
    lv.ne = ne;
    const int dim = ng * ng + ne * ne + 2 * ne * ng;
    lv.L = Eigen::MatrixXcd::Zero(dim, dim);
    lv.s = Eigen::VectorXcd::Zero(dim);
    auto& L = lv.L;

    // eg block: (gamma_eg - i delta_v) eg + i k (V gg - ee V) + i (Oe Fe eg - Og eg Fg) = 0
    for (int r = 0; r < ne; ++r)
        for (int c = 0; c < ng; ++c) {
            const int row = lv.idx_eg(r, c);
            L(row, lv.idx_eg(r, c)) += complex<double>(gamma_eg, -delta_v);
            for (int p = 0; p < ng; ++p) L(row, lv.idx_gg(p, c)) += kI * kappa * V(r, p);
            for (int p = 0; p < ne; ++p) L(row, lv.idx_ee(r, p)) -= kI * kappa * V(p, c);
            for (int p = 0; p < ne; ++p) L(row, lv.idx_eg(p, c)) += kI * omega_e * Fe(r, p);
            for (int p = 0; p < ng; ++p) L(row, lv.idx_eg(r, p)) -= kI * omega_g * Fg(p, c);
        }

    // ge block: (gamma_eg + i delta_v) ge + i k (V+ ee - gg V+) + i (Og Fg ge - Oe ge Fe) = 0
    for (int r = 0; r < ng; ++r)
        for (int c = 0; c < ne; ++c) {
            const int row = lv.idx_ge(r, c);
            L(row, lv.idx_ge(r, c)) += complex<double>(gamma_eg, delta_v);
            for (int p = 0; p < ne; ++p) L(row, lv.idx_ee(p, c)) += kI * kappa * Vd(r, p);
            for (int p = 0; p < ng; ++p) L(row, lv.idx_gg(r, p)) -= kI * kappa * Vd(p, c);
            for (int p = 0; p < ng; ++p) L(row, lv.idx_ge(p, c)) += kI * omega_g * Fg(r, p);
            for (int p = 0; p < ne; ++p) L(row, lv.idx_ge(r, p)) -= kI * omega_e * Fe(p, c);
        }

    // ee block: (Gamma + gamma_r + gamma_1) ee - gamma_1/ne Pi_e Tr(ee)
    //           + i k (V ge - eg V+) + i Oe [Fe, ee] = 0
    for (int r = 0; r < ne; ++r)
        for (int c = 0; c < ne; ++c) {
            const int row = lv.idx_ee(r, c);
            L(row, lv.idx_ee(r, c)) += Gamma + gamma_r + gamma_1;
            if (r == c)
                for (int p = 0; p < ne; ++p)
                    L(row, lv.idx_ee(p, p)) -= gamma_1 / static_cast<double>(ne);
            for (int p = 0; p < ng; ++p) L(row, lv.idx_ge(p, c)) += kI * kappa * V(r, p);
            for (int p = 0; p < ng; ++p) L(row, lv.idx_eg(r, p)) -= kI * kappa * Vd(p, c);
            for (int p = 0; p < ne; ++p) {
                L(row, lv.idx_ee(p, c)) += kI * omega_e * Fe(r, p);
                L(row, lv.idx_ee(r, p)) -= kI * omega_e * Fe(p, c);
            }
        }

    // gg block: Gamma gg + i k (V+ eg - ge V) + i Og [Fg, gg]
    //           - beta gamma_r sum_q T+ ee T = Gamma/ng Pi_g
    for (int r = 0; r < ng; ++r)
        for (int c = 0; c < ng; ++c) {
            const int row = lv.idx_gg(r, c);
            L(row, lv.idx_gg(r, c)) += Gamma;
            for (int p = 0; p < ne; ++p) L(row, lv.idx_eg(p, c)) += kI * kappa * Vd(r, p);
            for (int p = 0; p < ne; ++p) L(row, lv.idx_ge(r, p)) -= kI * kappa * V(p, c);
            for (int p = 0; p < ng; ++p) {
                L(row, lv.idx_gg(p, c)) += kI * omega_g * Fg(r, p);
                L(row, lv.idx_gg(r, p)) -= kI * omega_g * Fg(p, c);
            }
            for (const auto& tq : T)
                for (int p = 0; p < ne; ++p)
                    for (int q = 0; q < ne; ++q)
                        L(row, lv.idx_ee(p, q)) -=
                            params.beta * gamma_r * std::conj(tq(p, r)) * tq(q, c);
            if (r == c) lv.s(row) = Gamma / static_cast<double>(ng);
        }

    return lv;
}

SteadyStateSolution steady_state(const SystemParams& params, const SolveOptions& opts) {
    Liouvillian lv = build_liouvillian(params, opts);
    const int ng = lv.ng, ne = lv.ne;

    if (params.Gamma == 0.0) {
        if (params.beta < 1.0)
            throw std::runtime_error(
                "steady_state: no steady state, open transition (beta < 1) drains "
                "population with Gamma = 0");
        if (params.kappa == 0.0)
            throw std::runtime_error(
                "steady_state: steady state not unique with Gamma = 0 and no light");
        // closed system: replace the ground (m=-Fg, m=-Fg) population row with
        // Tr(rho_gg) + Tr(rho_ee) = 1
        const int row = lv.idx_gg(0, 0);
        lv.L.row(row).setZero();
        for (int p = 0; p < ng; ++p) lv.L(row, lv.idx_gg(p, p)) = 1.0;
        for (int p = 0; p < ne; ++p) lv.L(row, lv.idx_ee(p, p)) = 1.0;
        lv.s(row) = 1.0;
    }

    const Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(lv.L).solve(lv.s);
    const double snorm = lv.s.norm();
    const double residual = (lv.L * x - lv.s).norm() / std::max(1.0, snorm);
    if (!std::isfinite(residual) || residual > 1e-8)
        throw std::runtime_error("steady_state: singular or ill-conditioned system");

    SteadyStateSolution sol;
    sol.rho.rho_gg = Eigen::Map<const Eigen::MatrixXcd>(x.data(), ng, ng);
    sol.rho.rho_ee = Eigen::Map<const Eigen::MatrixXcd>(x.data() + ng * ng, ne, ne);
    sol.rho.rho_eg_bar =
        Eigen::Map<const Eigen::MatrixXcd>(x.data() + ng * ng + ne * ne, ne, ng);
    sol.pi_e = sol.rho.rho_ee.trace().real();
    sol.residual_norm = residual;
    return sol;
}

double excited_population(const DensityMatrix& rho) { return rho.rho_ee.trace().real(); }

}  // namespace hanle::gobe
