#include "hanle/reduced.hpp"

#include <cmath>
#include <complex>

namespace hanle::reduced {

namespace {

using angular::Basis;
using angular::Level;
using angular::Polarization;
using std::complex;

constexpr complex<double> kI{0.0, 1.0};

}  // namespace

NormalizedParams NormalizedParams::from_system(const SystemParams& p) {
    const double s = p.saturation();
    NormalizedParams np;
    np.omega = p.omega_g / (2.0 * p.gamma_eg * s);
    np.delta = p.delta_v / (2.0 * p.gamma_eg);
    np.gamma1_tilde = p.gamma_1 / p.gamma_r;
    np.gamma_tilde = p.Gamma / (p.gamma_eg * s);
    np.epsilon = p.epsilon;
    np.saturation = s;
    return np;
}

SystemParams NormalizedParams::to_system(double gamma_r, double gamma_eg) const {
    SystemParams p;
    p.gamma_r = gamma_r;
    p.gamma_eg = gamma_eg;
    p.delta_v = 2.0 * delta * gamma_eg;
    p.kappa = std::sqrt(saturation * (gamma_eg * gamma_eg + p.delta_v * p.delta_v));
    p.omega_g = 2.0 * omega * gamma_eg * saturation;
    p.omega_e = p.omega_g;
    p.gamma_1 = gamma1_tilde * gamma_r;
    p.Gamma = gamma_tilde * gamma_eg * saturation;
    p.epsilon = epsilon;
    p.beta = 1.0;
    return p;
}

std::optional<std::string> NormalizedParams::validity_warning() const {
    if (saturation > 0.1)
        return "saturation parameter S = " + std::to_string(saturation) +
               " exceeds 0.1; the low-saturation model degrades beyond first order";
    return std::nullopt;
}

double pi_e0(const SystemParams& p) {
    return 2.0 * p.gamma_eg * p.saturation() / (p.gamma_r + p.Gamma);
}

std::array<double, 3> PolyCoeffs::numerator_at(double delta) const {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
        out[i] = n[i][0] + delta * (n[i][1] + delta * n[i][2]);
    return out;
}

std::array<double, 3> PolyCoeffs::denominator_at(double delta) const {
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k)
        out[k] = d[k][0] + delta * (d[k][1] + delta * d[k][2]);
    return out;
}

PolyCoeffs analytic_coeffs(double gamma1_tilde, double epsilon) {
    if (gamma1_tilde < 0.0)
        throw std::domain_error("analytic_coeffs: gamma1_tilde must be >= 0");
    const double g = gamma1_tilde;
    const double c = Polarization(epsilon).cos2eps();
    const double s = Polarization(epsilon).sin2eps();
    const double c2 = c * c, c4 = c2 * c2;
    const double g2 = g * g, g3 = g2 * g;
    const double o = 1.0 + g, o2 = o * o;

    PolyCoeffs pc;
    pc.n[0][0] = (5 + 7 * g) * (25 + 115 * g + 172 * g2 + 84 * g3 -
                                c2 * (15 + 9 * g - 76 * g2 - 84 * g3) - 4 * c4 * g);
    pc.n[0][2] = -4 * o2 * (-25 * (5 + 16 * g + 12 * g2) +
                            c2 * (175 + 320 * g - 12 * g2) -
                            12 * c4 * (5 - 4 * g - 24 * g2));
    pc.n[1][1] = 160 * s * o2 * (15 + 48 * g + 36 * g2 - c2 * (8 - 6 * g - 36 * g2));
    pc.n[2][0] = 48 * o2 * (12 * (1 + 2 * g) * (5 + 6 * g) -
                            5 * c2 * (7 - 5 * g - 30 * g2));
    pc.d[0][0] = (5 + 7 * g) * ((5 + 7 * g) * (5 + 32 * g + 36 * g2) -
                                4 * c2 * (2 + 5 * g - 8 * g2 - 14 * g3));
    pc.d[0][2] = -4 * o2 * (-25 * (5 + 32 * g + 36 * g2) +
                            4 * c2 * (35 + 194 * g + 166 * g2) -
                            32 * c4 * (1 + g - 6 * g2));
    pc.d[1][1] = 160 * s * o2 * (3 * (5 + 32 * g + 36 * g2) - c2 * (4 + 2 * g - 24 * g2));
    pc.d[2][0] = 192 * o2 * (3 * (5 + 32 * g + 36 * g2) - c2 * (4 - 25 * g2));
    return pc;
}

double analytic_pi_e(const NormalizedParams& np) {
    if (np.gamma_tilde != 0.0)
        throw std::domain_error(
            "analytic_pi_e: closed-form tables exist only at gamma_tilde = 0; "
            "use reduced_numeric for finite transit relaxation");
    const PolyCoeffs pc = analytic_coeffs(np.gamma1_tilde, np.epsilon);
    const auto N = pc.numerator_at(np.delta);
    const auto D = pc.denominator_at(np.delta);
    const double om = np.omega;
    const double den = D[0] + om * (D[1] + om * D[2]);
    if (den == 0.0) throw std::runtime_error("analytic_pi_e: vanishing denominator");
    return (N[0] + om * (N[1] + om * N[2])) / den;
}

SteadyStateSolution reduced_numeric(const SystemParams& params) {
    params.validate();
    const Basis basis = params.basis();
    const int ng = basis.ng(), ne = basis.ne();

    if (params.Gamma == 0.0) {
        if (params.beta < 1.0)
            throw std::runtime_error(
                "reduced_numeric: no steady state, open transition (beta < 1) drains "
                "population with Gamma = 0");
        if (params.kappa == 0.0)
            throw std::runtime_error(
                "reduced_numeric: steady state not unique with Gamma = 0 and no light");
    }

    // gamma_r = 1 units
    const double u = 1.0 / params.gamma_r;
    const double delta_v = params.delta_v * u;
    const double gamma_r = 1.0;
    const double gamma_1 = params.gamma_1 * u;
    const double gamma_eg = params.gamma_eg * u;
    const double Gamma = params.Gamma * u;
    const double omega_g = params.omega_g * u;
    const double S = params.saturation();

    const Eigen::MatrixXcd V =
        angular::coupling_operator(basis, Polarization(params.epsilon))
            .block(Level::excited, Level::ground);
    const Eigen::MatrixXcd W = V.adjoint() * V;
    const Eigen::MatrixXcd Fg =
        angular::magnetic_projection(basis, Level::ground, params.b_direction)
            .block(Level::ground, Level::ground);
    std::array<Eigen::MatrixXcd, 3> T;
    for (int q = -1; q <= 1; ++q)
        T[q + 1] = angular::wigner_t(basis, Level::excited, Level::ground, q)
                       .block(Level::excited, Level::ground);

    const int n2 = ng * ng;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n2, n2);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n2);
    auto idx = [ng](int r, int c) { return r + c * ng; };

    // ground equation with rho_ee eliminated:
    //   Gamma rho + i Og [Fg, rho] + S(geg + i dv) W rho + S(geg - i dv) rho W
    //   - (beta gr 2 geg S/(Gamma+gr+g1)) sum_q (Tq+ V) rho (V+ Tq)
    //   - (beta gr g1 2 geg S/(ne (Gamma+gr+g1)(Gamma+gr))) M Tr(W rho) = Gamma/ng Pi_g
    const double feed_coef = params.beta * gamma_r * 2.0 * gamma_eg * S /
                             (Gamma + gamma_r + gamma_1);
    const double iso_coef = params.beta * gamma_r * gamma_1 * 2.0 * gamma_eg * S /
                            (ne * (Gamma + gamma_r + gamma_1) * (Gamma + gamma_r));
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(ng, ng);
    for (const auto& tq : T) M += tq.adjoint() * tq;

    std::array<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>, 3> feed;
    for (int k = 0; k < 3; ++k)
        feed[k] = {T[k].adjoint() * V, V.adjoint() * T[k]};

    for (int r = 0; r < ng; ++r)
        for (int c = 0; c < ng; ++c) {
            const int row = idx(r, c);
            A(row, row) += Gamma;
            for (int p = 0; p < ng; ++p) {
                A(row, idx(p, c)) += kI * omega_g * Fg(r, p) +
                                     S * complex<double>(gamma_eg, delta_v) * W(r, p);
                A(row, idx(r, p)) += -kI * omega_g * Fg(p, c) +
                                     S * complex<double>(gamma_eg, -delta_v) * W(p, c);
            }
            for (const auto& [Lq, Rq] : feed)
                for (int p = 0; p < ng; ++p)
                    for (int q = 0; q < ng; ++q)
                        A(row, idx(p, q)) -= feed_coef * Lq(r, p) * Rq(q, c);
            for (int p = 0; p < ng; ++p)
                for (int q = 0; q < ng; ++q)
                    A(row, idx(p, q)) -= iso_coef * M(r, c) * W(q, p);
            if (r == c) b(row) = Gamma / static_cast<double>(ng);
        }

    if (Gamma == 0.0) {
        // analytic-table normalization: all population in the ground state
        const int row = idx(0, 0);
        A.row(row).setZero();
        for (int p = 0; p < ng; ++p) A(row, idx(p, p)) = 1.0;
        b(row) = 1.0;
    }

    const Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(b);
    const double residual = (A * x - b).norm() / std::max(1.0, b.norm());
    if (!std::isfinite(residual) || residual > 1e-8)
        throw std::runtime_error("reduced_numeric: singular ground-state system");

    SteadyStateSolution sol;
    sol.rho.rho_gg = Eigen::Map<const Eigen::MatrixXcd>(x.data(), ng, ng);

    // excited block from its algebraic relation
    const Eigen::MatrixXcd pump = 2.0 * gamma_eg * S * V * sol.rho.rho_gg * V.adjoint();
    const complex<double> tr_ee = pump.trace() / (Gamma + gamma_r);
    sol.rho.rho_ee = pump;
    for (int i = 0; i < ne; ++i)
        sol.rho.rho_ee(i, i) += gamma_1 * tr_ee / static_cast<double>(ne);
    sol.rho.rho_ee /= (Gamma + gamma_r + gamma_1);

    // first-order optical coherence, for completeness of the density matrix
    const double kappa_u = params.kappa * u;
    sol.rho.rho_eg_bar = (-kI * kappa_u / complex<double>(gamma_eg, -delta_v)) *
                         (V * sol.rho.rho_gg - sol.rho.rho_ee * V);

    sol.pi_e = sol.rho.rho_ee.trace().real();
    sol.residual_norm = residual;
    return sol;
}

}  // namespace hanle::reduced
