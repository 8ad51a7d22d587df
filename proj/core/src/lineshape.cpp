#include "hanle/lineshape.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hanle::lineshape {

LorentzianParams lorentzian_from_coeffs(const PolyCoeffs& pc, double delta) {
    const auto N = pc.numerator_at(delta);
    const auto D = pc.denominator_at(delta);
    const double disc = 4.0 * D[0] * D[2] - D[1] * D[1];
    if (D[2] == 0.0 || disc <= 0.0)
        throw std::runtime_error("lorentzian_from_coeffs: resonance degenerate");

    LorentzianParams lp;
    lp.a = 2.0 * (2.0 * N[0] * D[2] * D[2] + N[2] * D[1] * D[1] -
                  N[1] * D[1] * D[2] - 2.0 * N[2] * D[0] * D[2]) /
           (D[2] * disc);
    lp.b = 2.0 * (N[1] * D[2] - N[2] * D[1]) / (D[2] * std::sqrt(disc));
    lp.c_bg = N[2] / D[2];
    lp.omega0 = -D[1] / (2.0 * D[2]);
    lp.w = std::sqrt(disc) / (2.0 * std::abs(D[2]));
    return lp;
}

double eval_lorentzian(const LorentzianParams& lp, double omega_g) {
    const double d = omega_g - lp.omega0;
    const double u = d * d + lp.w * lp.w;
    return lp.a * lp.w * lp.w / u + lp.b * lp.w * d / u + lp.c_bg;
}

LorentzianParams to_physical(const LorentzianParams& lp, double magnetic_unit,
                             double pi_e0) {
    LorentzianParams out = lp;
    out.a *= pi_e0;
    out.b *= pi_e0;
    out.c_bg *= pi_e0;
    out.omega0 *= magnetic_unit;
    out.w *= magnetic_unit;
    return out;
}

namespace {

// residuals and Jacobian of the generalized Lorentzian in (a, b, c, x0, w)
void model_jacobian(std::span<const double> x, const LorentzianParams& p,
                    Eigen::VectorXd& f, Eigen::MatrixXd& J) {
    const auto n = static_cast<Eigen::Index>(x.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = x[i] - p.omega0;
        const double w2 = p.w * p.w;
        const double u = d * d + w2;
        const double u2 = u * u;
        f(i) = p.a * w2 / u + p.b * p.w * d / u + p.c_bg;
        J(i, 0) = w2 / u;
        J(i, 1) = p.w * d / u;
        J(i, 2) = 1.0;
        J(i, 3) = 2.0 * p.a * w2 * d / u2 + p.b * p.w * (d * d - w2) / u2;
        J(i, 4) = 2.0 * p.a * p.w * d * d / u2 + p.b * d * (d * d - w2) / u2;
    }
}

// linear interpolation of sampled data at xq; NaN outside the grid
double eval_at(std::span<const double> x, std::span<const double> y, double xq) {
    if (x.size() < 2 || xq < x.front() || xq > x.back())
        return std::numeric_limits<double>::quiet_NaN();
    const auto it = std::upper_bound(x.begin(), x.end(), xq);
    const size_t j = std::min<size_t>(std::distance(x.begin(), it), x.size() - 1);
    const size_t i = j - 1;
    const double t = (xq - x[i]) / (x[j] - x[i]);
    return y[i] + t * (y[j] - y[i]);
}

LorentzianParams initial_guess(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    const size_t wing = std::max<size_t>(1, n / 10);
    double bg = 0.0;
    for (size_t i = 0; i < wing; ++i) bg += y[i] + y[n - 1 - i];
    bg /= static_cast<double>(2 * wing);

    size_t i0 = 0;
    for (size_t i = 1; i < n; ++i)
        if (std::abs(y[i] - bg) > std::abs(y[i0] - bg)) i0 = i;
    const double a = y[i0] - bg;

    // half-width scan outward from the extremum
    const double half = bg + 0.5 * a;
    auto cross = [&](int dir) -> double {
        size_t i = i0;
        while ((dir < 0 && i > 0) || (dir > 0 && i + 1 < n)) {
            const size_t j = i + dir;
            if ((y[i] - half) * (y[j] - half) <= 0.0) {
                const double t = (half - y[i]) / (y[j] - y[i]);
                return x[i] + t * (x[j] - x[i]);
            }
            i = j;
        }
        return std::numeric_limits<double>::quiet_NaN();
    };
    const double xl = cross(-1), xr = cross(+1);
    double w;
    if (std::isfinite(xl) && std::isfinite(xr))
        w = 0.5 * (xr - xl);
    else if (std::isfinite(xl))
        w = x[i0] - xl;
    else if (std::isfinite(xr))
        w = xr - x[i0];
    else
        w = 0.25 * (x[n - 1] - x[0]);
    w = std::max(w, 1e-12 * (x[n - 1] - x[0]));

    LorentzianParams p;
    p.a = a;
    p.c_bg = bg;
    p.omega0 = x[i0];
    p.w = w;
    // B estimate from the model identity f(x0 +- w) = C + A/2 +- B/2
    const double yp = eval_at(x, y, p.omega0 + w);
    const double ym = eval_at(x, y, p.omega0 - w);
    if (std::isfinite(yp) && std::isfinite(ym)) p.b = yp - ym;
    return p;
}

}  // namespace

FitResult fit_lorentzian(std::span<const double> omega_g,
                         std::span<const double> signal) {
    if (omega_g.size() != signal.size())
        throw std::invalid_argument("fit_lorentzian: mismatched sample arrays");
    const auto n = static_cast<Eigen::Index>(omega_g.size());
    if (n < 7) throw std::invalid_argument("fit_lorentzian: need at least 7 samples");

    LorentzianParams p = initial_guess(omega_g, signal);
    const Eigen::Map<const Eigen::VectorXd> y(signal.data(), n);

    Eigen::VectorXd f(n);
    Eigen::MatrixXd J(n, 5);
    double lambda = 1e-3;
    double prev_cost = std::numeric_limits<double>::infinity();
    constexpr int kMaxIter = 200;

    FitResult out;
    int it = 0;
    for (; it < kMaxIter; ++it) {
        model_jacobian(omega_g, p, f, J);
        const Eigen::VectorXd r = f - y;
        const double cost = r.squaredNorm();

        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;
        if (g.lpNorm<Eigen::Infinity>() < 1e-14 * std::max(1.0, cost)) {
            prev_cost = cost;
            out.converged = true;
            break;
        }

        Eigen::MatrixXd Aug = JtJ;
        for (int k = 0; k < 5; ++k)
            Aug(k, k) += lambda * std::max(JtJ(k, k), 1e-30);
        const Eigen::VectorXd step = Aug.ldlt().solve(-g);

        LorentzianParams trial = p;
        trial.a += step(0);
        trial.b += step(1);
        trial.c_bg += step(2);
        trial.omega0 += step(3);
        trial.w += step(4);
        if (trial.w < 0.0) {  // the model is invariant under (w, b) -> (-w, -b)
            trial.w = -trial.w;
            trial.b = -trial.b;
        }

        Eigen::VectorXd ft(n);
        Eigen::MatrixXd Jt(n, 5);
        model_jacobian(omega_g, trial, ft, Jt);
        const double trial_cost = (ft - y).squaredNorm();
        if (trial_cost < cost) {
            const double rel = std::abs(cost - trial_cost) / std::max(cost, 1e-300);
            p = trial;
            lambda = std::max(lambda * 0.3, 1e-12);
            prev_cost = trial_cost;
            if (rel < 1e-14) {
                out.converged = true;
                ++it;
                break;
            }
        } else {
            lambda *= 10.0;
            prev_cost = cost;
            if (lambda > 1e12) break;
        }
    }

    out.params = p;
    out.iterations = it;
    const double range = *std::max_element(signal.begin(), signal.end()) -
                         *std::min_element(signal.begin(), signal.end());
    out.goodness = std::sqrt(prev_cost / static_cast<double>(n)) /
                   std::max(range, 1e-300);
    return out;
}

double sign_reversal_gamma1(double epsilon, double delta, double gamma1_max) {
    if (gamma1_max <= 0.0)
        throw std::invalid_argument("sign_reversal_gamma1: gamma1_max must be > 0");
    auto amp = [&](double g1) {
        return lorentzian_from_coeffs(reduced::analytic_coeffs(g1, epsilon), delta).a;
    };

    // bracket scan; ignore numbers at the noise floor (A can vanish
    // identically, e.g. pure circular polarization)
    constexpr int kScan = 200;
    double max_abs = 0.0;
    std::vector<double> gs(kScan + 1), as(kScan + 1);
    for (int i = 0; i <= kScan; ++i) {
        gs[i] = gamma1_max * static_cast<double>(i) / kScan;
        as[i] = amp(gs[i]);
        max_abs = std::max(max_abs, std::abs(as[i]));
    }
    if (max_abs < 1e-14)
        throw std::runtime_error("sign_reversal_gamma1: no reversal in range");

    double lo = -1.0, hi = -1.0;
    for (int i = 0; i < kScan; ++i) {
        if (as[i] == 0.0) return gs[i];
        if (as[i] * as[i + 1] < 0.0) {
            lo = gs[i];
            hi = gs[i + 1];
            break;
        }
    }
    if (lo < 0.0)
        throw std::runtime_error("sign_reversal_gamma1: no reversal in range");

    double flo = amp(lo);
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double fm = amp(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace hanle::lineshape
