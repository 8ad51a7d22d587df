#include "hanle/doppler.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace hanle::doppler {

namespace {

struct Rule {
    std::vector<double> x;  // nodes on [-1, 1]
    std::vector<double> w;
};

// Gauss-Legendre nodes/weights by Golub-Welsch on the Jacobi matrix
Rule legendre_rule(int order) {
    Rule r;
    if (order == 1) {
        r.x = {0.0};
        r.w = {2.0};
        return r;
    }
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order - 1);
    for (int k = 1; k < order; ++k) {
        const double kk = static_cast<double>(k);
        sub(k - 1) = kk / std::sqrt(4.0 * kk * kk - 1.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    r.x.resize(order);
    r.w.resize(order);
    for (int i = 0; i < order; ++i) {
        r.x[i] = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        r.w[i] = 2.0 * v0 * v0;
    }
    return r;
}

// symmetric graded mesh on [-X, X] (in units of vbar), fine near the core
struct Mesh {
    std::vector<double> nodes;    // x values
    std::vector<double> weights;  // include the exp(-x^2)/sqrt(pi) factor
};

Mesh build_mesh(int order, double core_center) {
    constexpr double kFinest = 1e-4;
    constexpr double kCap = 0.5;
    constexpr double kExtent = 8.5;

    const Rule rule = legendre_rule(order);
    Mesh mesh;

    auto add_panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b), hw = 0.5 * (b - a);
        for (size_t i = 0; i < rule.x.size(); ++i) {
            const double x = mid + hw * rule.x[i];
            mesh.nodes.push_back(x);
            mesh.weights.push_back(hw * rule.w[i] * std::exp(-x * x) /
                                   std::sqrt(std::numbers::pi));
        }
    };

    const double c0 = std::clamp(core_center, -kExtent + 1.0, kExtent - 1.0);
    // grow geometrically from the core toward each end
    for (const int dir : {+1, -1}) {
        double edge = c0;
        double h = kFinest;
        const double stop = dir > 0 ? kExtent : -kExtent;
        while (dir > 0 ? edge < stop : edge > stop) {
            double nxt = edge + dir * h;
            if (dir > 0 ? nxt > stop : nxt < stop) nxt = stop;
            add_panel(std::min(edge, nxt), std::max(edge, nxt));
            edge = nxt;
            h = std::min(2.0 * h, kCap);
        }
    }
    return mesh;
}

}  // namespace

DopplerParams DopplerParams::from_physical(double k, double boltzmann_kb,
                                           double temperature, double mass,
                                           int quadrature_order) {
    if (k < 0.0 || boltzmann_kb <= 0.0 || temperature < 0.0 || mass <= 0.0)
        throw std::domain_error("DopplerParams::from_physical: invalid inputs");
    DopplerParams dp;
    dp.k_vbar = k * std::sqrt(2.0 * boltzmann_kb * temperature / mass);
    dp.quadrature_order = quadrature_order;
    dp.validate();
    return dp;
}

void DopplerParams::validate() const {
    if (k_vbar < 0.0) throw std::domain_error("DopplerParams: k_vbar must be >= 0");
    if (quadrature_order < 1 || quadrature_order > 1024)
        throw std::domain_error("DopplerParams: quadrature_order must be in [1, 1024]");
}

void ScanResult::validate() const {
    if (omega_g_grid.size() != signal.size())
        throw std::domain_error("ScanResult: grid/signal length mismatch");
    for (size_t i = 1; i < omega_g_grid.size(); ++i)
        if (!(omega_g_grid[i] > omega_g_grid[i - 1]))
            throw std::domain_error("ScanResult: grid must be strictly increasing");
}

double doppler_average(const std::function<double(double)>& signal_fn,
                       const DopplerParams& dp, double core_center) {
    dp.validate();
    if (dp.k_vbar == 0.0) return signal_fn(0.0);
    const Mesh mesh = build_mesh(dp.quadrature_order, core_center);
    double acc = 0.0;
    for (size_t i = 0; i < mesh.nodes.size(); ++i)
        acc += mesh.weights[i] * signal_fn(dp.k_vbar * mesh.nodes[i]);
    return acc;
}

ScanResult averaged_scan(const SystemParams& params, const DopplerParams& dp,
                         std::vector<double> omega_g_grid) {
    params.validate();
    dp.validate();

    ScanResult out;
    out.params = params;
    out.doppler = dp;
    out.normalization = "raw";
    out.omega_g_grid = std::move(omega_g_grid);
    out.signal.resize(out.omega_g_grid.size());
    out.validate();

    const double delta_rest = params.delta_v;
    const double core = dp.k_vbar > 0.0 ? delta_rest / dp.k_vbar : 0.0;
    for (size_t i = 0; i < out.omega_g_grid.size(); ++i) {
        SystemParams p = params;
        p.omega_g = out.omega_g_grid[i];
        p.omega_e = out.omega_g_grid[i];
        try {
            out.signal[i] = doppler_average(
                [&](double kv) {
                    SystemParams pv = p;
                    pv.delta_v = delta_rest - kv;
                    return reduced::reduced_numeric(pv).pi_e;
                },
                dp, core);
        } catch (const std::exception& e) {
            throw std::runtime_error("averaged_scan: node failure at omega_g = " +
                                     std::to_string(out.omega_g_grid[i]) + ": " +
                                     e.what());
        }
    }
    return out;
}

ScanResult normalized_for_display(const ScanResult& scan) {
    scan.validate();
    const size_t n = scan.signal.size();
    if (n < 3) throw std::domain_error("normalized_for_display: need >= 3 points");
    const double bg = 0.5 * (scan.signal.front() + scan.signal.back());

    // central height at omega_g = 0 by linear interpolation
    const auto& x = scan.omega_g_grid;
    double center = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i + 1 < n; ++i) {
        if (x[i] <= 0.0 && x[i + 1] >= 0.0) {
            const double span = x[i + 1] - x[i];
            const double t = span > 0.0 ? -x[i] / span : 0.0;
            center = scan.signal[i] + t * (scan.signal[i + 1] - scan.signal[i]);
            break;
        }
    }
    if (!std::isfinite(center))
        throw std::domain_error("normalized_for_display: grid must straddle omega_g = 0");
    const double h = center - bg;
    if (h == 0.0)
        throw std::runtime_error("normalized_for_display: flat curve, nothing to scale");

    ScanResult out = scan;
    out.normalization = "background subtracted, normalized to center height";
    for (auto& v : out.signal) v = (v - bg) / h;
    return out;
}

double resonance_width(const ScanResult& scan) {
    scan.validate();
    const auto& x = scan.omega_g_grid;
    const auto& y = scan.signal;
    const size_t n = y.size();
    if (n < 5) throw std::runtime_error("resonance_width: grid too narrow");

    const double bg = 0.5 * (y.front() + y.back());
    size_t i0 = 0;
    for (size_t i = 1; i < n; ++i)
        if (std::abs(y[i] - bg) > std::abs(y[i0] - bg)) i0 = i;
    const double h = y[i0] - bg;
    if (h == 0.0) throw std::runtime_error("resonance_width: flat curve");
    const double half = bg + 0.5 * h;

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
        throw std::runtime_error("resonance_width: grid too narrow");
    };
    const double left = cross(-1);
    const double right = cross(+1);
    return right - left;
}

}  // namespace hanle::doppler
