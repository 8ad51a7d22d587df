#include "hanle/angular.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>

namespace hanle::angular {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial_cpp(int n) {
    cpp_int r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// Racah sum for <a alpha; b beta | c gamma> with all quantum numbers given as
// twice their value.  The sum and the squared prefactor are carried as exact
// rationals; the single rounding happens in the final sqrt.
double racah_cg(int ta, int talpha, int tb, int tbeta, int tc, int tgamma) {
    if (talpha + tbeta != tgamma) return 0.0;
    if (tc < std::abs(ta - tb) || tc > ta + tb) return 0.0;
    if ((ta + tb + tc) % 2 != 0) return 0.0;

    // integer values of the factorial arguments (all guaranteed integral here)
    auto half = [](int t) { return t / 2; };
    const int abc1 = half(ta + tb + tc) + 1;
    const int c_ab = half(tc + ta - tb);
    const int c_ba = half(tc - ta + tb);
    const int ab_c = half(ta + tb - tc);
    if ((ta + tb - tc) % 2 != 0) return 0.0;

    cpp_rational pref = cpp_rational(tc + 1);  // (2c+1)
    pref *= cpp_rational(factorial_cpp(c_ab) * factorial_cpp(c_ba) * factorial_cpp(ab_c),
                         factorial_cpp(abc1));
    pref *= factorial_cpp(half(tc + tgamma));
    pref *= factorial_cpp(half(tc - tgamma));
    pref *= factorial_cpp(half(ta + talpha));
    pref *= factorial_cpp(half(ta - talpha));
    pref *= factorial_cpp(half(tb + tbeta));
    pref *= factorial_cpp(half(tb - tbeta));

    const int kmin = std::max({0, -half(tc - tb + talpha), -half(tc - ta - tbeta)});
    const int kmax = std::min({ab_c, half(ta - talpha), half(tb + tbeta)});
    if (kmin > kmax) return 0.0;

    cpp_rational sum = 0;
    for (int k = kmin; k <= kmax; ++k) {
        cpp_int den = factorial_cpp(k) * factorial_cpp(ab_c - k) *
                      factorial_cpp(half(ta - talpha) - k) *
                      factorial_cpp(half(tb + tbeta) - k) *
                      factorial_cpp(half(tc - tb + talpha) + k) *
                      factorial_cpp(half(tc - ta - tbeta) + k);
        cpp_rational term(1, den);
        if (k % 2 != 0) term = -term;
        sum += term;
    }
    if (sum == 0) return 0.0;

    const cpp_rational mag2 = pref * sum * sum;  // exact C^2
    const double c = std::sqrt(mag2.convert_to<double>());
    return sum < 0 ? -c : c;
}

// Spherical components of a real vector in the basis e_{+-1} = -+(e_x +- i e_y)/sqrt(2),
// e_0 = e_z: a_{+1} = -(a_x + i a_y)/sqrt(2), a_{-1} = (a_x - i a_y)/sqrt(2), a_0 = a_z.
std::complex<double> spherical_component(const Eigen::Vector3d& a, int q) {
    constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    switch (q) {
        case +1: return {-a.x() * inv_sqrt2, -a.y() * inv_sqrt2};
        case 0: return {a.z(), 0.0};
        case -1: return {a.x() * inv_sqrt2, -a.y() * inv_sqrt2};
        default: throw std::domain_error("spherical_component: q must be in {-1,0,+1}");
    }
}

}  // namespace

Polarization::Polarization(double epsilon) : epsilon_(epsilon) {
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    if (!(epsilon >= -quarter_pi && epsilon <= quarter_pi))
        throw std::domain_error("Polarization: epsilon must lie in [-pi/4, pi/4]");
}

double Polarization::e_plus() const { return std::cos(epsilon_ - std::numbers::pi / 4.0); }
double Polarization::e_minus() const { return std::sin(epsilon_ - std::numbers::pi / 4.0); }
double Polarization::cos2eps() const { return std::cos(2.0 * epsilon_); }
double Polarization::sin2eps() const { return std::sin(2.0 * epsilon_); }

double clebsch_gordan(const AngularMomentum& f_a, HalfInt m_a,
                      const AngularMomentum& f_b, HalfInt m_b, int q) {
    if (q < -1 || q > 1) throw std::domain_error("clebsch_gordan: q must be in {-1,0,+1}");
    if (std::abs(m_a.twice) > f_a.twice_f() || (f_a.twice_f() + m_a.twice) % 2 != 0)
        throw std::domain_error("clebsch_gordan: m_a out of range for F_a");
    if (std::abs(m_b.twice) > f_b.twice_f() || (f_b.twice_f() + m_b.twice) % 2 != 0)
        throw std::domain_error("clebsch_gordan: m_b out of range for F_b");
    if (std::abs(f_a.twice_f() - f_b.twice_f()) > 2) return 0.0;
    return racah_cg(f_b.twice_f(), m_b.twice, 2, 2 * q, f_a.twice_f(), m_a.twice);
}

Operator wigner_t(const Basis& basis, Level a, Level b, int q) {
    const auto& fa = basis.momentum(a);
    const auto& fb = basis.momentum(b);
    if (std::abs(fa.twice_f() - fb.twice_f()) > 2)
        throw std::domain_error("wigner_t: |F_a - F_b| must be <= 1");
    Operator op = Operator::zero(basis);
    auto blk = op.block(a, b);
    for (int j = 0; j < fb.dim(); ++j) {
        const HalfInt mb = fb.m_at(j);
        const HalfInt ma = HalfInt::from_twice(mb.twice + 2 * q);
        if (std::abs(ma.twice) > fa.twice_f()) continue;
        const int i = (ma.twice + fa.twice_f()) / 2;
        blk(i, j) = clebsch_gordan(fa, ma, fb, mb, q);
    }
    return op;
}

Operator coupling_operator(const Basis& basis, const Polarization& pol) {
    if (std::abs(basis.fg.twice_f() - basis.fe.twice_f()) > 2)
        throw std::domain_error("coupling_operator: |Fg - Fe| must be <= 1");
    Operator tp = wigner_t(basis, Level::excited, Level::ground, +1);
    Operator tm = wigner_t(basis, Level::excited, Level::ground, -1);
    Operator v = Operator::zero(basis);
    v.matrix() = pol.e_plus() * tp.matrix() + pol.e_minus() * tm.matrix();
    return v;
}

Operator magnetic_projection(const Basis& basis, Level level,
                             const Eigen::Vector3d& b_direction) {
    if (std::abs(b_direction.norm() - 1.0) > 1e-9)
        throw std::domain_error("magnetic_projection: b_direction must be a unit vector");
    const auto& f = basis.momentum(level);
    const double scale = std::sqrt(f.f() * (f.f() + 1.0));
    Operator op = Operator::zero(basis);
    // vector dot product in spherical form: T.b = sum_q (-1)^q T_q b_{-q}
    for (int q = -1; q <= 1; ++q) {
        const std::complex<double> bq = spherical_component(b_direction, -q);
        if (bq == std::complex<double>(0.0, 0.0)) continue;
        Operator tq = wigner_t(basis, level, level, q);
        const double sign = (q == 0) ? 1.0 : -1.0;
        op.matrix() += sign * scale * bq * tq.matrix();
    }
    return op;
}

}  // namespace hanle::angular
