#include <doctest.h>

#include "hanle/angular.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace hanle::angular;

namespace {

// Independent oracle: Racah sum in plain double arithmetic (factorial table),
// kept deliberately separate from the exact-integer production path.
// Arguments are twice the quantum numbers; computes <a alpha; b beta | c gamma>.
double oracle_cg(int ta, int talpha, int tb, int tbeta, int tc, int tgamma) {
    if (talpha + tbeta != tgamma) return 0.0;
    if (tc < std::abs(ta - tb) || tc > ta + tb) return 0.0;
    if ((ta + tb + tc) % 2 != 0) return 0.0;
    static const auto fact = [] {
        std::array<double, 64> f{};
        f[0] = 1.0;
        for (size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
        return f;
    }();
    auto h = [](int t) { return t / 2; };
    const double pref =
        (tc + 1) * fact[h(tc + ta - tb)] * fact[h(tc - ta + tb)] * fact[h(ta + tb - tc)] /
        fact[h(ta + tb + tc) + 1] * fact[h(tc + tgamma)] * fact[h(tc - tgamma)] *
        fact[h(ta + talpha)] * fact[h(ta - talpha)] * fact[h(tb + tbeta)] *
        fact[h(tb - tbeta)];
    const int kmin = std::max({0, -h(tc - tb + talpha), -h(tc - ta - tbeta)});
    const int kmax = std::min({h(ta + tb - tc), h(ta - talpha), h(tb + tbeta)});
    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double den = fact[k] * fact[h(ta + tb - tc) - k] *
                           fact[h(ta - talpha) - k] * fact[h(tb + tbeta) - k] *
                           fact[h(tc - tb + talpha) + k] * fact[h(tc - ta - tbeta) + k];
        sum += (k % 2 ? -1.0 : 1.0) / den;
    }
    return std::sqrt(pref) * sum;
}

double cg(int tfa, int tma, int tfb, int tmb, int q) {
    return clebsch_gordan(AngularMomentum::from_twice(tfa), HalfInt::from_twice(tma),
                          AngularMomentum::from_twice(tfb), HalfInt::from_twice(tmb), q);
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("oracle sanity: column orthonormality of the oracle itself") {
    // sum over (mb, q) of <b mb 1 q|a ma>^2 = 1 for every reachable ma
    for (int tfb = 0; tfb <= 6; ++tfb)
        for (int tfa : {tfb - 2, tfb, tfb + 2}) {
            if (tfa < 0 || (tfa == 0 && tfb == 0)) continue;  // triangle 0x1->0 empty
            for (int tma = -tfa; tma <= tfa; tma += 2) {
                double s = 0.0;
                for (int q = -1; q <= 1; ++q) {
                    const int tmb = tma - 2 * q;
                    if (std::abs(tmb) > tfb) continue;
                    const double v = oracle_cg(tfb, tmb, 2, 2 * q, tfa, tma);
                    s += v * v;
                }
                CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
}

TEST_CASE("frozen table values for 1 (x) 1 couplings") {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    const double r3 = 1.0 / std::sqrt(3.0);

    // stretched-state coupling is unity
    CHECK(cg(4, 4, 2, 2, +1) == doctest::Approx(1.0).epsilon(1e-15));
    // antisymmetric coupling vanishes at m = 0
    CHECK(cg(2, 0, 2, 0, 0) == doctest::Approx(0.0));

    // F_b = 1 -> F_a = 2
    CHECK(cg(4, 2, 2, 2, 0) == doctest::Approx(r2).epsilon(1e-15));
    CHECK(cg(4, 2, 2, 0, +1) == doctest::Approx(r2).epsilon(1e-15));
    CHECK(cg(4, 0, 2, -2, +1) == doctest::Approx(r6).epsilon(1e-15));
    CHECK(cg(4, 0, 2, 0, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(cg(4, 0, 2, 2, -1) == doctest::Approx(r6).epsilon(1e-15));

    // F_b = 1 -> F_a = 1 (antisymmetric phase pattern)
    CHECK(cg(2, 2, 2, 2, 0) == doctest::Approx(r2).epsilon(1e-15));
    CHECK(cg(2, 2, 2, 0, +1) == doctest::Approx(-r2).epsilon(1e-15));
    CHECK(cg(2, 0, 2, -2, +1) == doctest::Approx(-r2).epsilon(1e-15));
    CHECK(cg(2, 0, 2, 2, -1) == doctest::Approx(r2).epsilon(1e-15));

    // F_b = 1 -> F_a = 0
    CHECK(cg(0, 0, 2, 2, -1) == doctest::Approx(r3).epsilon(1e-15));
    CHECK(cg(0, 0, 2, 0, 0) == doctest::Approx(-r3).epsilon(1e-15));
    CHECK(cg(0, 0, 2, -2, +1) == doctest::Approx(r3).epsilon(1e-15));

    // half-integer case: 1/2 (x) 1 -> 3/2
    CHECK(cg(3, 3, 1, 1, +1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cg(3, 1, 1, 1, 0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(cg(3, 1, 1, -1, +1) == doctest::Approx(r3).epsilon(1e-15));
}

TEST_CASE("production matches the independent oracle over all small momenta") {
    for (int tfb = 0; tfb <= 7; ++tfb)
        for (int tfa : {tfb - 2, tfb, tfb + 2}) {
            if (tfa < 0) continue;
            for (int tmb = -tfb; tmb <= tfb; tmb += 2)
                for (int q = -1; q <= 1; ++q) {
                    const int tma = tmb + 2 * q;
                    if (std::abs(tma) > tfa) continue;
                    const double want = oracle_cg(tfb, tmb, 2, 2 * q, tfa, tma);
                    const double got = cg(tfa, tma, tfb, tmb, q);
                    CHECK(got == doctest::Approx(want).epsilon(1e-12));
                }
        }
}

TEST_CASE("selection rules and domain errors") {
    CHECK(cg(4, 2, 2, 2, +1) == 0.0);  // m_a != m_b + q
    // |F_a - F_b| > 1
    CHECK(clebsch_gordan(AngularMomentum(3), HalfInt(1), AngularMomentum(1), HalfInt(0),
                         1) == 0.0);
    CHECK_THROWS_AS(cg(2, 4, 2, 2, 1), std::domain_error);       // |m_a| > F_a
    CHECK_THROWS_AS(cg(2, 1, 2, 1, 0), std::domain_error);       // parity mismatch
    CHECK_THROWS_AS(cg(2, 0, 2, 0, 2), std::domain_error);       // q out of range
    CHECK_THROWS_AS(AngularMomentum::from_twice(-1), std::domain_error);
}

TEST_CASE("CG orthonormality property for the production path") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> fdist(0, 8);
    for (int trial = 0; trial < 50; ++trial) {
        const int tfb = fdist(rng);
        const int tfa = tfb + 2 * (static_cast<int>(rng() % 3) - 1);
        if (tfa < 0 || (tfa == 0 && tfb == 0)) continue;
        for (int tma = -tfa; tma <= tfa; tma += 2) {
            double s = 0.0;
            for (int q = -1; q <= 1; ++q) {
                const int tmb = tma - 2 * q;
                if (std::abs(tmb) > tfb) continue;
                const double v = cg(tfa, tma, tfb, tmb, q);
                s += v * v;
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("wigner_t structure") {
    const Basis b{AngularMomentum(1), AngularMomentum(2)};

    SUBCASE("q=0 on one level is proportional to Fz") {
        const Basis bb{AngularMomentum(1), AngularMomentum(1)};
        Operator t0 = wigner_t(bb, Level::ground, Level::ground, 0);
        const double scale = std::sqrt(2.0);  // sqrt(F(F+1)) for F = 1
        auto blk = t0.block(Level::ground, Level::ground);
        for (int i = 0; i < 3; ++i)
            CHECK(std::real(blk(i, i)) * scale == doctest::Approx(i - 1.0).epsilon(1e-14));
    }

    SUBCASE("sum_q T_q T_q^dag is the identity on the excited block") {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
        for (int q = -1; q <= 1; ++q) {
            const Eigen::MatrixXcd t = wigner_t(b, Level::excited, Level::ground, q).matrix();
            acc += t * t.adjoint();
        }
        Eigen::MatrixXcd pi_e = Eigen::MatrixXcd::Zero(b.dim(), b.dim());
        for (int i = 0; i < b.ne(); ++i) pi_e(b.ng() + i, b.ng() + i) = 1.0;
        CHECK((acc - pi_e).cwiseAbs().maxCoeff() < 1e-14);
    }

    SUBCASE("single stretched transition") {
        Operator tp = wigner_t(b, Level::excited, Level::ground, +1);
        // |1,1> is ground index 2; |2,2> is excited index 4
        CHECK(std::real(tp.matrix()(b.ng() + 4, 2)) == doctest::Approx(1.0));
        // column of |1,1> under T_{+1} has exactly one entry
        CHECK(tp.matrix().col(2).cwiseAbs().sum() == doctest::Approx(1.0));
    }
}

TEST_CASE("coupling_operator") {
    const Basis b{AngularMomentum(1), AngularMomentum(2)};

    SUBCASE("pure sigma+ at eps = pi/4") {
        Operator v = coupling_operator(b, Polarization(kPi / 4));
        Operator tp = wigner_t(b, Level::excited, Level::ground, +1);
        CHECK((v.matrix() - tp.matrix()).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("linear polarization weights both circular components equally") {
        Operator v = coupling_operator(b, Polarization(0.0));
        Operator tp = wigner_t(b, Level::excited, Level::ground, +1);
        Operator tm = wigner_t(b, Level::excited, Level::ground, -1);
        const Eigen::MatrixXcd want =
            (tp.matrix() - tm.matrix()) / std::sqrt(2.0);
        CHECK((v.matrix() - want).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("eps = pi/8 weights are cos(-pi/8), sin(-pi/8), unit norm") {
        const Polarization pol(kPi / 8);
        CHECK(pol.e_plus() == doctest::Approx(std::cos(-kPi / 8)));
        CHECK(pol.e_minus() == doctest::Approx(std::sin(-kPi / 8)));
        CHECK(pol.e_plus() * pol.e_plus() + pol.e_minus() * pol.e_minus() ==
              doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("Tr(V^dag V) is independent of ellipticity") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> edist(-kPi / 4, kPi / 4);
        const double want = 5.0 / 3.0;  // (2Fe+1)/(2Fg+1)
        for (int k = 0; k < 20; ++k) {
            Operator v = coupling_operator(b, Polarization(edist(rng)));
            const double tr = (v.matrix().adjoint() * v.matrix()).trace().real();
            CHECK(tr == doctest::Approx(want).epsilon(1e-13));
        }
    }

    SUBCASE("epsilon out of range rejected") {
        CHECK_THROWS_AS(Polarization(1.0), std::domain_error);
        CHECK_THROWS_AS(Polarization(-1.0), std::domain_error);
    }
}

TEST_CASE("magnetic_projection") {
    const Basis b{AngularMomentum(1), AngularMomentum(2)};

    SUBCASE("b = z is the Zeeman ladder") {
        Operator fz = magnetic_projection(b, Level::ground, {0, 0, 1});
        auto blk = fz.block(Level::ground, Level::ground);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::real(blk(i, i)) == doctest::Approx(i - 1.0).epsilon(1e-14));
            CHECK(std::abs(std::imag(blk(i, i))) < 1e-15);
        }
        Operator fze = magnetic_projection(b, Level::excited, {0, 0, 1});
        auto eblk = fze.block(Level::excited, Level::excited);
        for (int i = 0; i < 5; ++i)
            CHECK(std::real(eblk(i, i)) == doctest::Approx(i - 2.0).epsilon(1e-14));
    }

    SUBCASE("b = x has the same spectrum") {
        Operator fx = magnetic_projection(b, Level::ground, {1, 0, 0});
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            fx.block(Level::ground, Level::ground));
        for (int i = 0; i < 3; ++i)
            CHECK(es.eigenvalues()(i) == doctest::Approx(i - 1.0).epsilon(1e-12));
    }

    SUBCASE("spectrum is {-F..F} for random unit directions, and Hermitian") {
        std::mt19937 rng(99);
        std::normal_distribution<double> ndist;
        for (int k = 0; k < 10; ++k) {
            Eigen::Vector3d dir{ndist(rng), ndist(rng), ndist(rng)};
            dir.normalize();
            Operator f = magnetic_projection(b, Level::excited, dir);
            const Eigen::MatrixXcd blk = f.block(Level::excited, Level::excited);
            CHECK((blk - blk.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);
            for (int i = 0; i < 5; ++i)
                CHECK(es.eigenvalues()(i) == doctest::Approx(i - 2.0).epsilon(1e-11));
        }
    }

    SUBCASE("non-unit b rejected") {
        CHECK_THROWS_AS(magnetic_projection(b, Level::ground, {0, 0, 2}),
                        std::domain_error);
    }
}
