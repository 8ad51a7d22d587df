// Angular-momentum algebra on the Zeeman basis of a (ground, excited) level
// pair: Clebsch-Gordan coefficients, Wigner vector operators, the dipole
// coupling operator for elliptical polarization and magnetic projection
// operators along an arbitrary field direction.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace hanle::angular {

/// Half-integer stored exactly as twice its value.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr HalfInt(int whole) : twice(2 * whole) {}
    static constexpr HalfInt from_twice(int t) {
        HalfInt h;
        h.twice = t;
        return h;
    }
    constexpr double value() const { return 0.5 * twice; }
    constexpr HalfInt operator-() const { return from_twice(-twice); }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
};

/// Total angular momentum F, integer or half-integer, F >= 0.
class AngularMomentum {
  public:
    explicit AngularMomentum(HalfInt f) : twice_f_(f.twice) {
        if (twice_f_ < 0) throw std::domain_error("AngularMomentum: F must be >= 0");
    }
    static AngularMomentum from_twice(int twice_f) {
        return AngularMomentum(HalfInt::from_twice(twice_f));
    }

    int twice_f() const { return twice_f_; }
    double f() const { return 0.5 * twice_f_; }
    /// Number of magnetic sublevels, 2F+1.
    int dim() const { return twice_f_ + 1; }
    /// Magnetic number of the i-th sublevel in ascending order (i = 0 is m = -F).
    HalfInt m_at(int i) const { return HalfInt::from_twice(-twice_f_ + 2 * i); }

  private:
    int twice_f_;
};

/// Field ellipticity parameter, eps in [-pi/4, pi/4].  eps = 0 is linear
/// polarization, eps = +-pi/4 pure circular.  Spherical amplitudes follow
/// e = e_{+1} cos(eps - pi/4) + e_{-1} sin(eps - pi/4) in the spherical basis
/// e_{+-1} = -+(e_x +- i e_y)/sqrt(2).
class Polarization {
  public:
    explicit Polarization(double epsilon);

    double epsilon() const { return epsilon_; }
    double e_plus() const;   ///< amplitude of e_{+1}
    double e_minus() const;  ///< amplitude of e_{-1}
    double cos2eps() const;
    double sin2eps() const;

  private:
    double epsilon_;
};

enum class Level { ground, excited };

/// The (Fg, Fe) level pair defining the working Zeeman basis.  Basis ordering
/// is a frozen contract: ground sublevels first, then excited, each block in
/// ascending m.
struct Basis {
    AngularMomentum fg;
    AngularMomentum fe;

    int ng() const { return fg.dim(); }
    int ne() const { return fe.dim(); }
    int dim() const { return ng() + ne(); }
    int offset(Level l) const { return l == Level::ground ? 0 : ng(); }
    const AngularMomentum& momentum(Level l) const {
        return l == Level::ground ? fg : fe;
    }
};

/// Complex matrix over the concatenated Zeeman basis of a level pair.
class Operator {
  public:
    static Operator zero(const Basis& basis) { return Operator(basis); }

    const Basis& basis() const { return basis_; }
    Eigen::MatrixXcd& matrix() { return m_; }
    const Eigen::MatrixXcd& matrix() const { return m_; }

    /// View of the (row block, column block) sub-matrix.
    Eigen::Block<Eigen::MatrixXcd> block(Level row, Level col) {
        return m_.block(basis_.offset(row), basis_.offset(col),
                        basis_.momentum(row).dim(), basis_.momentum(col).dim());
    }
    Eigen::Block<const Eigen::MatrixXcd> block(Level row, Level col) const {
        return m_.block(basis_.offset(row), basis_.offset(col),
                        basis_.momentum(row).dim(), basis_.momentum(col).dim());
    }

  private:
    explicit Operator(const Basis& basis)
        : basis_(basis), m_(Eigen::MatrixXcd::Zero(basis.dim(), basis.dim())) {}

    Basis basis_;
    Eigen::MatrixXcd m_;
};

/// Clebsch-Gordan coefficient C^{Fa ma}_{Fb mb; 1 q} = <Fb mb; 1 q | Fa ma>,
/// Condon-Shortley phases.  Zero unless ma = mb + q and |Fa - Fb| <= 1.
/// Evaluated by the Racah sum with exact integer arithmetic, rounded once.
double clebsch_gordan(const AngularMomentum& f_a, HalfInt m_a,
                      const AngularMomentum& f_b, HalfInt m_b, int q);

/// Wigner vector operator T^{ab}_q: entries <a,ma|T|b,mb> = C^{Fa ma}_{Fb mb;1 q}
/// in the (a,b) block, zero elsewhere.  Requires |Fa - Fb| <= 1.
Operator wigner_t(const Basis& basis, Level a, Level b, int q);

/// Dipole coupling V = e_{+1} T^{eg}_{+1} + e_{-1} T^{eg}_{-1}; only the
/// excited<-ground block is nonzero.
Operator coupling_operator(const Basis& basis, const Polarization& pol);

/// Projection of the total angular momentum of one level on the unit vector b:
/// F_b = sqrt(F(F+1)) T^{aa} . b.  For b = z this is diag(m).  Throws
/// std::domain_error if b is not unit length.
Operator magnetic_projection(const Basis& basis, Level level,
                             const Eigen::Vector3d& b_direction);

}  // namespace hanle::angular
