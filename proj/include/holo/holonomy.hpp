#pragma once

// Holonomic gates from the four-level block Hamiltonian
//
//     H(t) = hbar Omega(t) [[0, T], [T^dag, 0]]     basis order (a, b, c, d).
//
// With T = U0 D U1^dag the evolution after pulse area a is known in closed
// form. Whenever sin(a D) = 0 both two-dimensional subspaces {a, b} and
// {c, d} return to themselves and pick up the purely geometric unitaries
// U_l cos(a D) U_l^dag, which act as a conditional gate on the target qubit.

#include <array>
#include <string_view>

#include "holo/matkit.hpp"

namespace holo {

/// Invertible 2x2 coupling block T together with its gauge-fixed SVD.
class ControlBlock {
  public:
    /// Throws SingularT when det T vanishes (relative threshold 1e-10).
    explicit ControlBlock(const Mat2 &t);

    const Mat2 &t() const { return t_; }
    const Svd2 &svd() const { return svd_; }

  private:
    Mat2 t_;
    Svd2 svd_;
};

enum class HolonomyClass {
    trivial_plus,      // cos(aD) = +I
    trivial_minus,     // cos(aD) = -I
    nontrivial_n1,     // cos(aD) = +Z
    nontrivial_minus,  // cos(aD) = -Z
};

std::string_view to_string(HolonomyClass c);
HolonomyClass parse_holonomy_class(std::string_view name);

struct HolonomyResult {
    Mat2 u_c0;
    Mat2 u_c1;
    long p = 0;  // a_tau * alpha = p * pi
    long q = 0;  // a_tau * beta  = q * pi
    HolonomyClass classification = HolonomyClass::trivial_plus;

    bool nontrivial() const {
        return classification == HolonomyClass::nontrivial_n1 || classification == HolonomyClass::nontrivial_minus;
    }
};

enum class Encoding {
    ab_cd,                   // a->00, b->01, c->10, d->11; first qubit controls
    control_target_swapped,  // b and c exchanged; second qubit controls
};

std::string_view to_string(Encoding e);
Encoding parse_encoding(std::string_view name);

struct Gate4 {
    Mat4 u;
    Encoding encoding = Encoding::ab_cd;
};

/// Validates unitarity to 1e-10. Throws NotUnitary.
Gate4 make_gate4(const Mat4 &u, Encoding encoding);

/// [[0, T], [T^dag, 0]]
Mat4 block_hamiltonian(const Mat2 &t);
Mat4 block_hamiltonian(const ControlBlock &cb);

/// U(a) = [[U0 cos(aD) U0^dag, -i U0 sin(aD) U1^dag], [-i U1 sin(aD) U0^dag, U1 cos(aD) U1^dag]]
Mat4 closed_form_evolution(const ControlBlock &cb, double a);

struct CycleArea {
    double a_tau = 0.0;
    long p = 0;
    long q = 0;
    double residual = 0.0;  // |alpha/beta - p/q|
};

/// Smallest pulse area with sin(a alpha) = sin(a beta) = 0, from the
/// continued-fraction expansion of alpha/beta. Throws IncommensurateRatio
/// when no convergent with denominator <= max_denominator is within 1e-9.
CycleArea find_cycle_area(const ControlBlock &cb, int max_denominator = 64);

/// Throws NotCyclic unless |sin(a_tau alpha)|, |sin(a_tau beta)| < 1e-8.
HolonomyResult holonomy_pair(const ControlBlock &cb, double a_tau);

Gate4 conditional_gate(const HolonomyResult &hr, Encoding encoding);

/// Permutation exchanging basis states b and c (indices 1 and 2).
Mat4 swap_bc();

struct Synthesis {
    ControlBlock cb;
    double a_tau;
};

/// (sin t cos p, sin t sin p, cos t)
std::array<double, 3> axis_from_angles(double theta, double phi);
/// Inverse of axis_from_angles for a unit vector; returns {theta, phi}.
std::array<double, 2> angles_from_axis(const std::array<double, 3> &n);

/// One-qubit holonomic gate n.R with n given by polar angles (radians).
Synthesis synth_one_qubit(double theta, double phi);

struct Su2Plan {
    std::array<double, 3> n;  // applied first
    std::array<double, 3> m;  // applied second
};

/// Two axes with (m.R)(n.R) = target. Throws NotSU2.
Su2Plan plan_su2(const Mat2 &target);

/// Conditional gate |0><0| (x) u0 Z u0^dag + |1><1| (x) u1 Z u1^dag.
Synthesis synth_entangling(const Mat2 &u0, const Mat2 &u1);

/// Operator-Schmidt coefficients of a two-qubit operator across the
/// control/target cut, descending.
std::array<double, 4> operator_schmidt_coefficients(const Mat4 &u);
/// Number of squared Schmidt coefficients above tol * largest squared one.
/// Rank 1 <=> product operator.
int schmidt_rank(const Mat4 &u, double tol = 1e-10);

}  // namespace holo
