#pragma once

// Physical realizations of the block Hamiltonian: a single electron on a
// four-dot tight-binding ring threaded by flux, a four-spin XY ring with
// z-axis Dzyaloshinskii-Moriya coupling, and the chiral ground manifold of a
// triangular single-molecule magnet. Energies are meV, times ps.

#include <array>
#include <span>
#include <variant>
#include <vector>

#include "holo/holonomy.hpp"
#include "holo/propagator.hpp"
#include "holo/pulse.hpp"

namespace holo {

// ---------------------------------------------------------------------------
// Tight-binding ring

struct TightBindingSpec {
    std::array<double, 4> hop_mag{};  // |t_{k,k+1}|, bonds 12, 23, 34, 41
    std::array<double, 4> peierls{};  // phase on each bond, radians
    double flux = 0.0;                // sum of the Peierls phases
    double zeeman_shift = 0.0;        // uniform shift, removed from h4

    friend bool operator==(const TightBindingSpec &, const TightBindingSpec &) = default;
};

/// Sites 1, 3, 2, 4 (zero-based 0, 2, 1, 3): the order that makes the
/// one-electron Hamiltonian block off-diagonal.
inline constexpr std::array<std::size_t, 4> kTightBindingOrder{0, 2, 1, 3};

/// One-electron hopping matrix in site order 1..4; <k|H|k+1> = hop_k e^{-i peierls_k}.
Mat4 tb_site_hamiltonian(const TightBindingSpec &spec);

/// Site Hamiltonian re-expressed in the given site order.
Mat4 tb_reorder(const Mat4 &site_h, const std::array<std::size_t, 4> &order);

/// T = [[J12, J41*], [J23*, J34]] with J_k = hop_k e^{-i peierls_k}.
Mat2 tb_coupling(const TightBindingSpec &spec);

struct TightBindingBuild {
    Mat4 h4;
    ControlBlock cb;
};

/// Throws FluxMismatch when the phases do not sum to the flux (1e-12) and
/// SingularT when the resulting T is not invertible.
TightBindingBuild tb_build(const TightBindingSpec &spec);

/// peierls_k += lambda_{k+1} - lambda_k around the ring; flux is unchanged.
TightBindingSpec tb_gauge_transform(const TightBindingSpec &spec, const std::array<double, 4> &lambda);

/// Frames under which the holonomies transform after tb_gauge_transform:
/// U(C_l) -> G_l U(C_l) G_l^dag, G_0 = diag(e^{i lambda_1}, e^{i lambda_3}),
/// G_1 = diag(e^{i lambda_2}, e^{i lambda_4}).
std::array<Mat2, 2> tb_gauge_frames(const std::array<double, 4> &lambda);

// ---------------------------------------------------------------------------
// Spin ring

struct SpinRingSpec {
    std::array<double, 4> j{};   // XY exchange per bond
    std::array<double, 4> dz{};  // DM z-component per bond

    friend bool operator==(const SpinRingSpec &, const SpinRingSpec &) = default;
};

/// Product-basis index of a four-spin state: site 1 is the most significant
/// bit, bit value 1 means spin down.
/// Basis of the S^z_total = 1 sector: down spin at site 1, 3, 2, 4.
inline constexpr std::array<std::size_t, 4> kSpinSectorBasis{8, 2, 4, 1};

/// sum_k J_k (sx sx + sy sy) + Dz_k (sx_k sy_{k+1} - sy_k sx_{k+1}) on 16 states.
Mat16 spin_build(const SpinRingSpec &spec);

Mat16 spin_total_sz();

struct SpinProjection {
    Mat4 block;             // Hamiltonian restricted to kSpinSectorBasis
    Mat2 t;                 // its upper-right 2x2 block
    double leakage = 0.0;   // largest element coupling the sector to the rest
};

/// Throws LeakageDetected when the sector is not invariant (>= 1e-13).
SpinProjection spin_project(const Mat16 &h16);

/// (1/2) [[J12 - i D12, J41 + i D41], [J23 + i D23, J34 - i D34]]
Mat2 spin_coupling(const SpinRingSpec &spec);

// ---------------------------------------------------------------------------
// Triangular single-molecule magnet

struct SmmSpec {
    double b_x = 0.0;       // g_par B_x / (hbar Omega)
    double b_y = 0.0;
    double e_x = 0.0;       // d E_x / (hbar Omega)
    double e_y = 0.0;
    double delta_so = 0.0;  // chiral splitting, meV
    double hbar = kHbarMeVps;

    friend bool operator==(const SmmSpec &, const SmmSpec &) = default;
};

/// Basis {|+1,+1/2>, |-1,-1/2>, |+1,-1/2>, |-1,+1/2>} picked out of the
/// chirality (x) spin product basis (chirality +1 first, spin up first).
inline constexpr std::array<std::size_t, 4> kSmmOrder{0, 3, 1, 2};

/// T11 = T22* = (Bx - i By)/2, T12 = T21* = Ex - i Ey.
Mat2 smm_coupling(const SmmSpec &spec);

struct SmmBuild {
    ControlBlock cb;
    Mat4 perturbation;  // (delta_so / 2) diag(1, 1, -1, -1), meV
};

/// Throws SingularT.
SmmBuild smm_build(const SmmSpec &spec);

struct SmmOperatorForm {
    Mat4 drive;      // d E.C_par + B.g S in units of hbar Omega
    Mat4 splitting;  // delta_so C_z S_z, meV
};

/// Direct operator assembly with Pauli chirality and spin-1/2 operators,
/// re-ordered into kSmmOrder.
SmmOperatorForm smm_operator_form(const SmmSpec &spec);

// ---------------------------------------------------------------------------

using DeviceSpec = std::variant<TightBindingSpec, SpinRingSpec, SmmSpec>;

/// Maps any device to its coupling block. Throws as the individual builders do.
ControlBlock device_control_block(const DeviceSpec &device);

/// F = 1/2 + Re Tr(w^dag v) / 8. Throws NotUnitary (1e-8).
double gate_fidelity(const Mat4 &w, const Mat4 &v);

/// The SMM gate with delta_so = 0: closed-form evolution at the pulse area.
Gate4 smm_ideal_gate(const SmmSpec &spec, double area);

/// Realized gate for the SMM with its spin-orbit splitting. The square pulse
/// is a single exponential; other shapes go through evolve().
Mat4 smm_gate(const SmmSpec &spec, const Pulse &pulse, double tol = 1e-10);

struct FidelityCell {
    double delta_so_mev = 0.0;
    double tau_ps = 0.0;
    double fidelity = 0.0;
};

struct FidelityGrid {
    SmmSpec spec;
    PulseShape shape = PulseShape::square;
    double area = 0.0;
    Gate4 target;
    std::vector<double> delta_so_mev;  // ascending
    std::vector<double> tau_ps;        // ascending
    std::vector<FidelityCell> cells;   // delta-major, then tau

    const FidelityCell &at(std::size_t i_delta, std::size_t i_tau) const {
        return cells[i_delta * tau_ps.size() + i_tau];
    }
};

/// Fidelity of the realized gate against `target` over the grid. Cells are
/// independent and may be evaluated on several threads; the output order is
/// fixed (sorted grids, delta-major).
FidelityGrid smm_fidelity_sweep(const SmmSpec &spec, PulseShape shape, double area,
                                std::span<const double> delta_so_grid, std::span<const double> tau_grid,
                                const Gate4 &target, double tol = 1e-10);

/// n evenly spaced points from start to stop inclusive (n == 1 gives start).
std::vector<double> linspace(double start, double stop, std::size_t n);

}  // namespace holo
