#pragma once

#include "holo/matkit.hpp"
#include "holo/pulse.hpp"

namespace holo {

/// hbar in meV * ps.
inline constexpr double kHbarMeVps = 0.6582119569;

/// H(t) = hbar Omega(t) h0 + h1, with h0 dimensionless and h1 in meV.
struct DrivenHamiltonian {
    Mat4 h0;
    Mat4 h1;
    Pulse pulse;
    double hbar = kHbarMeVps;
};

struct Evolution {
    Mat4 u;
    long steps = 0;
    double residual = 0.0;  // ||U_steps - U_{steps/2}||_F
};

/// Time-ordered propagator over [0, tau] as a product of midpoint
/// exponentials exp(-i dt [Omega(t_mid) h0 + h1 / hbar]). The step count is
/// doubled from 1 until two successive products differ by less than tol.
/// Throws NoConvergence after max_doublings (2^22 steps by default),
/// NotHermitian for bad h0/h1.
Evolution evolve(const DrivenHamiltonian &dh, double tol = 1e-10, int max_doublings = 22);

/// Product with a fixed number of midpoint steps.
Mat4 evolve_fixed(const DrivenHamiltonian &dh, long steps);

/// Composite Simpson integral of Omega over [0, tau]; steps >= 16 (rounded up to even).
double pulse_area(const Pulse &pulse, int steps);

/// tau must exceed 10 hbar / level_spacing for the few-level model to hold.
bool adiabatic_validity_ok(double tau_ps, double level_spacing_mev, double hbar = kHbarMeVps);

}  // namespace holo
