#include "holo/propagator.hpp"

#include <string>

namespace holo {

namespace {

// Product of the step factors k0..k1-1 (later steps to the left), returned
// as its deviation from the identity. Combining halves pairwise keeps the
// rounding error near eps * log(steps) instead of eps * steps.
Mat4 product_deviation(const DrivenHamiltonian &dh, const Mat4 &static_part, double dt, long k0, long k1) {
    if (k1 - k0 == 1) {
        const double t_mid = (static_cast<double>(k0) + 0.5) * dt;
        return expi_minus_identity(dh.h0 * cplx{dh.pulse.omega_at(t_mid)} + static_part, dt);
    }
    const long mid = k0 + (k1 - k0) / 2;
    const Mat4 early = product_deviation(dh, static_part, dt, k0, mid);
    const Mat4 late = product_deviation(dh, static_part, dt, mid, k1);
    // (I + late)(I + early) - I
    return late + early + late * early;
}

}  // namespace

Mat4 evolve_fixed(const DrivenHamiltonian &dh, long steps) {
    if (steps < 1) throw Error(ErrorKind::InvalidInput, "evolve_fixed needs at least one step");
    const double dt = dh.pulse.tau() / static_cast<double>(steps);
    const Mat4 static_part = dh.h1 * cplx{1.0 / dh.hbar};
    return Mat4::identity() + product_deviation(dh, static_part, dt, 0, steps);
}

Evolution evolve(const DrivenHamiltonian &dh, double tol, int max_doublings) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "evolve tolerance must be > 0");
    if (!dh.h0.is_hermitian() || !dh.h1.is_hermitian()) {
        throw Error(ErrorKind::NotHermitian, "driven Hamiltonian terms must be Hermitian");
    }
    long steps = 1;
    Mat4 previous = evolve_fixed(dh, steps);
    for (int doubling = 0; doubling < max_doublings; ++doubling) {
        steps *= 2;
        Mat4 current = evolve_fixed(dh, steps);
        const double diff = frobenius_distance(current, previous);
        if (diff < tol) return Evolution{current, steps, diff};
        previous = current;
    }
    throw Error(ErrorKind::NoConvergence, "time-ordered product did not converge within 2^" + std::to_string(max_doublings) + " steps");
}

double pulse_area(const Pulse &pulse, int steps) {
    if (steps < 16) throw Error(ErrorKind::InvalidInput, "pulse_area needs at least 16 steps");
    if (steps % 2 != 0) ++steps;
    const double h = pulse.tau() / steps;
    double sum = pulse.omega_at(0.0) + pulse.omega_at(pulse.tau());
    for (int k = 1; k < steps; ++k) sum += (k % 2 == 1 ? 4.0 : 2.0) * pulse.omega_at(k * h);
    return sum * h / 3.0;
}

bool adiabatic_validity_ok(double tau_ps, double level_spacing_mev, double hbar) {
    return tau_ps > 10.0 * hbar / level_spacing_mev;
}

}  // namespace holo
