#include "holo/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "holo/qregister.hpp"
#include "holo/sampling.hpp"

namespace holo {

namespace {

using std::numbers::pi;
using sampling::Rng;

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome bound(double worst, double tol) {
    return Outcome{worst < tol, fmt::format("worst {:.3e} (tol {:.0e})", worst, tol)};
}

double off_block_norm(const Mat4 &m) { return block(m, 0, 1).frobenius_norm() + block(m, 1, 0).frobenius_norm(); }
double diag_block_norm(const Mat4 &m) { return block(m, 0, 0).frobenius_norm() + block(m, 1, 1).frobenius_norm(); }

/// Random cyclic pair: T = U0 diag(s p, s q) U1^dag with integer p > q and a_tau = pi / s.
std::pair<ControlBlock, double> random_cyclic(Rng &rng) {
    std::uniform_int_distribution<int> d(1, 5);
    int p = d(rng), q = d(rng);
    if (p < q) std::swap(p, q);
    const double s = sampling::uniform(rng, 0.3, 2.0);
    const Mat2 t = sampling::unitary<2>(rng) * Mat2::diagonal({s * p, s * q}) * sampling::unitary<2>(rng).adjoint();
    return {ControlBlock(t), pi / s};
}

TightBindingSpec random_tb(Rng &rng) {
    TightBindingSpec s;
    s.flux = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        s.hop_mag[k] = sampling::uniform(rng, 0.2, 2.0);
        s.peierls[k] = sampling::uniform(rng, -pi, pi);
    }
    s.flux = s.peierls[0] + s.peierls[1] + s.peierls[2] + s.peierls[3];
    return s;
}

Mat16 embed_pair4(const Mat4 &g, std::size_t p, std::size_t q) {
    // dense 4-qubit operator for a gate on an adjacent-or-reversed pair in {0,1} or {2,3}
    const Mat4 one = Mat4::identity();
    const Mat4 oriented = p < q ? g : swap_bc() * g * swap_bc();
    return std::min(p, q) == 0 ? kron(oriented, one) : kron(one, oriented);
}

}  // namespace

std::vector<PropertyResult> run_verification(std::uint64_t seed, const VerifyKernels &kernels) {
    std::vector<PropertyResult> results;
    Rng rng(seed);

    auto check = [&](const std::string &name, auto &&fn) {
        try {
            const Outcome o = fn();
            results.push_back({name, o.passed, o.detail});
        } catch (const std::exception &e) {
            results.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };

    check("matkit.eig_reconstruction", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Mat4 h = sampling::hermitian<4>(rng);
            const auto es = eig_hermitian(h);
            Mat4 lam;
            for (std::size_t k = 0; k < 4; ++k) lam(k, k) = es.values[k];
            worst = std::max(worst, frobenius_distance(es.vectors * lam * es.vectors.adjoint(), h));
        }
        for (int i = 0; i < 10; ++i) {
            const Mat16 h = sampling::hermitian<16>(rng);
            const auto es = eig_hermitian(h);
            Mat16 lam;
            for (std::size_t k = 0; k < 16; ++k) lam(k, k) = es.values[k];
            worst = std::max(worst, frobenius_distance(es.vectors * lam * es.vectors.adjoint(), h));
        }
        return bound(worst, 1e-11);
    });

    check("matkit.svd2_reconstruction", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Mat2 t = sampling::invertible_block(rng);
            const Svd2 s = svd2(t);
            if (!s.u0.is_unitary(1e-12) || !s.u1.is_unitary(1e-12) || s.alpha < s.beta) {
                return Outcome{false, "SVD factors not unitary or not ordered"};
            }
            worst = std::max(worst, frobenius_distance(s.reconstruct(), t));
        }
        return bound(worst, 1e-12);
    });

    check("holonomy.closed_form_vs_exponential", [&] {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const ControlBlock cb(sampling::invertible_block(rng));
            const double a = sampling::uniform(rng, 0.0, 4.0 * pi);
            worst = std::max(worst, frobenius_distance(kernels.evolution(cb, a), expi(block_hamiltonian(cb), a)));
        }
        return bound(worst, 1e-9);
    });

    check("holonomy.cyclic_off_blocks_vanish", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto [cb, a_tau] = random_cyclic(rng);
            worst = std::max(worst, off_block_norm(kernels.evolution(cb, a_tau)));
        }
        return bound(worst, 1e-8);
    });

    check("holonomy.zero_dynamics", [&] {
        double worst = 0.0;
        const Mat4 p0 = Mat4::diagonal({1.0, 1.0, 0.0, 0.0});
        const Mat4 p1 = Mat4::diagonal({0.0, 0.0, 1.0, 1.0});
        for (int i = 0; i < 50; ++i) {
            const auto [cb, a_tau] = random_cyclic(rng);
            const Mat4 h = block_hamiltonian(cb);
            for (int k = 1; k <= 20; ++k) {
                const Mat4 u = kernels.evolution(cb, a_tau * k / 21.0);
                for (const Mat4 &p : {p0, p1}) {
                    const Mat4 pt = u * p * u.adjoint();
                    worst = std::max(worst, (pt * h * pt).frobenius_norm());
                }
            }
        }
        return bound(worst, 1e-10);
    });

    check("holonomy.gauge_independence", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto [cb, a_tau] = random_cyclic(rng);
            const HolonomyResult hr = holonomy_pair(cb, a_tau);
            const Mat2 phases = Mat2::diagonal(
                {std::polar(1.0, sampling::uniform(rng, -pi, pi)), std::polar(1.0, sampling::uniform(rng, -pi, pi))});
            const Svd2 &s = cb.svd();
            const Mat2 cos_d = Mat2::diagonal({hr.p % 2 == 0 ? 1.0 : -1.0, hr.q % 2 == 0 ? 1.0 : -1.0});
            const Mat2 v0 = s.u0 * phases, v1 = s.u1 * phases;
            worst = std::max({worst, frobenius_distance(v0 * cos_d * v0.adjoint(), hr.u_c0),
                              frobenius_distance(v1 * cos_d * v1.adjoint(), hr.u_c1)});
        }
        return bound(worst, 1e-12);
    });

    check("holonomy.equal_parity_is_trivial", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const int p = 2 * (i % 3) + 2 + (i % 2);  // same parity as q
            const int q = p - 2;
            const Mat2 t = sampling::unitary<2>(rng) * Mat2::diagonal({double(p), double(q == 0 ? p : q)}) *
                           sampling::unitary<2>(rng).adjoint();
            const HolonomyResult hr = holonomy_pair(ControlBlock(t), pi);
            const double sign = hr.classification == HolonomyClass::trivial_plus ? 1.0 : -1.0;
            if (hr.nontrivial()) return Outcome{false, "equal parity classified as nontrivial"};
            worst = std::max({worst, frobenius_distance(hr.u_c0, sign * Mat2::identity()),
                              frobenius_distance(hr.u_c1, sign * Mat2::identity())});
        }
        return bound(worst, 1e-12);
    });

    check("holonomy.one_qubit_synthesis", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double theta = sampling::uniform(rng, 0.0, pi);
            const double phi = sampling::uniform(rng, -pi, pi);
            const Synthesis syn = synth_one_qubit(theta, phi);
            const Gate4 g = conditional_gate(holonomy_pair(syn.cb, syn.a_tau), Encoding::ab_cd);
            const Mat4 want = kron(Mat2::identity(), pauli::dot(axis_from_angles(theta, phi)));
            worst = std::max(worst, frobenius_distance(g.u, want));
        }
        return bound(worst, 1e-10);
    });

    check("holonomy.su2_two_axis_plan", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Mat2 target = sampling::su2(rng);
            const Su2Plan plan = plan_su2(target);
            worst = std::max(worst, frobenius_distance(pauli::dot(plan.m) * pauli::dot(plan.n), target));
        }
        return bound(worst, 1e-10);
    });

    check("holonomy.sequential_composition", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto an = angles_from_axis(axis_from_angles(sampling::uniform(rng, 0, pi), sampling::uniform(rng, -pi, pi)));
            const auto am = angles_from_axis(axis_from_angles(sampling::uniform(rng, 0, pi), sampling::uniform(rng, -pi, pi)));
            const auto n = axis_from_angles(an[0], an[1]);
            const auto m = axis_from_angles(am[0], am[1]);
            const Synthesis sn = synth_one_qubit(an[0], an[1]);
            const Synthesis sm = synth_one_qubit(am[0], am[1]);
            const Mat4 prod = conditional_gate(holonomy_pair(sm.cb, sm.a_tau), Encoding::ab_cd).u *
                              conditional_gate(holonomy_pair(sn.cb, sn.a_tau), Encoding::ab_cd).u;
            const double dot = n[0] * m[0] + n[1] * m[1] + n[2] * m[2];
            const std::array<double, 3> x{n[1] * m[2] - n[2] * m[1], n[2] * m[0] - n[0] * m[2],
                                          n[0] * m[1] - n[1] * m[0]};
            const Mat2 identity_form = dot * Mat2::identity() + cplx{0, -1} * pauli::dot(x);
            worst = std::max(worst, frobenius_distance(prod, kron(Mat2::identity(), identity_form)));
        }
        return bound(worst, 1e-10);
    });

    check("holonomy.entanglement_certifier", [&] {
        const int entangling = schmidt_rank(from_blocks(pauli::Z(), Mat2{}, Mat2{}, pauli::X()));
        const int product = schmidt_rank(kron(pauli::Z(), pauli::Z()));
        return Outcome{entangling == 2 && product == 1,
                       fmt::format("block-diag(Z,X) rank {}, Z(x)Z rank {}", entangling, product)};
    });

    check("platforms.tb_block_structure", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const TightBindingSpec s = random_tb(rng);
            const Mat4 h4 = kernels.tight_binding(s);
            worst = std::max({worst, diag_block_norm(h4), frobenius_distance(block(h4, 0, 1), tb_coupling(s))});
        }
        return bound(worst, 1e-13);
    });

    check("platforms.tb_gauge_covariance", [&] {
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const TightBindingSpec s = random_tb(rng);
            std::array<double, 4> lambda{};
            for (double &l : lambda) l = sampling::uniform(rng, -pi, pi);
            const TightBindingSpec g = tb_gauge_transform(s, lambda);
            if (std::abs(g.flux - s.flux) > 0.0) return Outcome{false, "flux changed under gauge"};
            const ControlBlock a(tb_coupling(s)), b(tb_coupling(g));
            const double a_tau = 1.0;  // covariance holds at every area; no need for cyclicity
            const Mat4 ua = closed_form_evolution(a, a_tau), ub = closed_form_evolution(b, a_tau);
            const auto frames = tb_gauge_frames(lambda);
            for (std::size_t l = 0; l < 2; ++l) {
                worst = std::max(worst, frobenius_distance(block(ub, l, l),
                                                           frames[l] * block(ua, l, l) * frames[l].adjoint()));
            }
        }
        return bound(worst, 1e-10);
    });

    check("platforms.spin_sector_invariance", [&] {
        double worst = 0.0;
        const Mat16 sz = spin_total_sz();
        for (int i = 0; i < 20; ++i) {
            SpinRingSpec s;
            for (std::size_t k = 0; k < 4; ++k) {
                s.j[k] = sampling::uniform(rng, -2, 2);
                s.dz[k] = sampling::uniform(rng, -2, 2);
            }
            const Mat16 h = spin_build(s);
            worst = std::max(worst, (h * sz - sz * h).max_abs());
            for (std::size_t r = 0; r < 16; ++r)
                for (std::size_t c = 0; c < 16; ++c)
                    if (std::popcount(r) != std::popcount(c)) worst = std::max(worst, std::abs(h(r, c)));
        }
        return bound(worst, 1e-13);
    });

    check("platforms.spin_projection_convention", [&] {
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            SpinRingSpec s;
            for (std::size_t k = 0; k < 4; ++k) {
                s.j[k] = sampling::uniform(rng, -2, 2);
                s.dz[k] = sampling::uniform(rng, -2, 2);
            }
            const SpinProjection p = spin_project(spin_build(s));
            worst = std::max({worst, diag_block_norm(p.block), frobenius_distance(p.t, spin_coupling(s)), p.leakage});
        }
        return bound(worst, 1e-13);
    });

    check("platforms.smm_assembly_equivalence", [&] {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            SmmSpec s;
            s.b_x = sampling::uniform(rng, -4, 4);
            s.b_y = sampling::uniform(rng, -4, 4);
            s.e_x = sampling::uniform(rng, -2, 2);
            s.e_y = sampling::uniform(rng, -2, 2);
            s.delta_so = sampling::uniform(rng, 0, 0.1);
            const SmmOperatorForm op = smm_operator_form(s);
            const Mat2 t = smm_coupling(s);
            const double pert = 0.5 * s.delta_so;
            worst = std::max({worst, frobenius_distance(op.drive, block_hamiltonian(t)),
                              frobenius_distance(op.splitting, Mat4::diagonal({pert, pert, -pert, -pert})),
                              std::abs(t(0, 0) - std::conj(t(1, 1))), std::abs(t(0, 1) - std::conj(t(1, 0)))});
        }
        return bound(worst, 1e-13);
    });

    check("platforms.fidelity_bounds", [&] {
        for (int i = 0; i < 1000; ++i) {
            const double f = gate_fidelity(sampling::unitary<4>(rng), sampling::unitary<4>(rng));
            if (f < 0.0 || f > 1.0) return Outcome{false, fmt::format("F = {} out of [0, 1]", f)};
        }
        const Mat4 w = sampling::unitary<4>(rng);
        double worst = 0.0;
        for (double phi : {0.3, 1.2, 2.5, pi}) {
            worst = std::max(worst, std::abs(gate_fidelity(w, std::polar(1.0, phi) * w) - (0.5 + 0.5 * std::cos(phi))));
        }
        return bound(worst, 1e-12);
    });

    check("platforms.square_pulse_scaling", [&] {
        SmmSpec s{3.0, 0.0, 0.0, 0.5, 0.0, kHbarMeVps};
        const Gate4 w = smm_ideal_gate(s, pi);
        double worst = 0.0;
        for (double d : {0.01, 0.02, 0.05}) {
            for (double tau : {5.0, 20.0, 60.0}) {
                const double c = 2.5;
                SmmSpec a = s, b = s;
                a.delta_so = d;
                b.delta_so = c * d;
                const double fa = gate_fidelity(w.u, smm_gate(a, Pulse(PulseShape::square, tau, pi)));
                const double fb = gate_fidelity(w.u, smm_gate(b, Pulse(PulseShape::square, tau / c, pi)));
                worst = std::max(worst, std::abs(fa - fb));
            }
        }
        return bound(worst, 1e-10);
    });

    check("propagator.shape_independence", [&] {
        const ControlBlock cb(sampling::invertible_block(rng));
        const Mat4 h0 = block_hamiltonian(cb);
        const double area = sampling::uniform(rng, 0.5, 4.0);
        const Mat4 exact = expi(h0, area);
        double worst = 0.0;
        for (auto shape : {PulseShape::square, PulseShape::sin2, PulseShape::gauss_truncated}) {
            const Evolution e = evolve(DrivenHamiltonian{h0, Mat4{}, Pulse(shape, 10.0, area)}, 1e-10);
            worst = std::max(worst, frobenius_distance(e.u, exact));
        }
        return bound(worst, 1e-9);
    });

    check("register.norm_and_commutation", [&] {
        StateVector sv(5);
        std::uniform_int_distribution<std::size_t> pick(0, 4);
        for (int i = 0; i < 1000; ++i) {
            std::size_t p = pick(rng), q = pick(rng);
            while (q == p) q = pick(rng);
            sv = apply_gate(sv, p, q, Gate4{sampling::unitary<4>(rng), Encoding::ab_cd});
        }
        double worst = std::abs(sv.norm() - 1.0);
        const Gate4 g1{sampling::unitary<4>(rng), Encoding::ab_cd};
        const Gate4 g2{sampling::unitary<4>(rng), Encoding::ab_cd};
        const StateVector x = apply_gate(apply_gate(sv, 0, 2, g1), 3, 1, g2);
        const StateVector y = apply_gate(apply_gate(sv, 3, 1, g2), 0, 2, g1);
        for (std::size_t i = 0; i < x.amplitudes().size(); ++i) {
            worst = std::max(worst, std::abs(x.amplitude(i) - y.amplitude(i)));
        }
        return bound(worst, 1e-9);
    });

    check("register.dense_oracle", [&] {
        double worst = 0.0;
        std::vector<cplx> amps(16);
        for (auto &a : amps) a = sampling::complex_gaussian(rng);
        double n = 0.0;
        for (auto &a : amps) n += std::norm(a);
        for (auto &a : amps) a /= std::sqrt(n);
        const StateVector sv(4, amps);
        for (auto [p, q] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 0}, {2, 3}, {3, 2}}) {
            const Mat4 g = sampling::unitary<4>(rng);
            const StateVector out = apply_gate(sv, p, q, Gate4{g, Encoding::ab_cd});
            const Mat16 dense = embed_pair4(g, p, q);
            for (std::size_t r = 0; r < 16; ++r) {
                cplx acc = 0.0;
                for (std::size_t c = 0; c < 16; ++c) acc += dense(r, c) * amps[c];
                worst = std::max(worst, std::abs(acc - out.amplitude(r)));
            }
        }
        return bound(worst, 1e-12);
    });

    return results;
}

}  // namespace holo
