#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "holo/platforms.hpp"
#include "holo/sampling.hpp"

using namespace holo;
using std::numbers::pi;

namespace {

const cplx I1{0, 1};

template <class F>
ErrorKind kind_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no holo::Error thrown";
    return ErrorKind::InvalidInput;
}

TightBindingSpec uniform_flux_ring(double each) { return {{1, 1, 1, 1}, {each, each, each, each}, 4 * each, 0.0}; }

// b = (3, 0), E = (0, 1/2): T = (3/2) I + Y/2
SmmSpec y_gate_magnet(double delta_so = 0.0) { return SmmSpec{3.0, 0.0, 0.0, 0.5, delta_so, kHbarMeVps}; }

// Square pulse of area pi on the Y-gate magnet: the splitting term only mixes
// within each Y-eigenvector pair, giving this closed form with x = delta tau / (2 hbar).
double analytic_square_fidelity(double delta, double tau) {
    const double x = delta * tau / (2 * kHbarMeVps);
    return 0.5 + 0.25 * (std::cos(std::sqrt(4 * pi * pi + x * x)) - std::cos(std::sqrt(pi * pi + x * x)));
}

}  // namespace

// --- tight binding ---------------------------------------------------------

TEST(TightBinding, ZeroFluxUniformIsSingular) {
    const TightBindingSpec s = uniform_flux_ring(0.0);
    EXPECT_LT(frobenius_distance(tb_coupling(s), Mat2{1, 1, 1, 1}), 1e-15);
    EXPECT_EQ(kind_of([&] { tb_build(s); }), ErrorKind::SingularT);
}

TEST(TightBinding, QuarterFluxCoupling) {
    const TightBindingSpec s = uniform_flux_ring(pi / 8);
    const cplx e = std::polar(1.0, -pi / 8);
    const Mat2 want{e, std::conj(e), std::conj(e), e};
    EXPECT_LT(frobenius_distance(tb_coupling(s), want), 1e-15);
    EXPECT_LT(std::abs(det(tb_coupling(s)) - cplx{0, -2 * std::sin(pi / 4)}), 1e-15);
    const TightBindingBuild b = tb_build(s);
    EXPECT_LT(frobenius_distance(b.cb.t(), want), 1e-15);
}

TEST(TightBinding, PlacementOfConjugatedBonds) {
    const TightBindingSpec s{{2, 1, 1, 2}, {0, 0, 0, pi / 2}, pi / 2, 0.0};
    const Mat2 t = tb_coupling(s);
    EXPECT_LT(std::abs(t(0, 0) - 2.0), 1e-15);
    EXPECT_LT(std::abs(t(0, 1) - 2.0 * I1), 1e-15);
    EXPECT_LT(std::abs(t(1, 0) - 1.0), 1e-15);
    EXPECT_LT(std::abs(t(1, 1) - 1.0), 1e-15);
}

TEST(TightBinding, BlockOffDiagonalInReorderedBasis) {
    const TightBindingSpec s{{0.5, 1.3, 0.9, 1.7}, {0.2, -0.4, 1.1, 0.3}, 1.2, 0.0};
    const TightBindingBuild b = tb_build(s);
    EXPECT_EQ(block(b.h4, 0, 0), Mat2{});
    EXPECT_EQ(block(b.h4, 1, 1), Mat2{});
    EXPECT_EQ(block(b.h4, 0, 1), tb_coupling(s));
    EXPECT_TRUE(b.h4.is_hermitian());
    // natural order 1,2,3,4 is not block off-diagonal
    const Mat4 natural = tb_reorder(tb_site_hamiltonian(s), {0, 1, 2, 3});
    EXPECT_GT(block(natural, 0, 0).frobenius_norm(), 0.1);
}

TEST(TightBinding, FluxMismatch) {
    TightBindingSpec s = uniform_flux_ring(pi / 8);
    s.flux += 1e-6;
    EXPECT_EQ(kind_of([&] { tb_build(s); }), ErrorKind::FluxMismatch);
}

TEST(TightBinding, GaugeTrivialCases) {
    const TightBindingSpec s = uniform_flux_ring(pi / 8);
    EXPECT_EQ(tb_gauge_transform(s, {0, 0, 0, 0}), s);
    const TightBindingSpec c = tb_gauge_transform(s, {0.7, 0.7, 0.7, 0.7});
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(c.peierls[k], s.peierls[k], 1e-15);
    EXPECT_EQ(c.flux, s.flux);
}

TEST(TightBinding, GaugeCovarianceOfHolonomies) {
    sampling::Rng rng(71);
    const TightBindingSpec s = uniform_flux_ring(pi / 8);
    for (int i = 0; i < 50; ++i) {
        std::array<double, 4> lambda{};
        for (double &l : lambda) l = sampling::uniform(rng, -pi, pi);
        const TightBindingSpec g = tb_gauge_transform(s, lambda);
        const Mat4 ua = closed_form_evolution(tb_build(s).cb, 1.3);
        const Mat4 ub = closed_form_evolution(tb_build(g).cb, 1.3);
        const auto frames = tb_gauge_frames(lambda);
        for (std::size_t l = 0; l < 2; ++l) {
            EXPECT_LT(frobenius_distance(block(ub, l, l), frames[l] * block(ua, l, l) * frames[l].adjoint()), 1e-10);
        }
    }
}

TEST(TightBinding, OppositeFrameSignFails) {
    // with the stated Peierls update the frames carry e^{+i lambda}; e^{-i lambda} must not work
    const TightBindingSpec s = uniform_flux_ring(pi / 8);
    const std::array<double, 4> lambda{0.3, -1.1, 0.8, 2.0};
    const TightBindingSpec g = tb_gauge_transform(s, lambda);
    const Mat4 ua = closed_form_evolution(tb_build(s).cb, 1.3);
    const Mat4 ub = closed_form_evolution(tb_build(g).cb, 1.3);
    const auto frames = tb_gauge_frames(lambda);
    const Mat2 wrong = frames[0].adjoint();
    EXPECT_GT(frobenius_distance(block(ub, 0, 0), wrong * block(ua, 0, 0) * wrong.adjoint()), 1e-3);
}

TEST(TightBinding, ZeemanShiftDoesNotEnterBlock) {
    TightBindingSpec s = uniform_flux_ring(pi / 8);
    s.zeeman_shift = 0.37;
    EXPECT_EQ(tb_build(s).h4, tb_build(uniform_flux_ring(pi / 8)).h4);
}

// --- spin ring -------------------------------------------------------------

TEST(SpinRing, ZeroSpecIsZero) {
    EXPECT_EQ(spin_build(SpinRingSpec{}), Mat16{});
    const SpinProjection p = spin_project(Mat16{});
    EXPECT_EQ(p.block, Mat4{});
    EXPECT_EQ(p.leakage, 0.0);
}

TEST(SpinRing, SingleBondFlipFlop) {
    const Mat16 h = spin_build(SpinRingSpec{{1, 0, 0, 0}, {0, 0, 0, 0}});
    // |dn up up up> = 8, |up dn up up> = 4
    EXPECT_NEAR(std::abs(h(8, 4) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h(4, 8) - 0.5), 0.0, 1e-15);
    // only the bond (1,2) pairs are coupled, each with amplitude 1/2
    int nonzero = 0;
    for (std::size_t r = 0; r < 16; ++r)
        for (std::size_t c = 0; c < 16; ++c)
            if (std::abs(h(r, c)) > 0) {
                ++nonzero;
                EXPECT_NEAR(std::abs(h(r, c)), 0.5, 1e-15);
                EXPECT_EQ((r ^ c), 0b1100u);
            }
    EXPECT_EQ(nonzero, 8);
}

TEST(SpinRing, DmFlipFlopPhase) {
    const Mat16 h = spin_build(SpinRingSpec{{0, 0, 0, 0}, {1, 0, 0, 0}});
    EXPECT_LT(std::abs(h(8, 4) - cplx{0, -0.5}), 1e-15);
    EXPECT_LT(std::abs(h(4, 8) - cplx{0, 0.5}), 1e-15);
    EXPECT_TRUE(h.is_hermitian());
}

TEST(SpinRing, ConservesTotalSz) {
    sampling::Rng rng(81);
    const Mat16 sz = spin_total_sz();
    for (int i = 0; i < 10; ++i) {
        SpinRingSpec s;
        for (std::size_t k = 0; k < 4; ++k) {
            s.j[k] = sampling::uniform(rng, -2, 2);
            s.dz[k] = sampling::uniform(rng, -2, 2);
        }
        const Mat16 h = spin_build(s);
        EXPECT_LT((h * sz - sz * h).max_abs(), 1e-13);
    }
}

TEST(SpinRing, UniformExchangeIsSingular) {
    const SpinProjection p = spin_project(spin_build(SpinRingSpec{{1, 1, 1, 1}, {0, 0, 0, 0}}));
    EXPECT_LT(frobenius_distance(p.t, 0.5 * Mat2{1, 1, 1, 1}), 1e-15);
    EXPECT_THROW(ControlBlock{p.t}, Error);
}

TEST(SpinRing, AlternatingDmIsSingular) {
    const SpinRingSpec s{{1, 1, 1, 1}, {1, -1, 1, -1}};
    const SpinProjection p = spin_project(spin_build(s));
    // every bond enters as (1 - i)/2 under the (J -+ i D)/2 placement
    const Mat2 want = 0.5 * Mat2{cplx{1, -1}, cplx{1, -1}, cplx{1, -1}, cplx{1, -1}};
    EXPECT_LT(frobenius_distance(p.t, want), 1e-15);
    EXPECT_LT(std::abs(det(p.t)), 1e-15);
}

TEST(SpinRing, SingleDmBondIsInvertible) {
    const SpinRingSpec s{{1, 1, 1, 1}, {1, 0, 0, 0}};
    const SpinProjection p = spin_project(spin_build(s));
    const Mat2 want = 0.5 * Mat2{cplx{1, -1}, 1.0, 1.0, 1.0};
    EXPECT_LT(frobenius_distance(p.t, want), 1e-15);
    EXPECT_LT(std::abs(det(p.t) - cplx{0, -0.25}), 1e-15);
    EXPECT_EQ(block(p.block, 0, 0), Mat2{});
    EXPECT_EQ(block(p.block, 1, 1), Mat2{});
    EXPECT_NO_THROW(ControlBlock{p.t});
}

TEST(SpinRing, ProjectionMatchesConvention) {
    const SpinRingSpec s{{0.3, -1.2, 0.8, 1.9}, {0.5, 0.1, -0.7, 1.3}};
    const SpinProjection p = spin_project(spin_build(s));
    const Mat2 t = spin_coupling(s);
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) EXPECT_LT(std::abs(p.t(r, c) - t(r, c)), 1e-13);
    EXPECT_LT(std::abs(t(0, 0) - 0.5 * cplx{0.3, -0.5}), 1e-15);
    EXPECT_LT(std::abs(t(0, 1) - 0.5 * cplx{1.9, 1.3}), 1e-15);
    EXPECT_LT(std::abs(t(1, 0) - 0.5 * cplx{-1.2, 0.1}), 1e-15);
    EXPECT_LT(std::abs(t(1, 1) - 0.5 * cplx{0.8, 0.7}), 1e-15);
}

TEST(SpinRing, LeakageDetected) {
    Mat16 h;
    h(8, 0) = h(0, 8) = 1.0;  // couples the sector to |up up up up>
    EXPECT_EQ(kind_of([&] { spin_project(h); }), ErrorKind::LeakageDetected);
}

// --- single-molecule magnet -------------------------------------------------

TEST(Smm, YGateCoupling) {
    const Mat2 t = smm_coupling(y_gate_magnet());
    EXPECT_LT(frobenius_distance(t, Mat2{1.5, cplx{0, -0.5}, cplx{0, 0.5}, 1.5}), 1e-15);
    const HolonomyResult hr = holonomy_pair(smm_build(y_gate_magnet()).cb, pi);
    EXPECT_LT(frobenius_distance(hr.u_c0, pauli::Y()), 1e-14);
}

TEST(Smm, MagneticOnlyIsDiagonal) {
    const SmmSpec s{1.0, 2.0, 0.0, 0.0, 0.0, kHbarMeVps};
    const Mat2 t = smm_coupling(s);
    EXPECT_EQ(t(0, 1), cplx(0.0));
    EXPECT_NEAR(std::abs(t(0, 0)), std::sqrt(5.0) / 2, 1e-15);
    const Svd2 d = smm_build(s).cb.svd();
    EXPECT_NEAR(d.alpha, d.beta, 1e-14);
    EXPECT_FALSE(holonomy_pair(smm_build(s).cb, find_cycle_area(smm_build(s).cb).a_tau).nontrivial());
}

TEST(Smm, ElectricOnlyIsAntidiagonal) {
    const SmmSpec s{0.0, 0.0, 0.4, -0.3, 0.0, kHbarMeVps};
    const Mat2 t = smm_coupling(s);
    EXPECT_EQ(t(0, 0), cplx(0.0));
    EXPECT_EQ(t(1, 1), cplx(0.0));
    const Svd2 d = smm_build(s).cb.svd();
    EXPECT_NEAR(d.alpha, d.beta, 1e-14);
}

TEST(Smm, OperatorFormMatchesBlockForm) {
    sampling::Rng rng(91);
    for (int i = 0; i < 100; ++i) {
        const SmmSpec s{sampling::uniform(rng, -4, 4), sampling::uniform(rng, -4, 4), sampling::uniform(rng, -2, 2),
                        sampling::uniform(rng, -2, 2), sampling::uniform(rng, 0, 0.1), kHbarMeVps};
        const SmmOperatorForm op = smm_operator_form(s);
        const Mat2 t = smm_coupling(s);
        EXPECT_LT(frobenius_distance(op.drive, block_hamiltonian(t)), 1e-13);
        const double h = s.delta_so / 2;
        EXPECT_LT(frobenius_distance(op.splitting, Mat4::diagonal({h, h, -h, -h})), 1e-13);
        EXPECT_LT(std::abs(t(0, 0) - std::conj(t(1, 1))), 1e-13);
        EXPECT_LT(std::abs(t(0, 1) - std::conj(t(1, 0))), 1e-13);
    }
}

// --- fidelity -----------------------------------------------------------------

TEST(Fidelity, Functional) {
    sampling::Rng rng(101);
    const Mat4 w = sampling::unitary<4>(rng);
    EXPECT_NEAR(gate_fidelity(w, w), 1.0, 1e-14);
    EXPECT_NEAR(gate_fidelity(w, -1.0 * w), 0.0, 1e-14);
    EXPECT_NEAR(gate_fidelity(Mat4::identity(), Mat4::diagonal({1, 1, 1, -1})), 0.75, 1e-15);
    EXPECT_EQ(kind_of([] { gate_fidelity(Mat4::identity(), 2.0 * Mat4::identity()); }), ErrorKind::NotUnitary);
}

TEST(Fidelity, ZeroSplittingIsPerfect) {
    const Gate4 w = smm_ideal_gate(y_gate_magnet(), pi);
    EXPECT_LT(frobenius_distance(w.u, from_blocks(pauli::Y(), Mat2{}, Mat2{}, pauli::Y())), 1e-14);
    for (double tau : {1.0, 10.0, 100.0}) {
        EXPECT_NEAR(gate_fidelity(w.u, smm_gate(y_gate_magnet(), Pulse(PulseShape::square, tau, pi))), 1.0, 1e-12);
    }
}

TEST(Fidelity, SquarePulseMatchesAnalyticForm) {
    const Gate4 w = smm_ideal_gate(y_gate_magnet(), pi);
    for (double d : {0.0, 0.01, 0.02, 0.05, 0.1}) {
        for (double tau : {1.0, 10.0, 37.0, 100.0}) {
            const double f = gate_fidelity(w.u, smm_gate(y_gate_magnet(d), Pulse(PulseShape::square, tau, pi)));
            EXPECT_NEAR(f, analytic_square_fidelity(d, tau), 1e-12) << d << " " << tau;
        }
    }
}

TEST(Fidelity, SmoothPulseDegradesGracefully) {
    const Gate4 w = smm_ideal_gate(y_gate_magnet(), pi);
    const double f = gate_fidelity(w.u, smm_gate(y_gate_magnet(0.02), Pulse(PulseShape::sin2, 10.0, pi), 1e-9));
    EXPECT_GT(f, 0.99);
    EXPECT_LE(f, 1.0);
}

TEST(Sweep, GridOrderAndContents) {
    const Gate4 w = smm_ideal_gate(y_gate_magnet(), pi);
    const std::vector<double> d{0.05, 0.0, 0.02};
    const std::vector<double> t{100.0, 10.0};
    const FidelityGrid g = smm_fidelity_sweep(y_gate_magnet(), PulseShape::square, pi, d, t, w);
    ASSERT_EQ(g.cells.size(), 6u);
    EXPECT_EQ(g.delta_so_mev, (std::vector<double>{0.0, 0.02, 0.05}));
    EXPECT_EQ(g.tau_ps, (std::vector<double>{10.0, 100.0}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            const FidelityCell &c = g.at(i, j);
            EXPECT_EQ(c.delta_so_mev, g.delta_so_mev[i]);
            EXPECT_EQ(c.tau_ps, g.tau_ps[j]);
            EXPECT_NEAR(c.fidelity, analytic_square_fidelity(c.delta_so_mev, c.tau_ps), 1e-12);
        }
    EXPECT_GE(g.at(1, 0).fidelity, 0.98);
}

TEST(Sweep, ProductScaling) {
    const Gate4 w = smm_ideal_gate(y_gate_magnet(), pi);
    for (double x : {0.01, 0.03, 0.05}) {
        for (double tau : {8.0, 30.0, 90.0}) {
            const double a = gate_fidelity(w.u, smm_gate(y_gate_magnet(x), Pulse(PulseShape::square, tau, pi)));
            const double b = gate_fidelity(w.u, smm_gate(y_gate_magnet(2 * x), Pulse(PulseShape::square, tau / 2, pi)));
            EXPECT_NEAR(a, b, 1e-10);
        }
    }
}

TEST(Linspace, Endpoints) {
    EXPECT_EQ(linspace(0.0, 0.1, 11).back(), 0.1);
    EXPECT_EQ(linspace(2.0, 5.0, 1), std::vector<double>{2.0});
    EXPECT_NEAR(linspace(1.0, 100.0, 100)[9], 10.0, 1e-12);
}

TEST(Devices, ControlBlockDispatch) {
    EXPECT_EQ(device_control_block(DeviceSpec{y_gate_magnet()}).t(), smm_coupling(y_gate_magnet()));
    EXPECT_EQ(device_control_block(DeviceSpec{uniform_flux_ring(pi / 8)}).t(), tb_coupling(uniform_flux_ring(pi / 8)));
    const SpinRingSpec s{{1, 1, 1, 1}, {1, 0, 0, 0}};
    EXPECT_LT(frobenius_distance(device_control_block(DeviceSpec{s}).t(), spin_coupling(s)), 1e-15);
}
