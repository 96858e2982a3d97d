#include "holo/platforms.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

namespace holo {

// ---------------------------------------------------------------------------
// Tight-binding ring

namespace {

std::array<cplx, 4> bond_amplitudes(const TightBindingSpec &spec) {
    std::array<cplx, 4> j;
    for (std::size_t k = 0; k < 4; ++k) j[k] = std::polar(spec.hop_mag[k], -spec.peierls[k]);
    return j;
}

}  // namespace

Mat4 tb_site_hamiltonian(const TightBindingSpec &spec) {
    const auto j = bond_amplitudes(spec);
    Mat4 h;
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t next = (k + 1) % 4;
        h(k, next) += j[k];
        h(next, k) += std::conj(j[k]);
    }
    return h;
}

Mat4 tb_reorder(const Mat4 &site_h, const std::array<std::size_t, 4> &order) {
    Mat4 h;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) h(r, c) = site_h(order[r], order[c]);
    return h;
}

Mat2 tb_coupling(const TightBindingSpec &spec) {
    const auto j = bond_amplitudes(spec);
    return Mat2{j[0], std::conj(j[3]), std::conj(j[1]), j[2]};
}

TightBindingBuild tb_build(const TightBindingSpec &spec) {
    const double phase_sum = spec.peierls[0] + spec.peierls[1] + spec.peierls[2] + spec.peierls[3];
    if (std::abs(phase_sum - spec.flux) > 1e-12) {
        throw Error(ErrorKind::FluxMismatch, "Peierls phases do not add up to the enclosed flux");
    }
    Mat4 h4 = tb_reorder(tb_site_hamiltonian(spec), kTightBindingOrder);
    ControlBlock cb(block(h4, 0, 1));
    return TightBindingBuild{h4, cb};
}

TightBindingSpec tb_gauge_transform(const TightBindingSpec &spec, const std::array<double, 4> &lambda) {
    TightBindingSpec out = spec;
    for (std::size_t k = 0; k < 4; ++k) out.peierls[k] += lambda[(k + 1) % 4] - lambda[k];
    return out;
}

std::array<Mat2, 2> tb_gauge_frames(const std::array<double, 4> &lambda) {
    return {Mat2::diagonal({std::polar(1.0, lambda[0]), std::polar(1.0, lambda[2])}),
            Mat2::diagonal({std::polar(1.0, lambda[1]), std::polar(1.0, lambda[3])})};
}

// ---------------------------------------------------------------------------
// Spin ring

namespace {

// operator `op` on site k (0-based), identity elsewhere
Mat16 on_site(const Mat2 &op, std::size_t k) {
    std::array<Mat2, 4> f{Mat2::identity(), Mat2::identity(), Mat2::identity(), Mat2::identity()};
    f[k] = op;
    return kron(kron(f[0], f[1]), kron(f[2], f[3]));
}

Mat16 on_bond(const Mat2 &a, std::size_t k, const Mat2 &b, std::size_t l) {
    std::array<Mat2, 4> f{Mat2::identity(), Mat2::identity(), Mat2::identity(), Mat2::identity()};
    f[k] = a;
    f[l] = b;
    return kron(kron(f[0], f[1]), kron(f[2], f[3]));
}

}  // namespace

Mat16 spin_build(const SpinRingSpec &spec) {
    const Mat2 sx = 0.5 * pauli::X();
    const Mat2 sy = 0.5 * pauli::Y();
    Mat16 h;
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t l = (k + 1) % 4;
        if (spec.j[k] != 0.0) {
            h += spec.j[k] * (on_bond(sx, k, sx, l) + on_bond(sy, k, sy, l));
        }
        if (spec.dz[k] != 0.0) {
            h += spec.dz[k] * (on_bond(sx, k, sy, l) - on_bond(sy, k, sx, l));
        }
    }
    return h;
}

Mat16 spin_total_sz() {
    Mat16 sz;
    for (std::size_t k = 0; k < 4; ++k) sz += on_site(0.5 * pauli::Z(), k);
    return sz;
}

SpinProjection spin_project(const Mat16 &h16) {
    SpinProjection out;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) out.block(r, c) = h16(kSpinSectorBasis[r], kSpinSectorBasis[c]);

    auto in_sector = [](std::size_t i) {
        return std::find(kSpinSectorBasis.begin(), kSpinSectorBasis.end(), i) != kSpinSectorBasis.end();
    };
    for (std::size_t i = 0; i < 16; ++i) {
        if (!in_sector(i)) continue;
        for (std::size_t j = 0; j < 16; ++j) {
            if (in_sector(j)) continue;
            out.leakage = std::max({out.leakage, std::abs(h16(i, j)), std::abs(h16(j, i))});
        }
    }
    if (out.leakage >= 1e-13) {
        throw Error(ErrorKind::LeakageDetected, "S^z_total = 1 sector couples to the rest of the spectrum");
    }
    out.t = block(out.block, 0, 1);
    return out;
}

Mat2 spin_coupling(const SpinRingSpec &spec) {
    const auto amp = [&](std::size_t k, double sign) { return 0.5 * cplx{spec.j[k], sign * spec.dz[k]}; };
    // bonds 12, 23, 34, 41 are indices 0..3
    return Mat2{amp(0, -1.0), amp(3, +1.0), amp(1, +1.0), amp(2, -1.0)};
}

// ---------------------------------------------------------------------------
// Single-molecule magnet

Mat2 smm_coupling(const SmmSpec &spec) {
    const cplx t11 = 0.5 * cplx{spec.b_x, -spec.b_y};
    const cplx t12{spec.e_x, -spec.e_y};
    return Mat2{t11, t12, std::conj(t12), std::conj(t11)};
}

SmmBuild smm_build(const SmmSpec &spec) {
    ControlBlock cb(smm_coupling(spec));
    const double h = 0.5 * spec.delta_so;
    return SmmBuild{cb, Mat4::diagonal({h, h, -h, -h})};
}

SmmOperatorForm smm_operator_form(const SmmSpec &spec) {
    const Mat2 one = Mat2::identity();
    // chirality operators are Pauli matrices, spin operators carry the 1/2
    const Mat4 cx = kron(pauli::X(), one);
    const Mat4 cy = kron(pauli::Y(), one);
    const Mat4 cz_sz = kron(pauli::Z(), 0.5 * pauli::Z());
    const Mat4 sx = kron(one, 0.5 * pauli::X());
    const Mat4 sy = kron(one, 0.5 * pauli::Y());

    const Mat4 drive = spec.e_x * cx + spec.e_y * cy + spec.b_x * sx + spec.b_y * sy;
    const Mat4 splitting = spec.delta_so * cz_sz;
    return SmmOperatorForm{tb_reorder(drive, kSmmOrder), tb_reorder(splitting, kSmmOrder)};
}

// ---------------------------------------------------------------------------

ControlBlock device_control_block(const DeviceSpec &device) {
    return std::visit(
        [](const auto &spec) -> ControlBlock {
            using S = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<S, TightBindingSpec>) {
                return tb_build(spec).cb;
            } else if constexpr (std::is_same_v<S, SpinRingSpec>) {
                return ControlBlock(spin_project(spin_build(spec)).t);
            } else {
                return smm_build(spec).cb;
            }
        },
        device);
}

double gate_fidelity(const Mat4 &w, const Mat4 &v) {
    if (!w.is_unitary(1e-8) || !v.is_unitary(1e-8)) {
        throw Error(ErrorKind::NotUnitary, "fidelity needs unitary gates (1e-8)");
    }
    return 0.5 + (w.adjoint() * v).trace().real() / 8.0;
}

Gate4 smm_ideal_gate(const SmmSpec &spec, double area) {
    const ControlBlock cb(smm_coupling(spec));
    return make_gate4(closed_form_evolution(cb, area), Encoding::ab_cd);
}

Mat4 smm_gate(const SmmSpec &spec, const Pulse &pulse, double tol) {
    const SmmBuild b = smm_build(spec);
    const Mat4 h0 = block_hamiltonian(b.cb);
    if (pulse.shape() == PulseShape::square) {
        // constant Hamiltonian: one exponential of the whole exponent
        return expi<4>(h0 * cplx{pulse.area()} + b.perturbation * cplx{pulse.tau() / spec.hbar}, 1.0);
    }
    return evolve(DrivenHamiltonian{h0, b.perturbation, pulse, spec.hbar}, tol).u;
}

FidelityGrid smm_fidelity_sweep(const SmmSpec &spec, PulseShape shape, double area,
                                std::span<const double> delta_so_grid, std::span<const double> tau_grid,
                                const Gate4 &target, double tol) {
    FidelityGrid grid;
    grid.spec = spec;
    grid.shape = shape;
    grid.area = area;
    grid.target = target;
    grid.delta_so_mev.assign(delta_so_grid.begin(), delta_so_grid.end());
    grid.tau_ps.assign(tau_grid.begin(), tau_grid.end());
    std::sort(grid.delta_so_mev.begin(), grid.delta_so_mev.end());
    std::sort(grid.tau_ps.begin(), grid.tau_ps.end());
    // validate the spec once up front so errors surface on the calling thread
    (void)smm_build(spec);

    const std::size_t nt = grid.tau_ps.size();
    const std::size_t total = grid.delta_so_mev.size() * nt;
    grid.cells.resize(total);

    auto eval_cell = [&](std::size_t idx) {
        SmmSpec s = spec;
        s.delta_so = grid.delta_so_mev[idx / nt];
        const double tau = grid.tau_ps[idx % nt];
        const Mat4 v = smm_gate(s, Pulse(shape, tau, area), tol);
        grid.cells[idx] = FidelityCell{s.delta_so, tau, gate_fidelity(target.u, v)};
    };

    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) eval_cell(i);
        return grid;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total && !failed; i = next++) {
                    try {
                        eval_cell(i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

std::vector<double> linspace(double start, double stop, std::size_t n) {
    std::vector<double> out;
    if (n == 0) return out;
    if (n == 1) return {start};
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(start + (stop - start) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.back() = stop;
    return out;
}

}  // namespace holo
