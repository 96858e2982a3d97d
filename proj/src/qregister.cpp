#include "holo/qregister.hpp"

#include <cmath>
#include <string>

namespace holo {

namespace {

void check_qubits(std::size_t n) {
    if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::IndexOutOfRange, "register size must be 1..12");
}

}  // namespace

StateVector::StateVector(std::size_t n) : n_(n) {
    check_qubits(n);
    amps_.assign(std::size_t{1} << n, cplx{});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_qubits(n);
    if (amps_.size() != (std::size_t{1} << n)) throw Error(ErrorKind::InvalidInput, "amplitude count must be 2^n");
    if (std::abs(norm() - 1.0) > 1e-10) throw Error(ErrorKind::InvalidInput, "state must be normalized");
}

StateVector StateVector::basis_state(std::size_t n, std::size_t index) {
    StateVector sv(n);
    if (index >= sv.amps_.size()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
    sv.amps_[0] = 0.0;
    sv.amps_[index] = 1.0;
    return sv;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto &a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

StateVector apply_gate(const StateVector &sv, std::size_t p, std::size_t q, const Gate4 &gate) {
    const std::size_t n = sv.n_;
    if (p == q || p >= n || q >= n) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "gate qubits (" + std::to_string(p) + ", " + std::to_string(q) + ") invalid for n = " +
                        std::to_string(n));
    }
    const std::size_t bp = std::size_t{1} << (n - 1 - p);
    const std::size_t bq = std::size_t{1} << (n - 1 - q);
    StateVector out = sv;
    for (std::size_t base = 0; base < sv.amps_.size(); ++base) {
        if (base & (bp | bq)) continue;
        const std::size_t idx[4] = {base, base | bq, base | bp, base | bp | bq};
        for (std::size_t r = 0; r < 4; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < 4; ++c) acc += gate.u(r, c) * sv.amps_[idx[c]];
            out.amps_[idx[r]] = acc;
        }
    }
    return out;
}

StateVector run_schedule(const StateVector &sv, const Schedule &s) {
    if (s.n != sv.num_qubits()) throw Error(ErrorKind::IndexOutOfRange, "schedule register size mismatch");
    StateVector cur = sv;
    for (const auto &step : s.steps) cur = apply_gate(cur, step.p, step.q, step.gate);
    return cur;
}

double entanglement_entropy(const StateVector &sv, std::size_t qubit) {
    const std::size_t n = sv.num_qubits();
    if (qubit >= n) throw Error(ErrorKind::IndexOutOfRange, "qubit index out of range");
    const std::size_t bit = std::size_t{1} << (n - 1 - qubit);
    Mat2 rho;
    const auto &a = sv.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = a[i], a1 = a[i | bit];
        rho(0, 0) += std::norm(a0);
        rho(1, 1) += std::norm(a1);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
    }
    const auto es = eig_hermitian(rho);
    double s = 0.0;
    for (double lam : es.values)
        if (lam > 1e-300) s -= lam * std::log(lam);
    return s;
}

}  // namespace holo
