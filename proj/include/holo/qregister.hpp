#pragma once

// Pairwise application of four-level gates on an n-qubit register. Each
// step drives exactly one pair (p, q) while every other coupling is off.
// Qubit 0 is the most significant bit of the amplitude index.

#include <cstddef>
#include <vector>

#include "holo/holonomy.hpp"

namespace holo {

inline constexpr std::size_t kMaxQubits = 12;

class StateVector {
  public:
    /// |0...0> on n qubits, 1 <= n <= 12.
    explicit StateVector(std::size_t n);
    /// Explicit amplitudes; size must be 2^n and the norm 1 within 1e-10.
    StateVector(std::size_t n, std::vector<cplx> amplitudes);

    static StateVector basis_state(std::size_t n, std::size_t index);

    std::size_t num_qubits() const { return n_; }
    const std::vector<cplx> &amplitudes() const { return amps_; }
    cplx amplitude(std::size_t index) const { return amps_[index]; }
    double norm() const;

  private:
    friend StateVector apply_gate(const StateVector &, std::size_t, std::size_t, const Gate4 &);

    std::size_t n_;
    std::vector<cplx> amps_;
};

struct ScheduleStep {
    std::size_t p;
    std::size_t q;
    Gate4 gate;
};

struct Schedule {
    std::size_t n = 0;
    std::vector<ScheduleStep> steps;
};

/// Gate acts on bits (p, q) with p as the more significant bit of the 4x4
/// index. Throws IndexOutOfRange for p == q or indices >= n.
StateVector apply_gate(const StateVector &sv, std::size_t p, std::size_t q, const Gate4 &gate);

/// Throws IndexOutOfRange when the schedule's register size differs from sv.
StateVector run_schedule(const StateVector &sv, const Schedule &s);

/// von Neumann entropy (natural log) of one qubit's reduced state.
double entanglement_entropy(const StateVector &sv, std::size_t qubit);

}  // namespace holo
