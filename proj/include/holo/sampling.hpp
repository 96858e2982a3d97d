#pragma once

// Random instances for property checks. All draws go through a caller-owned
// engine so runs are reproducible from a seed.

#include <cstdint>
#include <random>

#include "holo/matkit.hpp"

namespace holo::sampling {

using Rng = std::mt19937_64;

/// Seed from HOLO_SEED if set and parseable, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback = 20130501);

double uniform(Rng &rng, double lo, double hi);
cplx complex_gaussian(Rng &rng);

template <std::size_t N>
CMat<N> hermitian(Rng &rng) {
    CMat<N> h;
    for (std::size_t r = 0; r < N; ++r) {
        h(r, r) = std::normal_distribution<double>(0.0, 1.0)(rng);
        for (std::size_t c = r + 1; c < N; ++c) {
            h(r, c) = complex_gaussian(rng);
            h(c, r) = std::conj(h(r, c));
        }
    }
    return h;
}

template <std::size_t N>
CMat<N> unitary(Rng &rng) {
    return expi(hermitian<N>(rng), uniform(rng, 0.5, 3.0));
}

/// Haar-distributed SU(2) element.
Mat2 su2(Rng &rng);

/// Complex Gaussian 2x2 with |det| comfortably above the singularity threshold.
Mat2 invertible_block(Rng &rng);

}  // namespace holo::sampling
