#include "holo/sampling.hpp"

#include <cstdlib>
#include <string>

namespace holo::sampling {

std::uint64_t seed_from_env(std::uint64_t fallback) {
    const char *env = std::getenv("HOLO_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        return std::stoull(env);
    } catch (const std::exception &) {
        return fallback;
    }
}

double uniform(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

cplx complex_gaussian(Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

Mat2 su2(Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double q[4];
    double n = 0.0;
    do {
        n = 0.0;
        for (double &x : q) {
            x = g(rng);
            n += x * x;
        }
    } while (n < 1e-12);
    n = std::sqrt(n);
    for (double &x : q) x /= n;
    const cplx a{q[0], q[1]};
    const cplx b{q[2], q[3]};
    return Mat2{a, b, -std::conj(b), std::conj(a)};
}

Mat2 invertible_block(Rng &rng) {
    for (;;) {
        Mat2 t{complex_gaussian(rng), complex_gaussian(rng), complex_gaussian(rng), complex_gaussian(rng)};
        const double f = t.frobenius_norm();
        if (std::abs(det(t)) > 1e-3 * f * f) return t;
    }
}

}  // namespace holo::sampling
