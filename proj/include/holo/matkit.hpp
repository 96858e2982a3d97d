#pragma once

// Small dense complex matrices (2x2, 4x4, 16x16) and the handful of
// factorizations the gate construction needs. Storage is row-major and
// fixed-size; everything is a value type.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>

#include "holo/error.hpp"

namespace holo {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-11;
inline constexpr double kSingularTol = 1e-10;

template <std::size_t N>
class CMat {
    static_assert(N == 2 || N == 4 || N == 16, "CMat supports dimensions 2, 4 and 16");

  public:
    static constexpr std::size_t dim = N;

    CMat() = default;

    /// Row-major entries; the list must hold exactly N*N values.
    CMat(std::initializer_list<cplx> entries) {
        if (entries.size() != N * N) {
            throw Error(ErrorKind::InvalidInput, "CMat initializer has wrong entry count");
        }
        std::copy(entries.begin(), entries.end(), a_.begin());
    }

    static CMat identity() {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static CMat diagonal(const std::array<cplx, N> &d) {
        CMat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    cplx &operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

    std::span<const cplx, N * N> entries() const { return a_; }
    std::span<cplx, N * N> entries() { return a_; }

    CMat adjoint() const {
        CMat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto &z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    /// max |h_ij - conj(h_ji)| <= tol * max(1, max|h_ij|)
    bool is_hermitian(double tol = kHermitianTol) const {
        const double scale = std::max(1.0, max_abs());
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = r; c < N; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol * scale) return false;
        return true;
    }

    /// max |(U^dag U - I)_ij| <= tol
    bool is_unitary(double tol = kUnitaryTol) const {
        const CMat g = adjoint() * (*this);
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c)
                if (std::abs(g(r, c) - (r == c ? 1.0 : 0.0)) > tol) return false;
        return true;
    }

    CMat &operator+=(const CMat &o) {
        for (std::size_t i = 0; i < N * N; ++i) a_[i] += o.a_[i];
        return *this;
    }
    CMat &operator-=(const CMat &o) {
        for (std::size_t i = 0; i < N * N; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    CMat &operator*=(cplx s) {
        for (auto &z : a_) z *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat &b) { return a += b; }
    friend CMat operator-(CMat a, const CMat &b) { return a -= b; }
    friend CMat operator-(CMat a) { return a *= -1.0; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }

    friend CMat operator*(const CMat &a, const CMat &b) {
        CMat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    friend bool operator==(const CMat &a, const CMat &b) { return a.a_ == b.a_; }

  private:
    std::array<cplx, N * N> a_{};
};

using Mat2 = CMat<2>;
using Mat4 = CMat<4>;
using Mat16 = CMat<16>;

template <std::size_t N>
double frobenius_distance(const CMat<N> &a, const CMat<N> &b) {
    return (a - b).frobenius_norm();
}

template <std::size_t N, std::size_t M>
CMat<N * M> kron(const CMat<N> &a, const CMat<M> &b) {
    CMat<N * M> k;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t p = 0; p < M; ++p)
                for (std::size_t q = 0; q < M; ++q) k(i * M + p, j * M + q) = a(i, j) * b(p, q);
    return k;
}

/// 2x2 block (br, bc) of a 4x4 matrix, br/bc in {0, 1}.
Mat2 block(const Mat4 &m, std::size_t br, std::size_t bc);
Mat4 from_blocks(const Mat2 &tl, const Mat2 &tr, const Mat2 &bl, const Mat2 &br);

namespace pauli {
inline Mat2 I() { return Mat2::identity(); }
inline Mat2 X() { return Mat2{0.0, 1.0, 1.0, 0.0}; }
inline Mat2 Y() { return Mat2{0.0, cplx{0, -1}, cplx{0, 1}, 0.0}; }
inline Mat2 Z() { return Mat2{1.0, 0.0, 0.0, -1.0}; }
/// n . (X, Y, Z)
inline Mat2 dot(const std::array<double, 3> &n) { return n[0] * X() + n[1] * Y() + n[2] * Z(); }
}  // namespace pauli

template <std::size_t N>
struct EigenSystem {
    std::array<double, N> values{};  // ascending
    CMat<N> vectors;                 // columns are eigenvectors
};

/// Hermitian eigendecomposition: closed form for 2x2, cyclic Jacobi otherwise.
/// Throws NotHermitian.
template <std::size_t N>
EigenSystem<N> eig_hermitian(const CMat<N> &h);

/// exp(-i s h) for Hermitian h, via the eigendecomposition. Throws NotHermitian.
template <std::size_t N>
CMat<N> expi(const CMat<N> &h, double s);

/// exp(-i s h) - I. Keeps full relative accuracy when s h is small, where
/// forming the exponential first would round the identity part.
template <std::size_t N>
CMat<N> expi_minus_identity(const CMat<N> &h, double s);

/// t = u0 * diag(alpha, beta) * u1^dag with alpha >= beta > 0.
///
/// Gauge: every column of u0 has its largest-magnitude entry real and
/// positive (ties go to the lower row index); u1 is derived from u0 so the
/// reconstruction is exact up to rounding.
struct Svd2 {
    Mat2 u0;
    double alpha = 0.0;
    double beta = 0.0;
    Mat2 u1;

    Mat2 reconstruct() const;
};

/// Throws SingularT when |det t| <= 1e-10 * ||t||_F^2.
Svd2 svd2(const Mat2 &t);

cplx det(const Mat2 &m);
bool is_singular(const Mat2 &t);

}  // namespace holo
