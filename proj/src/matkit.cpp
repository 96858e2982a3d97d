#include "holo/matkit.hpp"

#include <numeric>

namespace holo {

Mat2 block(const Mat4 &m, std::size_t br, std::size_t bc) {
    Mat2 b;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) b(r, c) = m(2 * br + r, 2 * bc + c);
    return b;
}

Mat4 from_blocks(const Mat2 &tl, const Mat2 &tr, const Mat2 &bl, const Mat2 &br) {
    Mat4 m;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            m(r, c) = tl(r, c);
            m(r, c + 2) = tr(r, c);
            m(r + 2, c) = bl(r, c);
            m(r + 2, c + 2) = br(r, c);
        }
    return m;
}

cplx det(const Mat2 &m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

bool is_singular(const Mat2 &t) {
    const double f = t.frobenius_norm();
    return std::abs(det(t)) <= kSingularTol * f * f;
}

namespace {

template <std::size_t N>
void require_hermitian(const CMat<N> &h) {
    if (!h.is_hermitian(kHermitianTol)) {
        throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian within 1e-12");
    }
}

EigenSystem<2> eig2(const Mat2 &h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    // average the two off-diagonal entries so tiny anti-Hermitian noise cancels
    const cplx b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double half = 0.5 * (a - d);

    EigenSystem<2> es;
    if (b == cplx{}) {
        if (a <= d) {
            es.values = {a, d};
            es.vectors = Mat2::identity();
        } else {
            es.values = {d, a};
            es.vectors = pauli::X();
        }
        return es;
    }

    const double r = std::hypot(half, std::abs(b));
    const double lo = mean - r;
    // two null vectors of (h - lo), one from each row; keep the better conditioned
    std::array<cplx, 2> v1{b, lo - a};
    std::array<cplx, 2> v2{lo - d, std::conj(b)};
    const double n1 = std::hypot(std::abs(v1[0]), std::abs(v1[1]));
    const double n2 = std::hypot(std::abs(v2[0]), std::abs(v2[1]));
    auto v = n1 >= n2 ? v1 : v2;
    const double n = std::max(n1, n2);
    v[0] /= n;
    v[1] /= n;

    es.values = {lo, mean + r};
    es.vectors(0, 0) = v[0];
    es.vectors(1, 0) = v[1];
    es.vectors(0, 1) = -std::conj(v[1]);
    es.vectors(1, 1) = std::conj(v[0]);
    return es;
}

template <std::size_t N>
EigenSystem<N> jacobi(const CMat<N> &h) {
    CMat<N> a = h;
    CMat<N> v = CMat<N>::identity();
    for (std::size_t i = 0; i < N; ++i) a(i, i) = a(i, i).real();

    const double scale = std::max(h.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-17 * scale) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase_conj = std::conj(apq) / mag;  // e^{-i arg a_pq}
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // rotation acting on columns p, q
                const cplx qpp = c, qpq = s, qqp = -s * phase_conj, qqq = c * phase_conj;

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * qpp + akq * qqp;
                    a(k, q) = akp * qpq + akq * qqq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * qpp + vkq * qqp;
                    v(k, q) = vkp * qpq + vkq * qqq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(qpp) * apk + std::conj(qqp) * aqk;
                    a(q, k) = std::conj(qpq) * apk + std::conj(qqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem<N> es;
    for (std::size_t k = 0; k < N; ++k) {
        es.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < N; ++r) es.vectors(r, k) = v(r, order[k]);
    }
    return es;
}

}  // namespace

template <std::size_t N>
EigenSystem<N> eig_hermitian(const CMat<N> &h) {
    require_hermitian(h);
    if constexpr (N == 2) {
        return eig2(h);
    } else {
        return jacobi(h);
    }
}

template <std::size_t N>
CMat<N> expi_minus_identity(const CMat<N> &h, double s) {
    const auto es = eig_hermitian(h);
    CMat<N> out;
    std::array<cplx, N> ph;
    for (std::size_t k = 0; k < N; ++k) {
        // e^{-ix} - 1 without cancellation for small x
        const double x = s * es.values[k];
        const double half = std::sin(0.5 * x);
        ph[k] = cplx{-2.0 * half * half, -std::sin(x)};
    }
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < N; ++k) acc += es.vectors(r, k) * ph[k] * std::conj(es.vectors(c, k));
            out(r, c) = acc;
        }
    return out;
}

template <std::size_t N>
CMat<N> expi(const CMat<N> &h, double s) {
    return CMat<N>::identity() + expi_minus_identity(h, s);
}

template EigenSystem<2> eig_hermitian(const CMat<2> &);
template EigenSystem<4> eig_hermitian(const CMat<4> &);
template EigenSystem<16> eig_hermitian(const CMat<16> &);
template CMat<2> expi_minus_identity(const CMat<2> &, double);
template CMat<4> expi_minus_identity(const CMat<4> &, double);
template CMat<16> expi_minus_identity(const CMat<16> &, double);
template CMat<2> expi(const CMat<2> &, double);
template CMat<4> expi(const CMat<4> &, double);
template CMat<16> expi(const CMat<16> &, double);

Mat2 Svd2::reconstruct() const {
    return u0 * Mat2::diagonal({alpha, beta}) * u1.adjoint();
}

Svd2 svd2(const Mat2 &t) {
    if (is_singular(t)) {
        throw Error(ErrorKind::SingularT, "coupling block T is singular (det T = 0)");
    }
    // left singular vectors = eigenvectors of T T^dag, largest first
    const auto es = eig_hermitian(t * t.adjoint());
    Svd2 out;
    out.alpha = std::sqrt(std::max(es.values[1], 0.0));
    out.beta = std::abs(det(t)) / out.alpha;
    if (es.values[1] - es.values[0] <= 1e-14 * es.values[1]) {
        // T T^dag proportional to I: every basis is singular; take the standard one
        out.u0 = Mat2::identity();
    } else {
        for (std::size_t r = 0; r < 2; ++r) {
            out.u0(r, 0) = es.vectors(r, 1);
            out.u0(r, 1) = es.vectors(r, 0);
        }
    }

    for (std::size_t c = 0; c < 2; ++c) {
        const double m0 = std::abs(out.u0(0, c));
        const double m1 = std::abs(out.u0(1, c));
        const std::size_t pivot = m1 > m0 * (1.0 + 1e-12) ? 1 : 0;
        const cplx z = out.u0(pivot, c);
        const cplx phase = std::conj(z) / std::abs(z);
        out.u0(0, c) *= phase;
        out.u0(1, c) *= phase;
        out.u0(pivot, c) = out.u0(pivot, c).real();
    }

    // u1 = T^dag u0 D^-1
    const Mat2 w = t.adjoint() * out.u0;
    const std::array<double, 2> sv{out.alpha, out.beta};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) out.u1(r, c) = w(r, c) / sv[c];
    return out;
}

}  // namespace holo
