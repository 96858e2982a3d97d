#include "holo/holonomy.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace holo {

using std::numbers::pi;

ControlBlock::ControlBlock(const Mat2 &t) : t_(t), svd_(svd2(t)) {}

std::string_view to_string(HolonomyClass c) {
    switch (c) {
        case HolonomyClass::trivial_plus: return "trivial_plus";
        case HolonomyClass::trivial_minus: return "trivial_minus";
        case HolonomyClass::nontrivial_n1: return "nontrivial_n1";
        case HolonomyClass::nontrivial_minus: return "nontrivial_minus";
    }
    return "trivial_plus";
}

HolonomyClass parse_holonomy_class(std::string_view name) {
    for (auto c : {HolonomyClass::trivial_plus, HolonomyClass::trivial_minus, HolonomyClass::nontrivial_n1,
                   HolonomyClass::nontrivial_minus}) {
        if (to_string(c) == name) return c;
    }
    throw Error(ErrorKind::InvalidInput, "unknown holonomy class '" + std::string(name) + "'");
}

std::string_view to_string(Encoding e) {
    return e == Encoding::ab_cd ? "ab_cd" : "control_target_swapped";
}

Encoding parse_encoding(std::string_view name) {
    if (name == "ab_cd") return Encoding::ab_cd;
    if (name == "control_target_swapped" || name == "swapped") return Encoding::control_target_swapped;
    throw Error(ErrorKind::InvalidInput, "unknown encoding '" + std::string(name) + "'");
}

Gate4 make_gate4(const Mat4 &u, Encoding encoding) {
    if (!u.is_unitary(1e-10)) throw Error(ErrorKind::NotUnitary, "gate matrix is not unitary within 1e-10");
    return Gate4{u, encoding};
}

Mat4 block_hamiltonian(const Mat2 &t) { return from_blocks(Mat2{}, t, t.adjoint(), Mat2{}); }

Mat4 block_hamiltonian(const ControlBlock &cb) { return block_hamiltonian(cb.t()); }

Mat4 closed_form_evolution(const ControlBlock &cb, double a) {
    const Svd2 &s = cb.svd();
    const Mat2 cos_d = Mat2::diagonal({std::cos(a * s.alpha), std::cos(a * s.beta)});
    const Mat2 sin_d = Mat2::diagonal({std::sin(a * s.alpha), std::sin(a * s.beta)});
    const cplx mi{0.0, -1.0};
    return from_blocks(s.u0 * cos_d * s.u0.adjoint(), mi * (s.u0 * sin_d * s.u1.adjoint()),
                       mi * (s.u1 * sin_d * s.u0.adjoint()), s.u1 * cos_d * s.u1.adjoint());
}

CycleArea find_cycle_area(const ControlBlock &cb, int max_denominator) {
    if (max_denominator < 1) throw Error(ErrorKind::InvalidInput, "max_denominator must be >= 1");
    const double alpha = cb.svd().alpha;
    const double beta = cb.svd().beta;
    const double ratio = alpha / beta;

    // convergents h/k of the continued fraction of alpha/beta
    long h_prev = 1, h_prev2 = 0;
    long k_prev = 0, k_prev2 = 1;
    double x = ratio;
    for (int iter = 0; iter < 64; ++iter) {
        const double whole = std::floor(x);
        const long ai = static_cast<long>(whole);
        const long h = ai * h_prev + h_prev2;
        const long k = ai * k_prev + k_prev2;
        if (k > max_denominator) break;
        const double residual = std::abs(ratio - static_cast<double>(h) / static_cast<double>(k));
        if (residual < 1e-9) {
            return CycleArea{static_cast<double>(k) * pi / beta, h, k, residual};
        }
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const double frac = x - whole;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    throw Error(ErrorKind::IncommensurateRatio,
                "alpha/beta = " + std::to_string(ratio) + " has no rational approximation within 1e-9");
}

HolonomyResult holonomy_pair(const ControlBlock &cb, double a_tau) {
    const Svd2 &s = cb.svd();
    const double xa = a_tau * s.alpha;
    const double xb = a_tau * s.beta;
    if (std::abs(std::sin(xa)) >= 1e-8 || std::abs(std::sin(xb)) >= 1e-8) {
        throw Error(ErrorKind::NotCyclic, "sin(a_tau D) does not vanish; evolution is not cyclic");
    }
    HolonomyResult hr;
    hr.p = std::lround(xa / pi);
    hr.q = std::lround(xb / pi);
    const double ca = (hr.p % 2 == 0) ? 1.0 : -1.0;
    const double cb_ = (hr.q % 2 == 0) ? 1.0 : -1.0;
    const Mat2 cos_d = Mat2::diagonal({ca, cb_});
    hr.u_c0 = s.u0 * cos_d * s.u0.adjoint();
    hr.u_c1 = s.u1 * cos_d * s.u1.adjoint();
    if (ca > 0 && cb_ > 0) {
        hr.classification = HolonomyClass::trivial_plus;
    } else if (ca < 0 && cb_ < 0) {
        hr.classification = HolonomyClass::trivial_minus;
    } else if (ca > 0) {
        hr.classification = HolonomyClass::nontrivial_n1;
    } else {
        hr.classification = HolonomyClass::nontrivial_minus;
    }
    return hr;
}

Mat4 swap_bc() {
    Mat4 p;
    p(0, 0) = 1.0;
    p(1, 2) = 1.0;
    p(2, 1) = 1.0;
    p(3, 3) = 1.0;
    return p;
}

Gate4 conditional_gate(const HolonomyResult &hr, Encoding encoding) {
    const Mat2 proj0 = Mat2::diagonal({1.0, 0.0});
    const Mat2 proj1 = Mat2::diagonal({0.0, 1.0});
    if (encoding == Encoding::ab_cd) {
        return Gate4{kron(proj0, hr.u_c0) + kron(proj1, hr.u_c1), encoding};
    }
    return Gate4{kron(hr.u_c0, proj0) + kron(hr.u_c1, proj1), encoding};
}

std::array<double, 3> axis_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<double, 2> angles_from_axis(const std::array<double, 3> &n) {
    const double theta = std::atan2(std::hypot(n[0], n[1]), n[2]);  // acos loses digits near the poles
    const double phi = std::atan2(n[1], n[0]);
    return {theta, phi};
}

namespace {

Mat2 rotation(const Mat2 &generator, double angle) {
    // exp(-i angle G / 2) for an involutory Pauli G
    return std::cos(angle / 2) * Mat2::identity() + cplx{0.0, -std::sin(angle / 2)} * generator;
}

std::array<double, 3> cross(const std::array<double, 3> &a, const std::array<double, 3> &b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace

Synthesis synth_one_qubit(double theta, double phi) {
    const Mat2 u0 = rotation(pauli::Z(), phi) * rotation(pauli::Y(), theta);
    const Mat2 t = u0 * Mat2::diagonal({2.0, 1.0}) * u0.adjoint();
    return Synthesis{ControlBlock(t), pi};
}

Su2Plan plan_su2(const Mat2 &target) {
    if (!target.is_unitary(1e-10) || std::abs(det(target) - 1.0) > 1e-10) {
        throw Error(ErrorKind::NotSU2, "target is not in SU(2) within 1e-10");
    }
    // target = w I - i (v . R)
    const double w = 0.5 * (target(0, 0) + target(1, 1)).real();
    const std::array<double, 3> v{-0.5 * (target(0, 1) + target(1, 0)).imag(),
                                  0.5 * (target(1, 0) - target(0, 1)).real(),
                                  -0.5 * (target(0, 0) - target(1, 1)).imag()};
    const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    const double half_angle = std::atan2(vn, w);
    std::array<double, 3> k{1.0, 0.0, 0.0};
    if (vn > 1e-15) k = {v[0] / vn, v[1] / vn, v[2] / vn};

    // n: z projected onto the plane orthogonal to k; x projected instead when
    // k is (nearly) along z, which is x itself for k exactly along z
    std::array<double, 3> n{-k[2] * k[0], -k[2] * k[1], 1.0 - k[2] * k[2]};
    double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (nn < 1e-6) {
        n = {1.0 - k[0] * k[0], -k[0] * k[1], -k[0] * k[2]};
        nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    }
    for (auto &x : n) x /= nn;
    // m: n rotated about k by half_angle, so n.m = cos and n x m = sin k
    const auto kxn = cross(k, n);
    std::array<double, 3> m{};
    for (int i = 0; i < 3; ++i) m[i] = n[i] * std::cos(half_angle) + kxn[i] * std::sin(half_angle);

    const Mat2 product = pauli::dot(m) * pauli::dot(n);
    if (frobenius_distance(product, target) > 1e-10) {
        throw Error(ErrorKind::NotSU2, "two-axis plan failed verification");
    }
    return Su2Plan{n, m};
}

Synthesis synth_entangling(const Mat2 &u0, const Mat2 &u1) {
    if (!u0.is_unitary(1e-10) || !u1.is_unitary(1e-10)) {
        throw Error(ErrorKind::NotUnitary, "entangler factors must be unitary");
    }
    const Mat2 t = u0 * Mat2::diagonal({2.0, 1.0}) * u1.adjoint();
    return Synthesis{ControlBlock(t), pi};
}

std::array<double, 4> operator_schmidt_coefficients(const Mat4 &u) {
    // realign: R[(c, c'), (t, t')] = u[(c, t), (c', t')]
    Mat4 r;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t cp = 0; cp < 2; ++cp)
            for (std::size_t t = 0; t < 2; ++t)
                for (std::size_t tp = 0; tp < 2; ++tp) r(2 * c + cp, 2 * t + tp) = u(2 * c + t, 2 * cp + tp);
    const Mat4 g = r.adjoint() * r;
    // symmetrize against rounding before the Hermitian solver
    const auto es = eig_hermitian<4>(0.5 * (g + g.adjoint()));
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = std::sqrt(std::max(es.values[3 - i], 0.0));
    return out;
}

int schmidt_rank(const Mat4 &u, double tol) {
    const auto s = operator_schmidt_coefficients(u);
    // compare squares: they come straight from the Gram eigenvalues
    int rank = 0;
    for (double x : s)
        if (x * x > tol * s[0] * s[0]) ++rank;
    return rank;
}

}  // namespace holo
