// Test-only helpers: random inputs, a brute-force partial trace, and
// hand-coded qubit fixtures that never go through the quDit code paths.
#pragma once

#include "telegate/random.hpp"
#include "telegate/tensor.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace telegate::testing {

inline PureState random_state(std::vector<int> dims, std::vector<std::string> labels, Rng &rng) {
    std::size_t n = 1;
    for (int d : dims) {
        n *= static_cast<std::size_t>(d);
    }
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        v(i) = {re, rng.normal()};
    }
    return {std::move(v), std::move(dims), std::move(labels), true};
}

inline CMatrix random_unitary(int n, Rng &rng) {
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double re = rng.normal();
        g(i) = {re, rng.normal()};
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    return qr.householderQ() * CMatrix::Identity(n, n);
}

inline std::vector<cplx> amplitudes_of(const PureState &s) {
    return {s.amplitudes().data(), s.amplitudes().data() + s.size()};
}

/// |<a|b>| for comparisons that ignore global phase.
inline double overlap(const CVector &a, const CVector &b) { return std::abs(a.dot(b)); }

/// Reduced density matrix by explicit digit decoding: for every pair of
/// full basis indices whose traced digits agree, accumulate psi_i psi_j^*.
inline CMatrix brute_partial_trace(const CVector &psi, const std::vector<int> &dims, const std::vector<int> &keep) {
    const std::size_t s = dims.size();
    auto digits = [&](std::size_t flat) {
        std::vector<int> d(s);
        for (std::size_t j = s; j-- > 0;) {
            d[j] = static_cast<int>(flat % static_cast<std::size_t>(dims[j]));
            flat /= static_cast<std::size_t>(dims[j]);
        }
        return d;
    };
    int kept_size = 1;
    for (int k : keep) {
        kept_size *= dims[static_cast<std::size_t>(k)];
    }
    CMatrix rho = CMatrix::Zero(kept_size, kept_size);
    const auto total = static_cast<std::size_t>(psi.size());
    for (std::size_t i = 0; i < total; ++i) {
        const auto di = digits(i);
        for (std::size_t j = 0; j < total; ++j) {
            const auto dj = digits(j);
            bool traced_equal = true;
            for (std::size_t q = 0; q < s; ++q) {
                bool kept = false;
                for (int k : keep) {
                    kept = kept || static_cast<std::size_t>(k) == q;
                }
                if (!kept && di[q] != dj[q]) {
                    traced_equal = false;
                }
            }
            if (!traced_equal) {
                continue;
            }
            int r = 0;
            int c = 0;
            for (int k : keep) {
                r = r * dims[static_cast<std::size_t>(k)] + di[static_cast<std::size_t>(k)];
                c = c * dims[static_cast<std::size_t>(k)] + dj[static_cast<std::size_t>(k)];
            }
            rho(r, c) += psi(static_cast<Eigen::Index>(i)) * std::conj(psi(static_cast<Eigen::Index>(j)));
        }
    }
    return rho;
}

// ---------------------------------------------------------------------------
// Qubit fixtures, written term by term from the two-level formulas.
// Three-qubit kets |abc> sit at index 4a + 2b + c.

namespace qubit {

inline cplx e(double phase) { return std::polar(1.0, phase); }

inline CMatrix u_theta(double theta) {
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = e(theta);
    u(1, 1) = e(-theta);
    return u;
}

inline CVector phi0(double p) {
    CVector v = CVector::Zero(8);
    v(0b000) = 1.0;
    v(0b011) = p;
    v(0b101) = 1.0 - p;
    return v / std::sqrt(2.0 * (1.0 - p + p * p));
}

inline CVector phi1(double p) {
    CVector v = CVector::Zero(8);
    v(0b111) = 1.0;
    v(0b100) = p;
    v(0b010) = 1.0 - p;
    return v / std::sqrt(2.0 * (1.0 - p + p * p));
}

/// (|0>_P |phi0> + |1>_P |phi1>) / sqrt 2 over (P, A, B, C).
inline CVector xi(double p) {
    CVector v(16);
    v.head(8) = phi0(p) / std::sqrt(2.0);
    v.tail(8) = phi1(p) / std::sqrt(2.0);
    return v;
}

inline CVector program(double p, double theta) {
    CVector v(16);
    v.head(8) = e(theta) * phi0(p) / std::sqrt(2.0);
    v.tail(8) = e(-theta) * phi1(p) / std::sqrt(2.0);
    return v;
}

/// Two-qubit kets |xy> at index 2x + y.
inline CVector two(cplx c00, cplx c01, cplx c10, cplx c11) {
    CVector v(4);
    v << c00, c01, c10, c11;
    return v / std::sqrt(2.0);
}

inline CVector phi_plus() { return two(1, 0, 0, 1); }
inline CVector phi_minus() { return two(1, 0, 0, -1); }
inline CVector psi_plus() { return two(0, 1, 1, 0); }
inline CVector psi_minus() { return two(0, 1, -1, 0); }

inline CVector tilted_phi(double theta, double sign) { return two(e(-theta), 0, 0, sign * e(theta)); }
inline CVector tilted_psi(double theta, double sign) { return two(0, e(-theta), sign * e(theta), 0); }

/// Unnormalized (factor 1/2 dropped) post-measurement rows of the Bell
/// expansion of |psi>_d |P_U>; order Phi+, Phi-, Psi+, Psi-.
inline std::vector<CVector> processor_rows(cplx a0, cplx a1, double p, double theta) {
    const CVector f0 = phi0(p);
    const CVector f1 = phi1(p);
    return {a0 * e(theta) * f0 + a1 * e(-theta) * f1, a0 * e(theta) * f0 - a1 * e(-theta) * f1,
            a1 * e(theta) * f0 + a0 * e(-theta) * f1, a1 * e(theta) * f0 - a0 * e(-theta) * f1};
}

inline CVector eta(cplx a0, cplx a1, double p, double theta) {
    return a0 * e(theta) * phi0(p) + a1 * e(-theta) * phi1(p);
}

inline CMatrix rho_a(cplx a0, cplx a1, double p, double theta) {
    const double norm = 2.0 * (1.0 - p + p * p);
    CMatrix r(2, 2);
    r(0, 0) = (2.0 * p * std::norm(a0) + (1.0 - p) * (1.0 - p)) / norm;
    r(1, 1) = (2.0 * p * std::norm(a1) + (1.0 - p) * (1.0 - p)) / norm;
    r(0, 1) = 2.0 * p * a0 * std::conj(a1) * e(2.0 * theta) / norm;
    r(1, 0) = 2.0 * p * std::conj(a0) * a1 * e(-2.0 * theta) / norm;
    return r;
}

inline CMatrix rho_b(cplx a0, cplx a1, double p, double theta) {
    const double norm = 2.0 * (1.0 - p + p * p);
    CMatrix r(2, 2);
    r(0, 0) = (2.0 * (1.0 - p) * std::norm(a0) + p * p) / norm;
    r(1, 1) = (2.0 * (1.0 - p) * std::norm(a1) + p * p) / norm;
    r(0, 1) = 2.0 * (1.0 - p) * a0 * std::conj(a1) * e(2.0 * theta) / norm;
    r(1, 0) = 2.0 * (1.0 - p) * std::conj(a0) * a1 * e(-2.0 * theta) / norm;
    return r;
}

inline double fidelity_a(double p) { return (1.0 + p * p) / (2.0 * (1.0 - p + p * p)); }
inline double fidelity_b(double p) { return (2.0 - 2.0 * p + p * p) / (2.0 * (1.0 - p + p * p)); }

/// sigma_z (x) sigma_z (x) sigma_z.
inline CMatrix zzz() {
    CMatrix v = CMatrix::Zero(8, 8);
    for (int k = 0; k < 8; ++k) {
        const int ones = (k & 1) + ((k >> 1) & 1) + ((k >> 2) & 1);
        v(k, k) = (ones % 2 == 0) ? 1.0 : -1.0;
    }
    return v;
}

} // namespace qubit

} // namespace telegate::testing
