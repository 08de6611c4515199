/**
 * @file states.hpp
 * Constructors for the data state, the phase gate U_theta, the shift/clock
 * basis U^(mn), the asymmetric telecloning family |phi_j>, the channel
 * state |xi> and the program state.
 *
 * Subsystem labels are fixed across the library: d (data), P (program
 * port), A and B (receivers), C (ancilla).
 */
#pragma once

#include "telegate/tensor.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace telegate {

namespace label {
inline const std::string kData = "d";
inline const std::string kPort = "P";
inline const std::string kAlice = "A";
inline const std::string kBob = "B";
inline const std::string kCharlie = "C";
} // namespace label

enum class Scheme { Processor, LocalGate };
enum class Completion { LoccOnly, Nonlocal };

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps theta into [0, 2 pi).
inline double normalize_angle(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) {
        t += kTwoPi;
    }
    return t >= kTwoPi ? 0.0 : t;
}

inline void require_even_dim(int dim) {
    if (dim < 2 || dim % 2 != 0) {
        throw Error("D must be even and at least 2 (got " + std::to_string(dim) + ")");
    }
}

inline void require_asymmetry(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error("p must lie in [0, 1]");
    }
}

struct ProtocolConfig {
    int dim = 2;
    double p = 0.5;
    double theta = 0.0;
    Scheme scheme = Scheme::Processor;
    Completion completion = Completion::LoccOnly;

    /// Validates and normalizes theta; throws on odd D or p outside [0, 1].
    static ProtocolConfig make(int dim, double p, double theta, Scheme scheme = Scheme::Processor,
                               Completion completion = Completion::LoccOnly) {
        require_even_dim(dim);
        require_asymmetry(p);
        if (!std::isfinite(theta)) {
            throw Error("theta must be finite");
        }
        return {dim, p, normalize_angle(theta), scheme, completion};
    }
};

/// (-1)^s for any integer s.
inline int parity_sign(int s) { return (s % 2 == 0) ? 1 : -1; }

inline int mod(int a, int n) { return ((a % n) + n) % n; }

/// exp[(-1)^s i theta], the phase U_theta puts on |s>.
inline cplx theta_phase(int s, double theta) { return std::polar(1.0, parity_sign(s) * theta); }

inline PureState make_data_state(int dim, const std::vector<cplx> &alphas, bool normalize = false) {
    if (dim < 1 || alphas.size() != static_cast<std::size_t>(dim)) {
        throw Error("data state needs exactly D amplitudes");
    }
    CVector v(dim);
    for (int k = 0; k < dim; ++k) {
        v(k) = alphas[static_cast<std::size_t>(k)];
    }
    if (v.norm() == 0.0) {
        throw Error("data state amplitudes are all zero");
    }
    return {std::move(v), {dim}, {label::kData}, normalize};
}

inline Operator make_u_theta(int dim, double theta) {
    require_even_dim(dim);
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        m(s, s) = theta_phase(s, theta);
    }
    return Operator::unitary(std::move(m), {dim});
}

/// U^(mn) = sum_s exp(-2 pi i s m / D) |s - n mod D><s|.
inline Operator make_u_mn(int dim, int m, int n) {
    if (dim < 1) {
        throw Error("D must be positive");
    }
    if (m < 0 || m >= dim || n < 0 || n >= dim) {
        throw Error("U^(mn) indices out of range");
    }
    CMatrix u = CMatrix::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        u(mod(s - n, dim), s) = std::polar(1.0, -kTwoPi * s * m / dim);
    }
    return Operator::unitary(std::move(u), {dim});
}

/// 1 + (D-1)(2p^2 - 2p + 1): squared norm of the unnormalized |phi_j>.
inline double phi_norm_sq(int dim, double p) { return 1.0 + (dim - 1) * (2.0 * p * p - 2.0 * p + 1.0); }

/// Output of the asymmetric Heisenberg cloner on |j>|00>, on subsystems A, B, C.
inline PureState make_phi_j(int dim, double p, int j) {
    if (dim < 2) {
        throw Error("D must be at least 2");
    }
    require_asymmetry(p);
    if (j < 0 || j >= dim) {
        throw Error("phi_j index out of range");
    }
    const auto d = static_cast<std::size_t>(dim);
    auto at = [d](int a, int b, int c) {
        return static_cast<Eigen::Index>((static_cast<std::size_t>(a) * d + static_cast<std::size_t>(b)) * d +
                                         static_cast<std::size_t>(c));
    };
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d * d));
    v(at(j, j, j)) = 1.0;
    for (int r = 1; r < dim; ++r) {
        const int jr = mod(j + r, dim);
        v(at(j, jr, jr)) = p;
        v(at(jr, j, jr)) = 1.0 - p;
    }
    v /= std::sqrt(phi_norm_sq(dim, p));
    return {std::move(v), {dim, dim, dim}, {label::kAlice, label::kBob, label::kCharlie}};
}

/// All D members of the |phi_j> family as columns of a D^3 x D matrix.
inline CMatrix phi_columns(int dim, double p) {
    const auto n = static_cast<Eigen::Index>(dim) * dim * dim;
    CMatrix cols(n, dim);
    for (int j = 0; j < dim; ++j) {
        cols.col(j) = make_phi_j(dim, p, j).amplitudes();
    }
    return cols;
}

/// (1/sqrt D) sum_j |j>_P |phi_j>_ABC.
inline PureState make_xi(int dim, double p) {
    require_even_dim(dim);
    const auto block = static_cast<Eigen::Index>(dim) * dim * dim;
    CVector v(dim * block);
    for (int j = 0; j < dim; ++j) {
        v.segment(j * block, block) = make_phi_j(dim, p, j).amplitudes() / std::sqrt(double(dim));
    }
    return {std::move(v),
            {dim, dim, dim, dim},
            {label::kPort, label::kAlice, label::kBob, label::kCharlie}};
}

inline PureState make_program_state(const ProtocolConfig &cfg) {
    return apply_to_subsystems(make_xi(cfg.dim, cfg.p), make_u_theta(cfg.dim, cfg.theta), {label::kPort});
}

/// Ideal output U_theta |psi>.
inline PureState make_target(const ProtocolConfig &cfg, const PureState &data) {
    if (data.dims() != std::vector<int>{cfg.dim}) {
        throw Error("data state must be a single subsystem of dimension D");
    }
    return apply_to_subsystems(data, make_u_theta(cfg.dim, cfg.theta), {data.labels().front()});
}

} // namespace telegate
