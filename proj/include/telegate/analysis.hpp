/**
 * @file analysis.hpp
 * Closed-form clone fidelities and output density matrices, and the
 * comparison of simulated runs against them.
 */
#pragma once

#include "telegate/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace telegate {

struct CloningFidelities {
    double fidelity_a = 0.0;
    double fidelity_b = 0.0;
};

/// F_A = (1 + (D-1) p^2) / N,  F_B = (1 + (D-1)(1-p)^2) / N,
/// N = 1 + (D-1)(2p^2 - 2p + 1).
inline CloningFidelities closed_form_fidelities(int dim, double p) {
    if (dim < 2) {
        throw Error("D must be at least 2");
    }
    require_asymmetry(p);
    const double norm = phi_norm_sq(dim, p);
    const double q = 1.0 - p;
    return {(1.0 + (dim - 1) * p * p) / norm, (1.0 + (dim - 1) * q * q) / norm};
}

enum class Receiver { Alice, Bob };

/// Output density matrix written directly from its matrix elements:
///
///   rho(j,j) = [c |alpha_j|^2 + e] / N
///   rho(j,k) = c alpha_j alpha_k^* exp{[(-1)^j + (-1)^{k+1}] i theta} / N
///
/// with c = 2p + (D-2)p^2, e = (1-p)^2 for Alice and
/// c = D - 2(D-1)p + (D-2)p^2, e = p^2 for Bob. No simulation involved.
inline DensityMatrix reference_rho(int dim, double p, double theta, const std::vector<cplx> &alphas,
                                   Receiver which) {
    require_even_dim(dim);
    require_asymmetry(p);
    const PureState data = make_data_state(dim, alphas);
    const double norm = phi_norm_sq(dim, p);
    double coherent = 0.0;
    double background = 0.0;
    if (which == Receiver::Alice) {
        coherent = 2.0 * p + (dim - 2) * p * p;
        background = (1.0 - p) * (1.0 - p);
    } else {
        coherent = dim - 2.0 * (dim - 1) * p + (dim - 2) * p * p;
        background = p * p;
    }
    CMatrix rho(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const cplx aj = data[static_cast<std::size_t>(j)];
        for (int k = 0; k < dim; ++k) {
            const cplx ak = data[static_cast<std::size_t>(k)];
            if (j == k) {
                rho(j, j) = (coherent * std::norm(aj) + background) / norm;
            } else {
                rho(j, k) = coherent * aj * std::conj(ak) *
                            std::polar(1.0, (parity_sign(j) + parity_sign(k + 1)) * theta) / norm;
            }
        }
    }
    return {std::move(rho), {dim}};
}

struct SweepRow {
    int dim = 0;
    double p = 0.0;
    double theta = 0.0;
    Scheme scheme = Scheme::Processor;
    double fidelity_a_sim = 0.0;
    double fidelity_b_sim = 0.0;
    double fidelity_a_closed = 0.0;
    double fidelity_b_closed = 0.0;
    double success_prob = 0.0;
    double max_abs_err = 0.0;
};

/// Simulated versus closed-form results for one successful run. The error
/// covers both fidelities and both density matrices (elementwise against
/// reference_rho). success_prob is the run's own outcome probability;
/// sweeps overwrite it with the enumerated total.
inline SweepRow compare_run(const ProtocolRun &run) {
    if (!run.success || !run.fidelity_a || !run.fidelity_b || !run.rho_a || !run.rho_b) {
        throw Error("compare_run needs a successful run");
    }
    const auto &cfg = run.config;
    const auto closed = closed_form_fidelities(cfg.dim, cfg.p);
    SweepRow row;
    row.dim = cfg.dim;
    row.p = cfg.p;
    row.theta = cfg.theta;
    row.scheme = cfg.scheme;
    row.fidelity_a_sim = *run.fidelity_a;
    row.fidelity_b_sim = *run.fidelity_b;
    row.fidelity_a_closed = closed.fidelity_a;
    row.fidelity_b_closed = closed.fidelity_b;
    row.success_prob = run.raw_probability;
    const auto ref_a = reference_rho(cfg.dim, cfg.p, cfg.theta, run.data, Receiver::Alice);
    const auto ref_b = reference_rho(cfg.dim, cfg.p, cfg.theta, run.data, Receiver::Bob);
    row.max_abs_err = std::max({std::abs(row.fidelity_a_sim - row.fidelity_a_closed),
                                std::abs(row.fidelity_b_sim - row.fidelity_b_closed),
                                max_abs_diff(run.rho_a->matrix(), ref_a.matrix()),
                                max_abs_diff(run.rho_b->matrix(), ref_b.matrix())});
    return row;
}

/// Enumerates every outcome for each data state and keeps the worst
/// fidelity error over all successful branches.
inline SweepRow sweep_cell(const ProtocolConfig &cfg, const std::vector<PureState> &data_states) {
    if (data_states.empty()) {
        throw Error("sweep cell needs at least one data state");
    }
    std::optional<SweepRow> worst;
    double success = 0.0;
    for (std::size_t i = 0; i < data_states.size(); ++i) {
        const auto runs = run_protocol(cfg, data_states[i], Exhaustive{});
        const auto summary = summarize_success(runs);
        if (i == 0) {
            success = summary.total_probability;
        }
        for (const auto &r : runs) {
            if (!r.success) {
                continue;
            }
            SweepRow row = compare_run(r);
            if (!worst || row.max_abs_err > worst->max_abs_err) {
                worst = row;
            }
        }
    }
    if (!worst) {
        throw Error("no successful outcome in sweep cell");
    }
    worst->success_prob = success;
    return *worst;
}

struct MonteCarloEstimate {
    double frequency = 0.0;
    double standard_error = 0.0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
};

/// Success frequency over `trials` sampled runs sharing one seeded stream.
inline MonteCarloEstimate monte_carlo_success(const ProtocolConfig &cfg, const PureState &data, std::int64_t trials,
                                              std::uint64_t seed) {
    if (trials < 1) {
        throw Error("monte_carlo_success needs at least one trial");
    }
    Rng rng(seed);
    MonteCarloEstimate est;
    est.trials = trials;
    for (std::int64_t t = 0; t < trials; ++t) {
        if (run_protocol(cfg, data, rng).success) {
            ++est.successes;
        }
    }
    est.frequency = static_cast<double>(est.successes) / static_cast<double>(trials);
    est.standard_error = std::sqrt(est.frequency * (1.0 - est.frequency) / static_cast<double>(trials));
    return est;
}

} // namespace telegate
