/**
 * @file protocol.hpp
 * The two-output probabilistic gate protocols.
 *
 * Processor: Peter measures (d, P) of |psi>_d (U_theta (x) I)|xi> in the
 * standard Bell basis. LocalGate: Peter measures (d, P) of |psi>_d |xi> in
 * the theta-tilted basis. Either way an outcome (0, n) leaves A, B, C in a
 * state that the product phase correction V_n maps to
 *
 *     |eta> = sum_k alpha_k exp[(-1)^k i theta] |phi_k>,
 *
 * whose single-receiver marginals are the asymmetric clones of U_theta|psi>.
 * Outcomes with m != 0 need the nonlocal completion W_{m,n}.
 */
#pragma once

#include "telegate/bell.hpp"
#include "telegate/states.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace telegate {

/// V^A (x) V^B (x) V^C. Kept as three factors so that locality is a
/// property of the type rather than of a matrix.
class LocalProductOperator {
  public:
    LocalProductOperator(Operator alice, Operator bob, Operator charlie)
        : factors_{std::move(alice), std::move(bob), std::move(charlie)} {
        for (const auto &f : factors_) {
            if (f.dims().size() != 1) {
                throw Error("local factors must act on a single subsystem");
            }
            if (!f.is_unitary()) {
                throw Error("local factors must be unitary");
            }
        }
    }

    [[nodiscard]] const std::vector<Operator> &factors() const { return factors_; }

    [[nodiscard]] Operator full() const { return kron(kron(factors_[0], factors_[1]), factors_[2]); }

    /// Applies each factor to its own party's subsystem.
    [[nodiscard]] PureState apply(const PureState &abc) const {
        PureState s = apply_to_subsystems(abc, factors_[0], {label::kAlice});
        s = apply_to_subsystems(s, factors_[1], {label::kBob});
        return apply_to_subsystems(s, factors_[2], {label::kCharlie});
    }

  private:
    std::vector<Operator> factors_;
};

inline Operator clock_phase(int dim, int n, int sign) {
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        m(j, j) = std::polar(1.0, sign * kTwoPi * j * n / dim);
    }
    return Operator::unitary(std::move(m), {dim});
}

/// V_n: exp(2 pi i j n / D) on A and B, the conjugate phase on C.
inline LocalProductOperator make_correction_vn(int dim, int n) {
    if (dim < 2) {
        throw Error("D must be at least 2");
    }
    if (n < 0 || n >= dim) {
        throw Error("V_n index out of range");
    }
    return {clock_phase(dim, n, +1), clock_phase(dim, n, +1), clock_phase(dim, n, -1)};
}

/// Phase acquired by |phi_j> under W_{m,n}: W|phi_j> = c_j |phi_{j-m}>.
inline cplx completion_phase(const ProtocolConfig &cfg, int m, int n, int j) {
    const int shifted = j - m;
    cplx c = std::polar(1.0, kTwoPi * mod(shifted, cfg.dim) * n / cfg.dim);
    if (cfg.scheme == Scheme::Processor) {
        c *= std::polar(1.0, (parity_sign(shifted) - parity_sign(j)) * cfg.theta);
    }
    return c;
}

/// Nonlocal unitary on (A, B, C) that rescues outcome (m, n), m != 0.
///
/// Acts as |phi_j> -> c_j |phi_{j-m mod D}> on span{|phi_j>} and as the
/// identity on its orthogonal complement: W = I + (T - Phi) Phi^dagger,
/// where Phi has the |phi_j> as columns and T the mapped images.
///
/// The Processor outcome carries exp[(-1)^{j} i theta] on |phi_j> (j = k+m)
/// while the tilted basis leaves exp[(-1)^{j-m} i theta]; c_j differs
/// accordingly.
inline Operator make_completion_w(const ProtocolConfig &cfg, int m, int n) {
    require_even_dim(cfg.dim);
    if (m == 0) {
        throw Error("outcome m = 0 is corrected locally by V_n");
    }
    if (m < 0 || m >= cfg.dim || n < 0 || n >= cfg.dim) {
        throw Error("completion index out of range");
    }
    const CMatrix phi = phi_columns(cfg.dim, cfg.p);
    const CMatrix gram = phi.adjoint() * phi;
    if (max_abs_diff(gram, CMatrix::Identity(cfg.dim, cfg.dim)) > tol::kDefault) {
        throw Error("phi family is not orthonormal; completion is undefined");
    }
    CMatrix images(phi.rows(), phi.cols());
    for (int j = 0; j < cfg.dim; ++j) {
        images.col(j) = completion_phase(cfg, m, n, j) * phi.col(mod(j - m, cfg.dim));
    }
    CMatrix w = CMatrix::Identity(phi.rows(), phi.rows()) + (images - phi) * phi.adjoint();
    return Operator::unitary(std::move(w), {cfg.dim, cfg.dim, cfg.dim});
}

/// Ideal shared output sum_k alpha_k exp[(-1)^k i theta] |phi_k>.
inline PureState make_eta(const ProtocolConfig &cfg, const PureState &data) {
    if (data.dims() != std::vector<int>{cfg.dim}) {
        throw Error("data state must be a single subsystem of dimension D");
    }
    const CMatrix phi = phi_columns(cfg.dim, cfg.p);
    CVector coeffs(cfg.dim);
    for (int k = 0; k < cfg.dim; ++k) {
        coeffs(k) = data[static_cast<std::size_t>(k)] * theta_phase(k, cfg.theta);
    }
    return {phi * coeffs, {cfg.dim, cfg.dim, cfg.dim}, {label::kAlice, label::kBob, label::kCharlie}};
}

/// Joint (d, P, A, B, C) input and the basis Peter measures in.
inline std::pair<PureState, BellBasis> protocol_input(const ProtocolConfig &cfg, const PureState &data) {
    require_even_dim(cfg.dim);
    require_asymmetry(cfg.p);
    if (data.dims() != std::vector<int>{cfg.dim}) {
        throw Error("data state must be a single subsystem of dimension D");
    }
    const PureState d = data.relabeled({label::kData});
    if (cfg.scheme == Scheme::Processor) {
        return {tensor_product(d, make_program_state(cfg)), BellBasis::standard(cfg.dim)};
    }
    return {tensor_product(d, make_xi(cfg.dim, cfg.p)), BellBasis::tilted(cfg.dim, cfg.theta)};
}

enum class CorrectionKind { None, PhaseV, CompletionW };

struct Correction {
    CorrectionKind kind = CorrectionKind::None;
    int m = 0;
    int n = 0;

    friend bool operator==(const Correction &, const Correction &) = default;
};

struct ProtocolRun {
    ProtocolConfig config;
    std::optional<std::uint64_t> seed; // empty for exhaustive enumeration
    std::vector<cplx> data;
    int m = 0;
    int n = 0;
    double raw_probability = 0.0;
    bool success = false;
    Correction correction;
    // Present only on successful runs.
    std::optional<PureState> final_state;
    std::optional<DensityMatrix> rho_a;
    std::optional<DensityMatrix> rho_b;
    std::optional<double> fidelity_a;
    std::optional<double> fidelity_b;
};

namespace detail {

inline ProtocolRun finish_run(const ProtocolConfig &cfg, const PureState &data, const PureState &target,
                              const MeasurementOutcome &o, std::optional<std::uint64_t> seed) {
    ProtocolRun run;
    run.config = cfg;
    run.seed = seed;
    run.data.assign(data.amplitudes().data(), data.amplitudes().data() + data.size());
    run.m = o.m;
    run.n = o.n;
    run.raw_probability = o.probability;
    if (!o.post_state) {
        return run;
    }
    if (o.m == 0) {
        run.correction = {CorrectionKind::PhaseV, 0, o.n};
        run.final_state = make_correction_vn(cfg.dim, o.n).apply(*o.post_state);
    } else if (cfg.completion == Completion::Nonlocal) {
        run.correction = {CorrectionKind::CompletionW, o.m, o.n};
        run.final_state = apply_to_subsystems(*o.post_state, make_completion_w(cfg, o.m, o.n),
                                              {label::kAlice, label::kBob, label::kCharlie});
    } else {
        return run;
    }
    run.success = true;
    const PureState lambda = target.relabeled({label::kAlice});
    run.rho_a = partial_trace(*run.final_state, {label::kAlice});
    run.rho_b = partial_trace(*run.final_state, {label::kBob});
    run.fidelity_a = fidelity_pure(*run.rho_a, lambda);
    run.fidelity_b = fidelity_pure(*run.rho_b, lambda);
    return run;
}

} // namespace detail

/// All D^2 outcomes, ordered by (m, n).
inline std::vector<ProtocolRun> run_protocol(const ProtocolConfig &cfg, const PureState &data, Exhaustive mode) {
    const auto [joint, basis] = protocol_input(cfg, data);
    const PureState target = make_target(cfg, data);
    std::vector<ProtocolRun> runs;
    for (const auto &o : measure_pair(joint, {label::kData, label::kPort}, basis, mode)) {
        runs.push_back(detail::finish_run(cfg, data, target, o, std::nullopt));
    }
    return runs;
}

/// One sampled execution drawing from `rng`; the record carries rng.seed().
inline ProtocolRun run_protocol(const ProtocolConfig &cfg, const PureState &data, Rng &rng) {
    const auto [joint, basis] = protocol_input(cfg, data);
    const auto o = measure_pair(joint, {label::kData, label::kPort}, basis, rng);
    return detail::finish_run(cfg, data, make_target(cfg, data), o, rng.seed());
}

inline ProtocolRun run_protocol(const ProtocolConfig &cfg, const PureState &data, std::uint64_t seed) {
    Rng rng(seed);
    return run_protocol(cfg, data, rng);
}

struct OutcomeProbability {
    int m = 0;
    int n = 0;
    double probability = 0.0;

    friend bool operator==(const OutcomeProbability &, const OutcomeProbability &) = default;
};

/// Born probabilities of Peter's D^2 outcomes, without any correction.
inline std::vector<OutcomeProbability> outcome_distribution(const ProtocolConfig &cfg, const PureState &data) {
    const auto [joint, basis] = protocol_input(cfg, data);
    std::vector<OutcomeProbability> out;
    for (const auto &o : measure_pair(joint, {label::kData, label::kPort}, basis, Exhaustive{})) {
        out.push_back({o.m, o.n, o.probability});
    }
    return out;
}

struct OutcomeSummary {
    double probability = 0.0;
    bool success = false;
};

struct SuccessSummary {
    double total_probability = 0.0;
    std::map<std::pair<int, int>, OutcomeSummary> per_outcome;
};

inline SuccessSummary summarize_success(const std::vector<ProtocolRun> &runs) {
    SuccessSummary s;
    for (const auto &r : runs) {
        s.per_outcome[{r.m, r.n}] = {r.raw_probability, r.success};
        if (r.success) {
            s.total_probability += r.raw_probability;
        }
    }
    return s;
}

} // namespace telegate
