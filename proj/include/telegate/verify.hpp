/**
 * @file verify.hpp
 * Self-check suite over every module's invariants, used by `telegate verify`.
 *
 * Each check reduces to one number compared against a threshold. Numeric
 * tolerances can be overridden in one go; statistical and strict-inequality
 * checks keep their own thresholds.
 */
#pragma once

#include "telegate/analysis.hpp"
#include "telegate/bell.hpp"
#include "telegate/protocol.hpp"
#include "telegate/random.hpp"
#include "telegate/states.hpp"

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace telegate {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct VerifyOptions {
    std::vector<int> dims{2, 4, 6};
    std::optional<double> tolerance; // overrides every numeric tolerance
    std::uint64_t seed = 20240601;
    int data_states = 3;
    std::int64_t sample_draws = 20000;
};

class VerifySuite {
  public:
    explicit VerifySuite(VerifyOptions opts) : opts_(std::move(opts)), rng_(opts_.seed) {
        for (int d : opts_.dims) {
            require_even_dim(d);
        }
        if (opts_.data_states < 1) {
            throw Error("verify needs at least one data state");
        }
    }

    std::vector<CheckResult> run() {
        results_.clear();
        tensor_checks();
        for (int dim : opts_.dims) {
            state_checks(dim);
            bell_checks(dim);
            protocol_checks(dim);
            analysis_checks(dim);
        }
        closed_form_checks();
        sampling_checks();
        return results_;
    }

  private:
    static constexpr double kThetas[] = {0.0, 0.7, std::numbers::pi, 5.5};

    void numeric(std::string name, double value, double tol) {
        const double t = opts_.tolerance.value_or(tol);
        results_.push_back({std::move(name), value, t, value <= t});
    }

    void fixed(std::string name, double value, double threshold) {
        results_.push_back({std::move(name), value, threshold, value <= threshold});
    }

    std::string tag(const std::string &what, int dim) { return what + " [D=" + std::to_string(dim) + "]"; }

    PureState random_state(std::vector<int> dims, std::vector<std::string> labels) {
        std::size_t n = 1;
        for (int d : dims) {
            n *= static_cast<std::size_t>(d);
        }
        CVector v(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double re = rng_.normal();
            v(i) = {re, rng_.normal()};
        }
        return {std::move(v), std::move(dims), std::move(labels), true};
    }

    void tensor_checks() {
        double norm_err = 0.0;
        double keep_all = 0.0;
        double trace_err = 0.0;
        double identity = 0.0;
        for (int t = 0; t < 5; ++t) {
            const auto a = random_state({3}, {"a"});
            const auto b = random_state({2, 4}, {"b", "c"});
            const auto ab = tensor_product(a, b);
            norm_err = std::max(norm_err, std::abs(ab.amplitudes().norm() - 1.0));
            keep_all = std::max(keep_all, max_abs_diff(partial_trace(ab, {"a", "b", "c"}).matrix(),
                                                       ab.amplitudes() * ab.amplitudes().adjoint()));
            for (const auto &keep : std::vector<std::vector<std::string>>{{"a"}, {"c", "a"}, {"b"}}) {
                trace_err = std::max(trace_err, std::abs(partial_trace(ab, keep).matrix().trace() - 1.0));
            }
            identity = std::max(identity, max_abs_diff(apply_to_subsystems(ab, Operator::identity({4, 3}), {"c", "a"})
                                                           .amplitudes(),
                                                       ab.amplitudes()));
        }
        numeric("tensor: product state norm", norm_err, tol::kDefault);
        numeric("tensor: partial trace keeping all = projector", keep_all, tol::kOracle);
        numeric("tensor: reduced trace = 1", trace_err, tol::kDefault);
        numeric("tensor: identity operator is a no-op", identity, tol::kOracle);
    }

    void state_checks(int dim) {
        double gram = 0.0;
        for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const CMatrix cols = phi_columns(dim, p);
            gram = std::max(gram, max_abs_diff(cols.adjoint() * cols, CMatrix::Identity(dim, dim)));
        }
        numeric(tag("states: phi_j Gram matrix = I", dim), gram, tol::kOracle);

        double hs = 0.0;
        for (int m = 0; m < dim; ++m) {
            for (int n = 0; n < dim; ++n) {
                const CMatrix u = make_u_mn(dim, m, n).matrix();
                for (int m2 = 0; m2 < dim; ++m2) {
                    for (int n2 = 0; n2 < dim; ++n2) {
                        const cplx tr = (u.adjoint() * make_u_mn(dim, m2, n2).matrix()).trace();
                        hs = std::max(hs, std::abs(tr - ((m == m2 && n == n2) ? double(dim) : 0.0)));
                    }
                }
            }
        }
        numeric(tag("states: U^(mn) Hilbert-Schmidt orthogonality", dim), hs, tol::kDefault);

        double decomposition = 0.0;
        for (double t : kThetas) {
            const CMatrix built = std::cos(t) * CMatrix::Identity(dim, dim) +
                                  cplx(0.0, std::sin(t)) * make_u_mn(dim, dim / 2, 0).matrix();
            decomposition = std::max(decomposition, max_abs_diff(built, make_u_theta(dim, t).matrix()));
        }
        numeric(tag("states: U_theta = cos I + i sin U^(D/2,0)", dim), decomposition, tol::kOracle);

        double marginal = 0.0;
        for (double p : {0.1, 0.5, 0.9}) {
            const auto rho = partial_trace(make_xi(dim, p), {label::kPort});
            marginal = std::max(marginal, max_abs_diff(rho.matrix(), CMatrix::Identity(dim, dim) / double(dim)));
        }
        numeric(tag("states: xi port marginal = I/D", dim), marginal, tol::kDefault);
    }

    void bell_checks(int dim) {
        double ortho = 0.0;
        double complete = 0.0;
        std::vector<BellBasis> bases{BellBasis::standard(dim)};
        for (double t : {0.0, 0.7, std::numbers::pi}) {
            bases.push_back(BellBasis::tilted(dim, t));
        }
        for (const auto &b : bases) {
            const CMatrix &c = b.columns();
            const auto n = c.cols();
            ortho = std::max(ortho, max_abs_diff(c.adjoint() * c, CMatrix::Identity(n, n)));
            complete = std::max(complete, max_abs_diff(c * c.adjoint(), CMatrix::Identity(n, n)));
        }
        numeric(tag("bell: bases orthonormal", dim), ortho, tol::kOracle);
        numeric(tag("bell: bases resolve the identity", dim), complete, tol::kDefault);

        double uniform = 0.0;
        double post = 0.0;
        const CMatrix phi = phi_columns(dim, 0.3);
        for (auto scheme : {Scheme::Processor, Scheme::LocalGate}) {
            for (double t : kThetas) {
                const auto cfg = ProtocolConfig::make(dim, 0.3, t, scheme);
                const auto data = random_data_state(dim, rng_);
                const auto [joint, basis] = protocol_input(cfg, data);
                const auto outcomes = measure_pair(joint, {label::kData, label::kPort}, basis, Exhaustive{});
                for (const auto &o : outcomes) {
                    uniform = std::max(uniform, std::abs(o.probability - 1.0 / (dim * dim)));
                    if (o.m != 0) {
                        continue;
                    }
                    CVector expect = CVector::Zero(phi.rows());
                    for (int k = 0; k < dim; ++k) {
                        expect += data[static_cast<std::size_t>(k)] * theta_phase(k, cfg.theta) *
                                  std::polar(1.0, -kTwoPi * k * o.n / dim) * phi.col(k);
                    }
                    post = std::max(post, max_abs_diff(o.post_state->amplitudes(), expect));
                }
            }
        }
        numeric(tag("bell: protocol outcomes uniform 1/D^2", dim), uniform, tol::kDefault);
        numeric(tag("bell: (0,n) post-state formula", dim), post, tol::kDefault);
    }

    void protocol_checks(int dim) {
        double locc = 0.0;
        double nonlocal = 0.0;
        double vn = 0.0;
        double w_recovery = 0.0;
        double w_unitary = 0.0;
        double scheme_rho = 0.0;
        double failure_best = 0.0;
        for (double t : {0.0, 1.1}) {
            const auto data = random_data_state(dim, rng_);
            std::vector<std::vector<ProtocolRun>> per_scheme;
            for (auto scheme : {Scheme::Processor, Scheme::LocalGate}) {
                const auto cfg = ProtocolConfig::make(dim, 0.3, t, scheme);
                auto runs = run_protocol(cfg, data, Exhaustive{});
                locc = std::max(locc, std::abs(summarize_success(runs).total_probability - 1.0 / dim));
                per_scheme.push_back(std::move(runs));

                auto full = cfg;
                full.completion = Completion::Nonlocal;
                nonlocal = std::max(nonlocal,
                                    std::abs(summarize_success(run_protocol(full, data, Exhaustive{})).total_probability -
                                             1.0));

                const auto eta = make_eta(cfg, data);
                const auto [joint, basis] = protocol_input(cfg, data);
                for (const auto &o : measure_pair(joint, {label::kData, label::kPort}, basis, Exhaustive{})) {
                    if (o.m == 0) {
                        vn = std::max(vn, max_abs_diff(make_correction_vn(dim, o.n).apply(*o.post_state).amplitudes(),
                                                       eta.amplitudes()));
                        continue;
                    }
                    const auto w = make_completion_w(cfg, o.m, o.n);
                    const auto side = w.matrix().rows();
                    w_unitary = std::max(w_unitary, max_abs_diff(w.matrix().adjoint() * w.matrix(),
                                                                 CMatrix::Identity(side, side)));
                    const auto fixed = apply_to_subsystems(*o.post_state, w, {label::kAlice, label::kBob, label::kCharlie});
                    w_recovery = std::max(w_recovery, std::abs(std::abs(inner_product(fixed, eta)) - 1.0));
                    for (int n = 0; n < dim; ++n) {
                        failure_best = std::max(
                            failure_best,
                            std::abs(inner_product(make_correction_vn(dim, n).apply(*o.post_state), eta)));
                    }
                }
            }
            for (std::size_t i = 0; i < per_scheme[0].size(); ++i) {
                const auto &a = per_scheme[0][i];
                const auto &b = per_scheme[1][i];
                if (a.success && b.success) {
                    scheme_rho = std::max({scheme_rho, max_abs_diff(a.rho_a->matrix(), b.rho_a->matrix()),
                                           max_abs_diff(a.rho_b->matrix(), b.rho_b->matrix())});
                }
            }
        }
        numeric(tag("protocol: LOCC success probability = 1/D", dim), locc, tol::kOracle);
        numeric(tag("protocol: nonlocal success probability = 1", dim), nonlocal, tol::kOracle);
        numeric(tag("protocol: V_n maps (0,n) output to eta", dim), vn, tol::kDefault);
        numeric(tag("protocol: W_mn unitary", dim), w_unitary, tol::kDefault);
        numeric(tag("protocol: W_mn maps (m,n) output to eta", dim), w_recovery, tol::kDefault);
        numeric(tag("protocol: schemes give identical rho_A, rho_B", dim), scheme_rho, tol::kDefault);
        fixed(tag("protocol: no V_n repairs an m != 0 outcome (max overlap)", dim), failure_best, 1.0 - 1e-6);
    }

    void analysis_checks(int dim) {
        double fid = 0.0;
        double rho = 0.0;
        double theta_spread = 0.0;
        for (double p = 0.0; p <= 1.0 + 1e-12; p += 0.25) {
            std::vector<PureState> data;
            for (int i = 0; i < opts_.data_states; ++i) {
                data.push_back(random_data_state(dim, rng_));
            }
            std::optional<double> first;
            for (double t : kThetas) {
                for (auto scheme : {Scheme::Processor, Scheme::LocalGate}) {
                    const auto cfg = ProtocolConfig::make(dim, std::min(p, 1.0), t, scheme);
                    for (const auto &d : data) {
                        for (const auto &r : run_protocol(cfg, d, Exhaustive{})) {
                            if (!r.success) {
                                continue;
                            }
                            const auto row = compare_run(r);
                            fid = std::max({fid, std::abs(row.fidelity_a_sim - row.fidelity_a_closed),
                                            std::abs(row.fidelity_b_sim - row.fidelity_b_closed)});
                            rho = std::max(rho, row.max_abs_err);
                            if (!first) {
                                first = row.fidelity_a_sim;
                            }
                            theta_spread = std::max(theta_spread, std::abs(row.fidelity_a_sim - *first));
                        }
                    }
                }
            }
        }
        numeric(tag("analysis: simulated fidelities = closed form", dim), fid, tol::kDefault);
        numeric(tag("analysis: simulated rho = closed-form rho", dim), rho, tol::kDefault);
        numeric(tag("analysis: F_A independent of theta and data", dim), theta_spread, tol::kDefault);

        double swap = 0.0;
        double rho_swap = 0.0;
        for (int i = 0; i <= 10; ++i) {
            const double p = i / 10.0;
            const auto f = closed_form_fidelities(dim, p);
            const auto g = closed_form_fidelities(dim, 1.0 - p);
            swap = std::max(swap, std::abs(f.fidelity_a - g.fidelity_b));
            const auto data = random_data_state(dim, rng_);
            std::vector<cplx> alphas(data.amplitudes().data(), data.amplitudes().data() + dim);
            rho_swap = std::max(rho_swap, max_abs_diff(reference_rho(dim, p, 0.9, alphas, Receiver::Alice).matrix(),
                                                       reference_rho(dim, 1.0 - p, 0.9, alphas, Receiver::Bob).matrix()));
        }
        numeric(tag("analysis: F_A(p) = F_B(1-p)", dim), swap, tol::kOracle);
        numeric(tag("analysis: rho_A(p) = rho_B(1-p)", dim), rho_swap, tol::kOracle);
    }

    void closed_form_checks() {
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            const auto f = closed_form_fidelities(2, p);
            const double qubit_a = (1.0 + p * p) / (2.0 * (1.0 - p + p * p));
            const double qubit_b = (2.0 - 2.0 * p + p * p) / (2.0 * (1.0 - p + p * p));
            worst = std::max({worst, std::abs(f.fidelity_a - qubit_a), std::abs(f.fidelity_b - qubit_b)});
        }
        numeric("analysis: D=2 closed form equals qubit formula", worst, 1e-14);
    }

    void sampling_checks() {
        for (int dim : opts_.dims) {
            if (dim > 4) {
                continue;
            }
            const auto cfg = ProtocolConfig::make(dim, 0.5, 0.4);
            const auto data = random_data_state(dim, rng_);
            const auto est = monte_carlo_success(cfg, data, opts_.sample_draws, opts_.seed + dim);
            const double expect = 1.0 / dim;
            const double se = std::sqrt(expect * (1.0 - expect) / static_cast<double>(opts_.sample_draws));
            fixed(tag("sampling: success frequency within 4 standard errors (z-score)", dim),
                  std::abs(est.frequency - expect) / se, 4.0);
        }
    }

    VerifyOptions opts_;
    Rng rng_;
    std::vector<CheckResult> results_;
};

inline std::vector<CheckResult> run_invariant_suite(VerifyOptions opts) { return VerifySuite(std::move(opts)).run(); }

} // namespace telegate
