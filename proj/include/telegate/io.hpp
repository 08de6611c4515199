/**
 * @file io.hpp
 * Run records as JSON and result tables as CSV.
 *
 * RunRecord JSON layout:
 *
 *   {
 *     "config": {"D": 2, "p": 0.5, "theta": 0.0,
 *                "scheme": "processor" | "local-gate",
 *                "completion": "locc" | "nonlocal"},
 *     "seed": 7 | null,
 *     "data": [{"re": 1.0, "im": 0.0}, ...],
 *     "outcome": {"m": 0, "n": 1},
 *     "probability": 0.25,
 *     "success": true,
 *     "correction": {"kind": "none" | "V_n" | "W_mn", "m": 0, "n": 1},
 *     "F_A": 0.8333333333333334 | null,
 *     "F_B": 0.8333333333333334 | null,
 *     "probabilities": [{"m": 0, "n": 0, "probability": 0.25}, ...]
 *   }
 *
 * Doubles are written in shortest round-trip form, so parse(emit(x)) == x.
 */
#pragma once

#include "telegate/analysis.hpp"
#include "telegate/protocol.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace telegate {

struct RunRecord {
    ProtocolConfig config;
    std::optional<std::uint64_t> seed;
    std::vector<cplx> data;
    int m = 0;
    int n = 0;
    double probability = 0.0;
    bool success = false;
    Correction correction;
    std::optional<double> fidelity_a;
    std::optional<double> fidelity_b;
    std::vector<OutcomeProbability> probabilities;

    friend bool operator==(const RunRecord &a, const RunRecord &b) {
        return a.config.dim == b.config.dim && a.config.p == b.config.p && a.config.theta == b.config.theta &&
               a.config.scheme == b.config.scheme && a.config.completion == b.config.completion &&
               a.seed == b.seed && a.data == b.data && a.m == b.m && a.n == b.n &&
               a.probability == b.probability && a.success == b.success && a.correction == b.correction &&
               a.fidelity_a == b.fidelity_a && a.fidelity_b == b.fidelity_b && a.probabilities == b.probabilities;
    }
};

inline RunRecord make_record(const ProtocolRun &run, std::vector<OutcomeProbability> probabilities) {
    RunRecord r;
    r.config = run.config;
    r.seed = run.seed;
    r.data = run.data;
    r.m = run.m;
    r.n = run.n;
    r.probability = run.raw_probability;
    r.success = run.success;
    r.correction = run.correction;
    r.fidelity_a = run.fidelity_a;
    r.fidelity_b = run.fidelity_b;
    r.probabilities = std::move(probabilities);
    return r;
}

inline std::string to_string(Scheme s) { return s == Scheme::Processor ? "processor" : "local-gate"; }
inline std::string to_string(Completion c) { return c == Completion::LoccOnly ? "locc" : "nonlocal"; }

inline std::string to_string(CorrectionKind k) {
    switch (k) {
    case CorrectionKind::PhaseV:
        return "V_n";
    case CorrectionKind::CompletionW:
        return "W_mn";
    case CorrectionKind::None:
        break;
    }
    return "none";
}

inline Scheme parse_scheme(const std::string &s) {
    if (s == "processor") {
        return Scheme::Processor;
    }
    if (s == "local-gate") {
        return Scheme::LocalGate;
    }
    throw Error("unknown scheme '" + s + "'");
}

inline Completion parse_completion(const std::string &s) {
    if (s == "locc") {
        return Completion::LoccOnly;
    }
    if (s == "nonlocal") {
        return Completion::Nonlocal;
    }
    throw Error("unknown completion mode '" + s + "'");
}

inline CorrectionKind parse_correction_kind(const std::string &s) {
    if (s == "none") {
        return CorrectionKind::None;
    }
    if (s == "V_n") {
        return CorrectionKind::PhaseV;
    }
    if (s == "W_mn") {
        return CorrectionKind::CompletionW;
    }
    throw Error("unknown correction kind '" + s + "'");
}

namespace detail {

template <typename T> nlohmann::json optional_json(const std::optional<T> &v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T> std::optional<T> optional_from(const nlohmann::json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<T>();
}

} // namespace detail

inline nlohmann::json to_json(const RunRecord &r) {
    using nlohmann::json;
    json data = json::array();
    for (const auto &a : r.data) {
        data.push_back({{"re", a.real()}, {"im", a.imag()}});
    }
    json probs = json::array();
    for (const auto &o : r.probabilities) {
        probs.push_back({{"m", o.m}, {"n", o.n}, {"probability", o.probability}});
    }
    return {
        {"config",
         {{"D", r.config.dim},
          {"p", r.config.p},
          {"theta", r.config.theta},
          {"scheme", to_string(r.config.scheme)},
          {"completion", to_string(r.config.completion)}}},
        {"seed", detail::optional_json(r.seed)},
        {"data", std::move(data)},
        {"outcome", {{"m", r.m}, {"n", r.n}}},
        {"probability", r.probability},
        {"success", r.success},
        {"correction", {{"kind", to_string(r.correction.kind)}, {"m", r.correction.m}, {"n", r.correction.n}}},
        {"F_A", detail::optional_json(r.fidelity_a)},
        {"F_B", detail::optional_json(r.fidelity_b)},
        {"probabilities", std::move(probs)},
    };
}

inline RunRecord record_from_json(const nlohmann::json &j) {
    RunRecord r;
    try {
        const auto &c = j.at("config");
        r.config.dim = c.at("D").get<int>();
        r.config.p = c.at("p").get<double>();
        r.config.theta = c.at("theta").get<double>();
        r.config.scheme = parse_scheme(c.at("scheme").get<std::string>());
        r.config.completion = parse_completion(c.at("completion").get<std::string>());
        r.seed = detail::optional_from<std::uint64_t>(j.at("seed"));
        for (const auto &a : j.at("data")) {
            r.data.emplace_back(a.at("re").get<double>(), a.at("im").get<double>());
        }
        r.m = j.at("outcome").at("m").get<int>();
        r.n = j.at("outcome").at("n").get<int>();
        r.probability = j.at("probability").get<double>();
        r.success = j.at("success").get<bool>();
        const auto &corr = j.at("correction");
        r.correction = {parse_correction_kind(corr.at("kind").get<std::string>()), corr.at("m").get<int>(),
                        corr.at("n").get<int>()};
        r.fidelity_a = detail::optional_from<double>(j.at("F_A"));
        r.fidelity_b = detail::optional_from<double>(j.at("F_B"));
        for (const auto &o : j.at("probabilities")) {
            r.probabilities.push_back(
                {o.at("m").get<int>(), o.at("n").get<int>(), o.at("probability").get<double>()});
        }
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("malformed run record: ") + e.what());
    }
    return r;
}

inline std::string emit_record(const RunRecord &r) { return to_json(r).dump(2); }

inline RunRecord parse_record(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(std::string("run record is not valid JSON: ") + e.what());
    }
    return record_from_json(j);
}

/// 17 significant digits; enough to round-trip any double.
inline std::string csv_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline constexpr const char *kEnumerateHeader = "m,n,probability,success,F_A,F_B";

inline std::string enumerate_csv_row(const ProtocolRun &run) {
    std::string line = std::to_string(run.m) + "," + std::to_string(run.n) + "," + csv_number(run.raw_probability) +
                       "," + (run.success ? "true" : "false") + ",";
    if (run.fidelity_a) {
        line += csv_number(*run.fidelity_a);
    }
    line += ",";
    if (run.fidelity_b) {
        line += csv_number(*run.fidelity_b);
    }
    return line;
}

inline constexpr const char *kSweepHeader =
    "D,p,theta,scheme,F_A_sim,F_B_sim,F_A_closed,F_B_closed,success_prob,max_abs_err";

inline std::string sweep_csv_row(const SweepRow &row) {
    return std::to_string(row.dim) + "," + csv_number(row.p) + "," + csv_number(row.theta) + "," +
           to_string(row.scheme) + "," + csv_number(row.fidelity_a_sim) + "," + csv_number(row.fidelity_b_sim) +
           "," + csv_number(row.fidelity_a_closed) + "," + csv_number(row.fidelity_b_closed) + "," +
           csv_number(row.success_prob) + "," + csv_number(row.max_abs_err);
}

} // namespace telegate
