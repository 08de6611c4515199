/**
 * @file cli.hpp
 * Command-line front end. `run_cli` takes argv-style arguments and explicit
 * output streams so the whole surface can be driven from tests.
 *
 * Exit codes: 0 success, 1 usage or input error, 2 a sampled run landed on
 * a failure branch (LOCC-only mode).
 */
#pragma once

#include "telegate/analysis.hpp"
#include "telegate/io.hpp"
#include "telegate/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace telegate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailureBranch = 2;

namespace detail {

inline std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

inline double parse_real(const std::string &text, const std::string &what) {
    const std::string t = trim(text);
    if (t.empty()) {
        throw Error("empty number in " + what);
    }
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw Error("cannot parse '" + t + "' in " + what);
    }
    return v;
}

} // namespace detail

/// Parses one amplitude: "0.6", "-1e-3", "0.8i", "-i", "0.6+0.8i", "1-2j".
inline cplx parse_complex(const std::string &token) {
    std::string t = detail::trim(token);
    if (t.empty()) {
        throw Error("empty amplitude");
    }
    const char last = t.back();
    if (last != 'i' && last != 'j') {
        return {detail::parse_real(t, "amplitude"), 0.0};
    }
    t.pop_back();
    // split at the last sign that is not an exponent sign or the leading one
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [](const std::string &s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return detail::parse_real(s, "imaginary part");
    };
    if (split == std::string::npos) {
        return {0.0, imag_part(t)};
    }
    return {detail::parse_real(t.substr(0, split), "real part"), imag_part(t.substr(split))};
}

inline std::vector<cplx> parse_amplitudes(const std::string &text) {
    std::vector<cplx> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        out.push_back(parse_complex(token));
    }
    if (!text.empty() && text.back() == ',') {
        throw Error("trailing comma in amplitudes");
    }
    if (out.empty()) {
        throw Error("no amplitudes given");
    }
    return out;
}

/// "start:stop:step" or a single value. Points are start + i*step, clipped
/// to stop so roundoff never leaves the requested range.
inline std::vector<double> parse_grid(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ':')) {
        parts.push_back(token);
    }
    if (parts.size() == 1) {
        return {detail::parse_real(parts[0], "grid")};
    }
    if (parts.size() != 3) {
        throw Error("grid must be start:stop:step or a single value");
    }
    const double start = detail::parse_real(parts[0], "grid");
    const double stop = detail::parse_real(parts[1], "grid");
    const double step = detail::parse_real(parts[2], "grid");
    if (!(step > 0.0) || stop < start) {
        throw Error("empty grid '" + text + "'");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    for (long i = 0; i < count; ++i) {
        grid.push_back(std::min(start + static_cast<double>(i) * step, stop));
    }
    return grid;
}

struct ProtocolFlags {
    std::string scheme = "processor";
    int dim = 2;
    double p = 0.5;
    double theta = 0.0;
    std::string completion = "locc";
    std::string data = "random";
    std::uint64_t seed = 0;

    void attach(CLI::App &cmd) {
        cmd.add_option("--scheme", scheme, "processor | local-gate")->capture_default_str();
        cmd.add_option("--d", dim, "dimension of each subsystem (even)")->capture_default_str();
        cmd.add_option("--p", p, "asymmetry parameter in [0, 1]")->capture_default_str();
        cmd.add_option("--theta", theta, "phase of U_theta")->capture_default_str();
        cmd.add_option("--completion", completion, "locc | nonlocal")->capture_default_str();
        cmd.add_option("--data", data, "'random' or comma-separated complex amplitudes")->capture_default_str();
        cmd.add_option("--seed", seed, "seed for sampling and random data")->capture_default_str();
    }

    [[nodiscard]] ProtocolConfig config() const {
        return ProtocolConfig::make(dim, p, theta, parse_scheme(scheme), parse_completion(completion));
    }

    PureState data_state(Rng &rng) const {
        if (data == "random") {
            return random_data_state(dim, rng);
        }
        return make_data_state(dim, parse_amplitudes(data), true);
    }
};

inline int cmd_run(const ProtocolFlags &flags, std::ostream &out) {
    const auto cfg = flags.config();
    Rng rng(flags.seed);
    const auto data = flags.data_state(rng);
    const auto run = run_protocol(cfg, data, rng);
    out << emit_record(make_record(run, outcome_distribution(cfg, data))) << '\n';
    return run.success ? kExitOk : kExitFailureBranch;
}

inline int cmd_enumerate(const ProtocolFlags &flags, std::ostream &out) {
    const auto cfg = flags.config();
    Rng rng(flags.seed);
    const auto data = flags.data_state(rng);
    out << kEnumerateHeader << '\n';
    for (const auto &run : run_protocol(cfg, data, Exhaustive{})) {
        out << enumerate_csv_row(run) << '\n';
    }
    return kExitOk;
}

struct SweepFlags {
    std::vector<int> dims{2};
    std::string scheme = "both";
    std::string p_grid = "0:1:0.1";
    std::string theta_grid = "0";
    int trials = 1;
    std::uint64_t seed = 0;
};

inline std::vector<SweepRow> sweep(const SweepFlags &flags) {
    if (flags.trials < 1) {
        throw Error("--trials must be at least 1");
    }
    std::vector<Scheme> schemes;
    if (flags.scheme == "both") {
        schemes = {Scheme::Processor, Scheme::LocalGate};
    } else {
        schemes = {parse_scheme(flags.scheme)};
    }
    const auto ps = parse_grid(flags.p_grid);
    const auto thetas = parse_grid(flags.theta_grid);
    if (flags.dims.empty()) {
        throw Error("empty dimension list");
    }
    std::vector<SweepRow> rows;
    for (int dim : flags.dims) {
        require_even_dim(dim);
        Rng rng(flags.seed);
        std::vector<PureState> data;
        for (int i = 0; i < flags.trials; ++i) {
            data.push_back(random_data_state(dim, rng));
        }
        for (double p : ps) {
            for (double theta : thetas) {
                for (auto scheme : schemes) {
                    rows.push_back(sweep_cell(ProtocolConfig::make(dim, p, theta, scheme), data));
                }
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.dim, a.p, a.theta, a.scheme) < std::tie(b.dim, b.p, b.theta, b.scheme);
    });
    return rows;
}

inline int cmd_sweep(const SweepFlags &flags, std::ostream &out) {
    const auto rows = sweep(flags);
    out << kSweepHeader << '\n';
    for (const auto &row : rows) {
        out << sweep_csv_row(row) << '\n';
    }
    return kExitOk;
}

inline int cmd_verify(const VerifyOptions &opts, std::ostream &out) {
    const auto results = run_invariant_suite(opts);
    std::size_t width = 0;
    for (const auto &r : results) {
        width = std::max(width, r.name.size());
    }
    int failures = 0;
    for (const auto &r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << r.name
            << "  value=" << csv_number(r.value) << "  threshold=" << csv_number(r.threshold) << '\n';
        failures += r.passed ? 0 : 1;
    }
    out << results.size() - static_cast<std::size_t>(failures) << "/" << results.size() << " checks passed\n";
    return failures == 0 ? kExitOk : kExitUsage;
}

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Two-output asymmetric quantum gate simulator"};
    app.name("telegate");
    app.require_subcommand(1);

    ProtocolFlags run_flags;
    auto *run = app.add_subcommand("run", "one sampled execution, printed as a JSON run record");
    run_flags.attach(*run);

    ProtocolFlags enum_flags;
    auto *enumerate = app.add_subcommand("enumerate", "all D^2 outcomes as CSV");
    enum_flags.attach(*enumerate);

    SweepFlags sweep_flags;
    auto *sweep_cmd = app.add_subcommand("sweep", "fidelity sweep over p and theta as CSV");
    sweep_cmd->add_option("--d", sweep_flags.dims, "dimension(s), comma-separated")->delimiter(',');
    sweep_cmd->add_option("--scheme", sweep_flags.scheme, "processor | local-gate | both")->capture_default_str();
    sweep_cmd->add_option("--p-grid", sweep_flags.p_grid, "start:stop:step")->capture_default_str();
    sweep_cmd->add_option("--theta-grid", sweep_flags.theta_grid, "start:stop:step or one value")
        ->capture_default_str();
    sweep_cmd->add_option("--trials", sweep_flags.trials, "random data states per cell")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_flags.seed, "seed for the data states")->capture_default_str();

    VerifyOptions verify_opts;
    double tolerance = 0.0;
    auto *verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--d-list", verify_opts.dims, "dimensions to check")->delimiter(',');
    auto *tol_opt = verify->add_option("--tolerance", tolerance, "override every numeric tolerance");
    verify->add_option("--seed", verify_opts.seed, "seed for random inputs")->capture_default_str();
    verify->add_option("--data-states", verify_opts.data_states, "random data states per grid cell")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) {
            return cmd_run(run_flags, out);
        }
        if (*enumerate) {
            return cmd_enumerate(enum_flags, out);
        }
        if (*sweep_cmd) {
            return cmd_sweep(sweep_flags, out);
        }
        if (*tol_opt) {
            verify_opts.tolerance = tolerance;
        }
        return cmd_verify(verify_opts, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

inline int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"telegate"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace telegate::cli
