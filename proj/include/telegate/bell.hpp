/**
 * @file bell.hpp
 * Generalized Bell bases on two quDits and projective measurement of a
 * labelled pair inside a larger joint state.
 */
#pragma once

#include "telegate/random.hpp"
#include "telegate/states.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace telegate {

enum class BellVariant { Standard, ThetaTilted };

/// D^2 maximally entangled states Phi_{m,n}, stored row-major in (m, n).
///
/// Standard:     Phi_{m,n} = D^{-1/2} sum_k exp(2 pi i k n / D) |k>|k+m>
/// ThetaTilted:  same with an extra exp[(-1)^{k+1} i theta] on each term,
///               which folds U_theta into the measurement.
class BellBasis {
  public:
    BellBasis(int dim, BellVariant variant, double theta = 0.0)
        : dim_(dim), variant_(variant), theta_(variant == BellVariant::Standard ? 0.0 : theta) {
        if (dim < 2) {
            throw Error("Bell basis needs D >= 2");
        }
        const auto n = static_cast<Eigen::Index>(dim) * dim;
        columns_ = CMatrix::Zero(n, n);
        const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
        for (int m = 0; m < dim; ++m) {
            for (int nn = 0; nn < dim; ++nn) {
                for (int k = 0; k < dim; ++k) {
                    cplx c = std::polar(amp, kTwoPi * k * nn / dim);
                    if (variant_ == BellVariant::ThetaTilted) {
                        c *= theta_phase(k + 1, theta_);
                    }
                    columns_(k * dim + mod(k + m, dim), index(m, nn)) = c;
                }
            }
        }
    }

    static BellBasis standard(int dim) { return {dim, BellVariant::Standard}; }
    static BellBasis tilted(int dim, double theta) { return {dim, BellVariant::ThetaTilted, theta}; }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] BellVariant variant() const { return variant_; }
    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] Eigen::Index index(int m, int n) const { return static_cast<Eigen::Index>(m) * dim_ + n; }

    /// Column (m*D + n) holds Phi_{m,n} over |k>|l> with flat index k*D + l.
    [[nodiscard]] const CMatrix &columns() const { return columns_; }

    [[nodiscard]] PureState state(int m, int n, std::string first = label::kData,
                                  std::string second = label::kPort) const {
        if (m < 0 || m >= dim_ || n < 0 || n >= dim_) {
            throw Error("Bell index out of range");
        }
        return {columns_.col(index(m, n)), {dim_, dim_}, {std::move(first), std::move(second)}};
    }

  private:
    int dim_;
    BellVariant variant_;
    double theta_;
    CMatrix columns_;
};

inline constexpr double kZeroProbability = 1e-14;

struct MeasurementOutcome {
    int m = 0;
    int n = 0;
    double probability = 0.0;
    /// Normalized state of the unmeasured subsystems; empty when the outcome
    /// has probability below kZeroProbability.
    std::optional<PureState> post_state;
};

struct Exhaustive {};

namespace detail {

struct Projected {
    CMatrix rows; // row (m*D+n): unnormalized post-state, sqrt(prob) scaled
    std::vector<int> rest_dims;
    std::vector<std::string> rest_labels;
};

inline Projected project_pair(const PureState &joint, const std::pair<std::string, std::string> &pair,
                              const BellBasis &basis) {
    const auto pos = resolve(joint.labels(), {pair.first, pair.second});
    if (joint.dims()[pos[0]] != basis.dim() || joint.dims()[pos[1]] != basis.dim()) {
        throw Error("Bell basis dimension does not match the measured pair");
    }
    const auto rest = complement(joint.dims().size(), pos);
    std::vector<std::string> order{pair.first, pair.second};
    Projected out;
    for (std::size_t r : rest) {
        order.push_back(joint.labels()[r]);
        out.rest_labels.push_back(joint.labels()[r]);
        out.rest_dims.push_back(joint.dims()[r]);
    }
    const PureState arranged = permute(joint, order);
    const auto pair_size = static_cast<Eigen::Index>(basis.dim()) * basis.dim();
    const Eigen::Index rest_size = arranged.amplitudes().size() / pair_size;
    // row-major reshape: (pair index) x (rest index)
    CMatrix grid(pair_size, rest_size);
    for (Eigen::Index a = 0; a < pair_size; ++a) {
        grid.row(a) = arranged.amplitudes().segment(a * rest_size, rest_size).transpose();
    }
    out.rows = basis.columns().adjoint() * grid;
    return out;
}

inline MeasurementOutcome outcome_from_row(const Projected &proj, const BellBasis &basis, Eigen::Index row) {
    MeasurementOutcome o;
    o.m = static_cast<int>(row / basis.dim());
    o.n = static_cast<int>(row % basis.dim());
    CVector v = proj.rows.row(row).transpose();
    o.probability = v.squaredNorm();
    if (o.probability >= kZeroProbability) {
        if (proj.rest_dims.empty()) {
            throw Error("measuring every subsystem leaves no post-measurement state");
        }
        o.post_state.emplace(v / std::sqrt(o.probability), proj.rest_dims, proj.rest_labels);
    }
    return o;
}

} // namespace detail

/// Every outcome (m, n) in row-major order with its probability and post-state.
inline std::vector<MeasurementOutcome> measure_pair(const PureState &joint,
                                                    const std::pair<std::string, std::string> &pair,
                                                    const BellBasis &basis, Exhaustive /*mode*/) {
    const auto proj = detail::project_pair(joint, pair, basis);
    std::vector<MeasurementOutcome> out;
    out.reserve(static_cast<std::size_t>(proj.rows.rows()));
    for (Eigen::Index r = 0; r < proj.rows.rows(); ++r) {
        out.push_back(detail::outcome_from_row(proj, basis, r));
    }
    return out;
}

/// One outcome drawn from the Born distribution.
inline MeasurementOutcome measure_pair(const PureState &joint, const std::pair<std::string, std::string> &pair,
                                       const BellBasis &basis, Rng &rng) {
    const auto proj = detail::project_pair(joint, pair, basis);
    const Eigen::VectorXd probs = proj.rows.rowwise().squaredNorm();
    const double u = rng.uniform() * probs.sum();
    double acc = 0.0;
    Eigen::Index pick = probs.size() - 1;
    for (Eigen::Index r = 0; r < probs.size(); ++r) {
        acc += probs(r);
        if (u < acc) {
            pick = r;
            break;
        }
    }
    // roundoff can leave u just past the last nonzero bin
    while (probs(pick) < kZeroProbability && pick > 0) {
        --pick;
    }
    return detail::outcome_from_row(proj, basis, pick);
}

} // namespace telegate
