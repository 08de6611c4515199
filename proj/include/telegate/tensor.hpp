/**
 * @file tensor.hpp
 * Dense state vectors, operators and density matrices over tensor products
 * of finite-dimensional subsystems.
 *
 * Indexing convention: the amplitude of |k_0 k_1 ... k_{s-1}> lives at flat
 * index sum_j k_j * prod_{l>j} dims[l]. The first subsystem is the most
 * significant digit. Every module in this library relies on it.
 */
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace telegate {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double kDefault = 1e-10;
inline constexpr double kOracle = 1e-12;
inline constexpr double kEigenFloor = -1e-10;
} // namespace tol

class Error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::size_t product(const std::vector<int> &dims) {
    std::size_t n = 1;
    for (int d : dims) {
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

inline std::vector<std::size_t> strides(const std::vector<int> &dims) {
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t j = dims.size(); j-- > 1;) {
        s[j - 1] = s[j] * static_cast<std::size_t>(dims[j]);
    }
    return s;
}

/// Flat offsets of every digit combination over `positions`, enumerated
/// with positions[0] as the most significant digit.
inline std::vector<std::size_t>
offsets(const std::vector<int> &dims, const std::vector<std::size_t> &positions) {
    const auto st = strides(dims);
    std::vector<std::size_t> out{0};
    for (std::size_t pos : positions) {
        std::vector<std::size_t> next;
        next.reserve(out.size() * static_cast<std::size_t>(dims[pos]));
        for (std::size_t base : out) {
            for (int k = 0; k < dims[pos]; ++k) {
                next.push_back(base + static_cast<std::size_t>(k) * st[pos]);
            }
        }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::size_t> complement(std::size_t n,
                                           const std::vector<std::size_t> &positions) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::find(positions.begin(), positions.end(), j) == positions.end()) {
            rest.push_back(j);
        }
    }
    return rest;
}

inline std::vector<std::size_t> resolve(const std::vector<std::string> &labels,
                                        const std::vector<std::string> &wanted) {
    std::vector<std::size_t> pos;
    pos.reserve(wanted.size());
    for (const auto &w : wanted) {
        auto it = std::find(labels.begin(), labels.end(), w);
        if (it == labels.end()) {
            throw Error("unknown subsystem label '" + w + "'");
        }
        auto p = static_cast<std::size_t>(it - labels.begin());
        if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
            throw Error("subsystem label '" + w + "' listed twice");
        }
        pos.push_back(p);
    }
    return pos;
}

inline void check_dims(const std::vector<int> &dims) {
    if (dims.empty()) {
        throw Error("at least one subsystem is required");
    }
    for (int d : dims) {
        if (d < 1) {
            throw Error("subsystem dimensions must be positive");
        }
    }
}

} // namespace detail

/// Normalized amplitude vector over labelled subsystems.
class PureState {
  public:
    /// Throws unless the vector has unit norm (within 1e-10). With
    /// `normalize` set, any nonzero vector is rescaled instead.
    PureState(CVector amplitudes, std::vector<int> dims, std::vector<std::string> labels,
              bool normalize = false)
        : amps_(std::move(amplitudes)), dims_(std::move(dims)), labels_(std::move(labels)) {
        detail::check_dims(dims_);
        if (labels_.size() != dims_.size()) {
            throw Error("one label per subsystem is required");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            for (std::size_t j = i + 1; j < labels_.size(); ++j) {
                if (labels_[i] == labels_[j]) {
                    throw Error("duplicate subsystem label '" + labels_[i] + "'");
                }
            }
        }
        if (static_cast<std::size_t>(amps_.size()) != detail::product(dims_)) {
            throw Error("amplitude count does not match the product of dimensions");
        }
        const double norm = amps_.norm();
        if (!std::isfinite(norm)) {
            throw Error("amplitudes must be finite");
        }
        if (normalize) {
            if (norm == 0.0) {
                throw Error("cannot normalize the zero vector");
            }
            amps_ /= norm;
        } else if (std::abs(norm - 1.0) > tol::kDefault) {
            throw Error("state is not normalized (norm " + std::to_string(norm) + ")");
        }
    }

    /// Computational basis ket |index>.
    static PureState basis(int dim, int index, std::string label) {
        if (index < 0 || index >= dim) {
            throw Error("basis index out of range");
        }
        CVector v = CVector::Zero(dim);
        v(index) = 1.0;
        return {std::move(v), {dim}, {std::move(label)}};
    }

    [[nodiscard]] const CVector &amplitudes() const { return amps_; }
    [[nodiscard]] const std::vector<int> &dims() const { return dims_; }
    [[nodiscard]] const std::vector<std::string> &labels() const { return labels_; }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    /// Same amplitudes, new labels.
    [[nodiscard]] PureState relabeled(std::vector<std::string> labels) const {
        return {amps_, dims_, std::move(labels)};
    }

  private:
    CVector amps_;
    std::vector<int> dims_;
    std::vector<std::string> labels_;
};

/// Square matrix on an ordered list of subsystem dimensions. Unitarity is
/// checked once at construction and remembered.
class Operator {
  public:
    Operator(CMatrix matrix, std::vector<int> dims) : mat_(std::move(matrix)), dims_(std::move(dims)) {
        detail::check_dims(dims_);
        const auto n = static_cast<Eigen::Index>(detail::product(dims_));
        if (mat_.rows() != n || mat_.cols() != n) {
            throw Error("operator matrix side does not match the product of dimensions");
        }
        unitary_ = (mat_.adjoint() * mat_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <=
                   tol::kDefault;
    }

    /// Like the constructor, but throws if the matrix is not unitary.
    static Operator unitary(CMatrix matrix, std::vector<int> dims) {
        Operator op(std::move(matrix), std::move(dims));
        if (!op.is_unitary()) {
            throw Error("operator is not unitary");
        }
        return op;
    }

    static Operator identity(std::vector<int> dims) {
        const auto n = static_cast<Eigen::Index>(detail::product(dims));
        return {CMatrix::Identity(n, n), std::move(dims)};
    }

    [[nodiscard]] const CMatrix &matrix() const { return mat_; }
    [[nodiscard]] const std::vector<int> &dims() const { return dims_; }
    [[nodiscard]] bool is_unitary() const { return unitary_; }

  private:
    CMatrix mat_;
    std::vector<int> dims_;
    bool unitary_ = false;
};

/// Kronecker product of operators; the result acts on concat(a.dims, b.dims).
inline Operator kron(const Operator &a, const Operator &b) {
    const CMatrix &A = a.matrix();
    const CMatrix &B = b.matrix();
    CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
        }
    }
    auto dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return {std::move(out), std::move(dims)};
}

/// Hermitian, trace-one, positive semidefinite matrix.
class DensityMatrix {
  public:
    DensityMatrix(CMatrix matrix, std::vector<int> dims) : mat_(std::move(matrix)), dims_(std::move(dims)) {
        detail::check_dims(dims_);
        const auto n = static_cast<Eigen::Index>(detail::product(dims_));
        if (mat_.rows() != n || mat_.cols() != n) {
            throw Error("density matrix side does not match the product of dimensions");
        }
        if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > tol::kDefault) {
            throw Error("density matrix is not Hermitian");
        }
        if (std::abs(mat_.trace() - cplx{1.0, 0.0}) > tol::kDefault) {
            throw Error("density matrix trace is not 1");
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> es(mat_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < tol::kEigenFloor) {
            throw Error("density matrix is not positive semidefinite");
        }
    }

    static DensityMatrix projector(const PureState &s) {
        return {s.amplitudes() * s.amplitudes().adjoint(), s.dims()};
    }

    [[nodiscard]] const CMatrix &matrix() const { return mat_; }
    [[nodiscard]] const std::vector<int> &dims() const { return dims_; }
    [[nodiscard]] cplx operator()(Eigen::Index r, Eigen::Index c) const { return mat_(r, c); }

  private:
    CMatrix mat_;
    std::vector<int> dims_;
};

inline PureState tensor_product(const PureState &a, const PureState &b) {
    CVector v(static_cast<Eigen::Index>(a.size() * b.size()));
    const auto nb = static_cast<Eigen::Index>(b.size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * nb, nb) = a.amplitudes()(i) * b.amplitudes();
    }
    auto dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    auto labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    return {std::move(v), std::move(dims), std::move(labels)};
}

/// Applies `op` to the subsystems named by `targets` (in operator order),
/// identity elsewhere. The operator must be verified unitary.
inline PureState apply_to_subsystems(const PureState &state, const Operator &op,
                                     const std::vector<std::string> &targets) {
    if (!op.is_unitary()) {
        throw Error("apply_to_subsystems requires a verified-unitary operator");
    }
    const auto pos = detail::resolve(state.labels(), targets);
    if (pos.size() != op.dims().size()) {
        throw Error("operator arity does not match the number of targets");
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (state.dims()[pos[i]] != op.dims()[i]) {
            throw Error("operator dimension does not match target '" + targets[i] + "'");
        }
    }
    const auto inner = detail::offsets(state.dims(), pos);
    const auto outer = detail::offsets(state.dims(), detail::complement(state.dims().size(), pos));
    const CMatrix &m = op.matrix();
    const CVector &in = state.amplitudes();
    CVector out(in.size());
    CVector gathered(static_cast<Eigen::Index>(inner.size()));
    for (std::size_t base : outer) {
        for (std::size_t c = 0; c < inner.size(); ++c) {
            gathered(static_cast<Eigen::Index>(c)) = in(static_cast<Eigen::Index>(base + inner[c]));
        }
        CVector mapped = m * gathered;
        for (std::size_t r = 0; r < inner.size(); ++r) {
            out(static_cast<Eigen::Index>(base + inner[r])) = mapped(static_cast<Eigen::Index>(r));
        }
    }
    return {std::move(out), state.dims(), state.labels(), true};
}

/// Reorders subsystems so that `order` (a permutation of the labels) becomes
/// the new label list.
inline PureState permute(const PureState &state, const std::vector<std::string> &order) {
    const auto pos = detail::resolve(state.labels(), order);
    if (pos.size() != state.labels().size()) {
        throw Error("permute needs every label exactly once");
    }
    const auto src = detail::offsets(state.dims(), pos);
    CVector out(state.amplitudes().size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = state[src[i]];
    }
    std::vector<int> dims;
    for (std::size_t p : pos) {
        dims.push_back(state.dims()[p]);
    }
    return {std::move(out), std::move(dims), order};
}

namespace detail {

inline std::vector<int> pick(const std::vector<int> &dims, const std::vector<std::size_t> &pos) {
    std::vector<int> out;
    for (std::size_t p : pos) {
        out.push_back(dims[p]);
    }
    return out;
}

inline void check_keep(const std::vector<std::string> &keep) {
    if (keep.empty()) {
        throw Error("partial_trace needs at least one subsystem to keep");
    }
}

} // namespace detail

/// Reduced state on `keep`, ordered as given.
inline DensityMatrix partial_trace(const PureState &state, const std::vector<std::string> &keep) {
    detail::check_keep(keep);
    const auto pos = detail::resolve(state.labels(), keep);
    const auto kept = detail::offsets(state.dims(), pos);
    const auto traced = detail::offsets(state.dims(), detail::complement(state.dims().size(), pos));
    // rows: kept index, cols: traced index; rho = M M^dagger
    CMatrix m(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(traced.size()));
    for (std::size_t r = 0; r < kept.size(); ++r) {
        for (std::size_t c = 0; c < traced.size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = state[kept[r] + traced[c]];
        }
    }
    return {m * m.adjoint(), detail::pick(state.dims(), pos)};
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, const std::vector<std::string> &labels,
                                   const std::vector<std::string> &keep) {
    detail::check_keep(keep);
    if (labels.size() != rho.dims().size()) {
        throw Error("one label per subsystem is required");
    }
    const auto pos = detail::resolve(labels, keep);
    const auto kept = detail::offsets(rho.dims(), pos);
    const auto traced = detail::offsets(rho.dims(), detail::complement(rho.dims().size(), pos));
    const auto n = static_cast<Eigen::Index>(kept.size());
    CMatrix out = CMatrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            cplx acc{0.0, 0.0};
            for (std::size_t t : traced) {
                acc += rho.matrix()(static_cast<Eigen::Index>(kept[static_cast<std::size_t>(a)] + t),
                                    static_cast<Eigen::Index>(kept[static_cast<std::size_t>(b)] + t));
            }
            out(a, b) = acc;
        }
    }
    return {std::move(out), detail::pick(rho.dims(), pos)};
}

/// <a|b>, conjugate-linear in a.
inline cplx inner_product(const PureState &a, const PureState &b) {
    if (a.dims() != b.dims()) {
        throw Error("inner_product: dimension mismatch");
    }
    return a.amplitudes().dot(b.amplitudes());
}

/// <target|rho|target>, clamped to [0, 1].
inline double fidelity_pure(const DensityMatrix &rho, const PureState &target) {
    if (rho.dims() != target.dims()) {
        throw Error("fidelity_pure: dimension mismatch");
    }
    const cplx f = target.amplitudes().dot(rho.matrix() * target.amplitudes());
    if (std::abs(f.imag()) > tol::kDefault || f.real() < -tol::kDefault || f.real() > 1.0 + tol::kDefault) {
        throw Error("fidelity_pure: overlap is not a probability");
    }
    return std::clamp(f.real(), 0.0, 1.0);
}

/// Largest elementwise modulus of a - b.
inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace telegate
