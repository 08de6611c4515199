#include "support.hpp"

#include "telegate/protocol.hpp"
#include "telegate/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace telegate;
using telegate::testing::brute_partial_trace;
using telegate::testing::random_state;
using telegate::testing::random_unitary;

namespace {

PureState ket(std::initializer_list<cplx> amps, std::string label, bool normalize = false) {
    CVector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (auto a : amps) {
        v(i++) = a;
    }
    return {v, {static_cast<int>(amps.size())}, {std::move(label)}, normalize};
}

} // namespace

TEST(PureStateTest, RejectsBadConstruction) {
    EXPECT_THROW(PureState(CVector::Ones(3), {2}, {"x"}), Error);
    EXPECT_THROW(PureState(CVector::Ones(2), {2}, {"x"}), Error); // norm sqrt 2
    EXPECT_THROW(PureState(CVector::Zero(2), {2}, {"x"}, true), Error);
    EXPECT_THROW(PureState(CVector::Ones(4) / 2.0, {2, 2}, {"x", "x"}), Error);
    EXPECT_THROW(PureState(CVector::Ones(4) / 2.0, {2, 2}, {"x"}), Error);
    EXPECT_NO_THROW(PureState(CVector::Ones(2), {2}, {"x"}, true));
}

TEST(TensorProductTest, BasisKets) {
    const auto s = tensor_product(PureState::basis(2, 0, "a"), PureState::basis(2, 0, "b"));
    ASSERT_EQ(s.dims(), (std::vector<int>{2, 2}));
    EXPECT_EQ(s.labels(), (std::vector<std::string>{"a", "b"}));
    const std::vector<cplx> expect{1, 0, 0, 0};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(s[i], expect[i]);
    }
}

TEST(TensorProductTest, PlusTimesZeroFollowsIndexing) {
    const double r = 1.0 / std::sqrt(2.0);
    const auto s = tensor_product(ket({r, r}, "a"), PureState::basis(2, 0, "b"));
    const std::vector<cplx> expect{r, 0, r, 0};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(std::abs(s[i] - expect[i]), 0.0, 1e-15);
    }
}

TEST(TensorProductTest, PreservesNorm) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_state({3}, {"a"}, rng);
        const auto b = random_state({4}, {"b"}, rng);
        EXPECT_NEAR(tensor_product(a, b).amplitudes().norm(), 1.0, 1e-12);
    }
}

TEST(ApplyToSubsystemsTest, SigmaZOnZero) {
    CMatrix z = CMatrix::Identity(2, 2);
    z(1, 1) = -1.0;
    const auto out = apply_to_subsystems(PureState::basis(2, 0, "P"), Operator::unitary(z, {2}), {"P"});
    EXPECT_EQ(out[0], cplx(1.0));
    EXPECT_EQ(out[1], cplx(0.0));
}

TEST(ApplyToSubsystemsTest, UThetaHalfPiOnOne) {
    // diag(e^{i theta}, e^{-i theta}) at theta = pi/2 sends |1> to -i|1>
    CMatrix u = CMatrix::Zero(2, 2);
    u(0, 0) = std::polar(1.0, std::numbers::pi / 2);
    u(1, 1) = std::polar(1.0, -std::numbers::pi / 2);
    const auto out = apply_to_subsystems(PureState::basis(2, 1, "d"), Operator::unitary(u, {2}), {"d"});
    EXPECT_NEAR(std::abs(out[1] - cplx(0.0, -1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-15);
}

TEST(ApplyToSubsystemsTest, MatchesExplicitKroneckerOnReorderedTargets) {
    Rng rng(5);
    const auto s = random_state({2, 3, 2}, {"x", "y", "z"}, rng);
    const CMatrix u = random_unitary(4, rng);
    const Operator op = Operator::unitary(u, {2, 2});
    // op on (z, x): build I_y-embedded matrix by hand on basis kets
    const auto out = apply_to_subsystems(s, op, {"z", "x"});
    CVector expect = CVector::Zero(12);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 3; ++y) {
            for (int z = 0; z < 2; ++z) {
                const int col = z * 2 + x;
                for (int z2 = 0; z2 < 2; ++z2) {
                    for (int x2 = 0; x2 < 2; ++x2) {
                        const int row = z2 * 2 + x2;
                        expect(x2 * 6 + y * 2 + z2) += u(row, col) * s[static_cast<std::size_t>(x * 6 + y * 2 + z)];
                    }
                }
            }
        }
    }
    EXPECT_LE(max_abs_diff(out.amplitudes(), expect), 1e-12);
}

TEST(ApplyToSubsystemsTest, PreservesNormAndIdentityIsNoOp) {
    Rng rng(99);
    for (int t = 0; t < 10; ++t) {
        const auto s = random_state({2, 3, 4}, {"a", "b", "c"}, rng);
        const Operator u = Operator::unitary(random_unitary(12, rng), {3, 4});
        EXPECT_NEAR(apply_to_subsystems(s, u, {"b", "c"}).amplitudes().norm(), 1.0, 1e-12);
        const auto same = apply_to_subsystems(s, Operator::identity({2, 4}), {"a", "c"});
        EXPECT_LE(max_abs_diff(same.amplitudes(), s.amplitudes()), 1e-12);
    }
}

TEST(ApplyToSubsystemsTest, Errors) {
    const auto s = PureState::basis(2, 0, "P");
    EXPECT_THROW(apply_to_subsystems(s, Operator::identity({2}), {"Q"}), Error);
    EXPECT_THROW(apply_to_subsystems(s, Operator::identity({3}), {"P"}), Error);
    EXPECT_THROW(apply_to_subsystems(s, Operator(CMatrix::Ones(2, 2), {2}), {"P"}), Error);
}

TEST(PartialTraceTest, ProductState) {
    const auto s = tensor_product(PureState::basis(2, 0, "a"), PureState::basis(2, 0, "b"));
    const auto rho = partial_trace(s, {"a"});
    EXPECT_EQ(rho(0, 0), cplx(1.0));
    EXPECT_EQ(rho(1, 1), cplx(0.0));
}

TEST(PartialTraceTest, BellStateIsMaximallyMixed) {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v(4);
    v << r, 0, 0, r;
    const auto rho = partial_trace(PureState(v, {2, 2}, {"a", "b"}), {"a"});
    EXPECT_LE(max_abs_diff(rho.matrix(), CMatrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(PartialTraceTest, EtaAtSymmetricPointKeepA) {
    // (2p + (1-p)^2) / (2(1 - p + p^2)) at p = 1/2 with alpha = (1, 0)
    const auto cfg = ProtocolConfig::make(2, 0.5, 0.0);
    const auto eta = make_eta(cfg, make_data_state(2, {1.0, 0.0}));
    const auto rho = partial_trace(eta, {"A"});
    EXPECT_NEAR(rho(0, 0).real(), 1.25 / 1.5, 1e-12);
    EXPECT_NEAR(rho(1, 1).real(), 0.25 / 1.5, 1e-12);
}

TEST(PartialTraceTest, KeepAllReturnsProjector) {
    Rng rng(3);
    const auto s = random_state({3, 2, 2}, {"a", "b", "c"}, rng);
    const auto rho = partial_trace(s, {"a", "b", "c"});
    EXPECT_LE(max_abs_diff(rho.matrix(), s.amplitudes() * s.amplitudes().adjoint()), 1e-12);
}

TEST(PartialTraceTest, AgreesWithBruteForceOracle) {
    Rng rng(2718);
    const std::vector<std::vector<int>> shapes{{2, 2}, {2, 3}, {3, 3}, {2, 3, 2}, {3, 2, 3}, {3, 3, 3}};
    for (const auto &dims : shapes) {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            labels.push_back("s" + std::to_string(i));
        }
        const auto s = random_state(dims, labels, rng);
        // every nonempty subset, kept in increasing order and reversed
        const int count = static_cast<int>(dims.size());
        for (int mask = 1; mask < (1 << count); ++mask) {
            std::vector<int> keep;
            std::vector<std::string> keep_labels;
            for (int q = 0; q < count; ++q) {
                if (mask & (1 << q)) {
                    keep.push_back(q);
                    keep_labels.push_back(labels[static_cast<std::size_t>(q)]);
                }
            }
            for (int pass = 0; pass < 2; ++pass) {
                const auto rho = partial_trace(s, keep_labels);
                EXPECT_LE(max_abs_diff(rho.matrix(), brute_partial_trace(s.amplitudes(), dims, keep)), 1e-12);
                EXPECT_NEAR(std::abs(rho.matrix().trace() - 1.0), 0.0, 1e-10);
                std::reverse(keep.begin(), keep.end());
                std::reverse(keep_labels.begin(), keep_labels.end());
            }
        }
    }
}

TEST(PartialTraceTest, DensityMatrixInputMatchesPureInput) {
    Rng rng(8);
    const auto s = random_state({2, 3, 2}, {"a", "b", "c"}, rng);
    const auto full = DensityMatrix::projector(s);
    const auto from_rho = partial_trace(full, s.labels(), {"c", "a"});
    const auto from_psi = partial_trace(s, {"c", "a"});
    EXPECT_LE(max_abs_diff(from_rho.matrix(), from_psi.matrix()), 1e-12);
}

TEST(PartialTraceTest, Errors) {
    const auto s = tensor_product(PureState::basis(2, 0, "a"), PureState::basis(2, 0, "b"));
    EXPECT_THROW(partial_trace(s, {}), Error);
    EXPECT_THROW(partial_trace(s, {"q"}), Error);
}

TEST(InnerProductTest, Basics) {
    EXPECT_EQ(inner_product(PureState::basis(2, 0, "a"), PureState::basis(2, 1, "a")), cplx(0.0));
    Rng rng(1);
    const auto s = random_state({4}, {"a"}, rng);
    EXPECT_NEAR(std::abs(inner_product(s, s) - 1.0), 0.0, 1e-12);
    EXPECT_THROW(inner_product(PureState::basis(2, 0, "a"), PureState::basis(3, 0, "a")), Error);
}

TEST(InnerProductTest, ConjugatesFirstArgument) {
    const auto a = ket({cplx(0, 1), 0}, "a");
    const auto b = PureState::basis(2, 0, "a");
    EXPECT_EQ(inner_product(a, b), cplx(0, -1));
}

TEST(FidelityTest, Basics) {
    EXPECT_DOUBLE_EQ(fidelity_pure(DensityMatrix::projector(PureState::basis(2, 0, "a")), PureState::basis(2, 0, "a")),
                     1.0);
    const DensityMatrix mixed(CMatrix::Identity(2, 2) / 2.0, {2});
    Rng rng(17);
    for (int t = 0; t < 5; ++t) {
        EXPECT_NEAR(fidelity_pure(mixed, random_state({2}, {"a"}, rng)), 0.5, 1e-12);
    }
    EXPECT_THROW(fidelity_pure(mixed, PureState::basis(3, 0, "a")), Error);
}

TEST(FidelityTest, SymmetricCloneAgainstTarget) {
    const auto cfg = ProtocolConfig::make(2, 0.5, 1.3);
    const auto data = make_data_state(2, {0.6, cplx(0.0, 0.8)});
    const auto rho = partial_trace(make_eta(cfg, data), {"A"});
    EXPECT_NEAR(fidelity_pure(rho, make_target(cfg, data).relabeled({"A"})), 5.0 / 6.0, 1e-12);
}

TEST(DensityMatrixTest, RejectsInvalidMatrices) {
    CMatrix not_hermitian = CMatrix::Identity(2, 2) / 2.0;
    not_hermitian(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix(not_hermitian, {2}), Error);
    EXPECT_THROW(DensityMatrix(CMatrix::Identity(2, 2), {2}), Error);
    CMatrix negative = CMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix(negative, {2}), Error);
}

TEST(OperatorTest, RecordsUnitarity) {
    EXPECT_TRUE(Operator::identity({2, 3}).is_unitary());
    EXPECT_FALSE(Operator(CMatrix::Ones(2, 2), {2}).is_unitary());
    EXPECT_THROW(Operator::unitary(CMatrix::Ones(2, 2), {2}), Error);
    EXPECT_THROW(Operator(CMatrix::Identity(3, 3), {2}), Error);
}
