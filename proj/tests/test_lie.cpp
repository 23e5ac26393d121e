#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/lie.hpp"

using namespace spinctrl;

namespace {

std::size_t dim_of(const SubspaceHamiltonian& h, ArithmeticMode mode = ArithmeticMode::floating) {
    ClosureOptions o;
    o.mode = mode;
    return lie_closure({h.h0, h.h1}, o).dimension;
}

Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

}  // namespace

TEST(Lie, SmallAlgebras) {
    Eigen::MatrixXd x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    EXPECT_EQ(lie_closure({x, z}).dimension, 3u);
    EXPECT_EQ(lie_closure({x, Eigen::MatrixXd::Identity(2, 2)}).dimension, 2u);
    EXPECT_EQ(lie_closure({x}).dimension, 1u);
    const auto v = verdict(lie_closure({x, z}), 2);
    EXPECT_TRUE(v.controllable);
    EXPECT_EQ(v.note, "dim = d^2 - 1, su(d)");
}

TEST(Lie, ChainExampleDimension) {
    const auto h = single_excitation(make_chain(7, Uniform{}, 0.0, {2}));
    EXPECT_EQ(dim_of(h), 36u);
    EXPECT_EQ(dim_of(h, ArithmeticMode::exact), 36u);
}

TEST(Lie, MatchesNaiveClosure) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> g(0.2, 2.0), k(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + trial % 6;
        std::vector<double> c(n - 1);
        for (auto& x : c) x = trial % 3 ? g(rng) : 1.0;
        const double kappa = trial % 4 ? k(rng) : 0.0;
        const auto h = single_excitation(make_chain(n, c, kappa, {1 + trial % n}));
        EXPECT_EQ(dim_of(h), oracle::naive_closure_dimension({h.h0, h.h1})) << "trial " << trial;
    }
}

TEST(Lie, FloatAndExactAgreeOnIntegerChains) {
    for (double kappa : {0.0, 1.0, -1.0}) {
        for (int n = 2; n <= 8; ++n) {
            for (int k = 1; k <= n; ++k) {
                const auto h = single_excitation(make_chain(n, Uniform{}, kappa, {k}));
                EXPECT_EQ(dim_of(h), dim_of(h, ArithmeticMode::exact)) << n << " " << k << " " << kappa;
            }
        }
    }
}

TEST(Lie, ExactRejectsIrrationalEntries) {
    const auto h = single_excitation(make_chain(3, std::vector<double>{1.0, std::sqrt(2.0)}, 0.0, {1}));
    ClosureOptions o;
    o.mode = ArithmeticMode::exact;
    try {
        lie_closure({h.h0, h.h1}, o);
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("irrational"), std::string::npos);
    }
}

TEST(Lie, ExactHandlesRationalEntries) {
    const auto h = single_excitation(make_chain(4, std::vector<double>{0.5, 1.25, 0.1}, 1.5, {1}));
    ClosureOptions o;
    o.mode = ArithmeticMode::exact;
    EXPECT_EQ(lie_closure({h.h0, h.h1}, o).dimension, 16u);
}

TEST(Lie, InvariantUnderConjugationShiftAndScale) {
    std::mt19937_64 rng(5);
    for (int n : {3, 4, 5, 7}) {
        for (int k = 1; k <= n; ++k) {
            const auto h = single_excitation(make_chain(n, Uniform{}, 0.0, {k}));
            const std::size_t base = dim_of(h);
            const Eigen::MatrixXd q = random_orthogonal(n, rng);
            EXPECT_EQ(lie_closure({q * h.h0 * q.transpose(), q * h.h1 * q.transpose()}).dimension, base);
            EXPECT_EQ(lie_closure({3.7 * h.h0, -0.2 * h.h1}).dimension, base);
            const Eigen::MatrixXd shifted = h.h0 + 0.9 * Eigen::MatrixXd::Identity(n, n);
            const long diff = static_cast<long>(lie_closure({shifted, h.h1}).dimension) - static_cast<long>(base);
            EXPECT_LE(std::abs(diff), 1);
        }
    }
}

TEST(Lie, MonotoneInGenerators) {
    const auto h = single_excitation(make_chain(6, Uniform{}, 0.0, {3}));
    Eigen::MatrixXd extra = Eigen::MatrixXd::Zero(6, 6);
    extra(0, 0) = 1.0;
    const auto small = lie_closure({h.h0, h.h1}).dimension;
    const auto large = lie_closure({h.h0, h.h1, extra}).dimension;
    EXPECT_GE(large, small);
    EXPECT_EQ(large, 36u);
}

TEST(Lie, DeterministicAndClosed) {
    const auto h = single_excitation(make_chain(7, Uniform{}, 0.0, {2}));
    const auto a = lie_closure({h.h0, h.h1});
    const auto b = lie_closure({h.h0, h.h1});
    ASSERT_EQ(a.basis.size(), b.basis.size());
    for (std::size_t i = 0; i < a.basis.size(); ++i) EXPECT_EQ(a.basis[i], b.basis[i]);
    EXPECT_LT(closure_defect(a), 1e-8);
    EXPECT_GT(a.min_accepted_residual, 1e3 * a.max_rejected_residual);
}

TEST(Lie, BasisElementsAreSkewHermitian) {
    const auto h = single_excitation(make_chain(5, std::vector<double>{1, 2, 3, 4}, 0.4, {2}));
    for (auto mode : {ArithmeticMode::floating, ArithmeticMode::exact}) {
        ClosureOptions o;
        o.mode = mode;
        const auto r = lie_closure({h.h0, h.h1}, o);
        for (const auto& v : r.basis) {
            const Eigen::MatrixXcd x = unflatten(v, 5);
            EXPECT_LT((x + x.adjoint()).norm(), 1e-12);
            EXPECT_NEAR(v.norm(), 1.0, 1e-12);
            EXPECT_LT((flatten(x) - v).norm(), 1e-15);
        }
    }
}

TEST(Lie, TwoExcitationFamily) {
    const auto base = second_excitation_chain(make_chain(5, Uniform{}, 0.0, {1}));
    const std::size_t expected[] = {81, 81, 100, 25};
    for (int l = 1; l <= 4; ++l) {
        Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(10, 10);
        for (int s = 0; s < l; ++s) h1(s, s) = 1.0;
        EXPECT_EQ(lie_closure({base.h0, h1}).dimension, expected[l - 1]) << l;
    }
}

TEST(Lie, InputValidation) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 1) = 1.0;
    EXPECT_THROW(lie_closure({a}), std::invalid_argument);
    EXPECT_THROW(lie_closure({}), std::invalid_argument);
    EXPECT_THROW(lie_closure({Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(3, 3)}),
                 std::invalid_argument);
    ClosureOptions o;
    o.max_matrix_size = 2;
    EXPECT_THROW(lie_closure({Eigen::MatrixXd::Identity(3, 3)}, o), std::length_error);
}
