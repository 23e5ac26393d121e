#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/lie.hpp"
#include "spinctrl/symmetry.hpp"

using namespace spinctrl;

namespace {

SubspaceHamiltonian chain(int n, int k, double kappa = 0.0) {
    return single_excitation(make_chain(n, Uniform{}, kappa, {k}));
}

}  // namespace

TEST(Commutant, ChainExample) {
    const auto h = chain(7, 2);
    const auto c = commutant(h.h0, h.h1);
    EXPECT_EQ(c.dimension, 2u);
    EXPECT_TRUE(c.has_external_symmetry);
    for (const auto& b : c.basis) {
        EXPECT_LT((b - b.adjoint()).norm(), 1e-12);
        EXPECT_LT((h.h0 * b - b * h.h0).norm(), 1e-9);
        EXPECT_LT((h.h1 * b - b * h.h1).norm(), 1e-9);
    }
}

TEST(Commutant, DimensionOneWhenControllable) {
    for (int n = 2; n <= 9; ++n) {
        const auto h = chain(n, 1, 0.3);
        EXPECT_EQ(commutant(h.h0, h.h1).dimension, 1u);
    }
}

TEST(DarkStates, OddChainEvenControl) {
    for (int n : {5, 7, 9}) {
        for (int k = 2; k < n; k += 2) {
            const auto h = chain(n, k);
            const auto d = dark_states(h.h0, h.control_positions());
            ASSERT_GE(d.count(), 1u);
            for (Eigen::Index i = 0; i < d.vectors.cols(); ++i) {
                EXPECT_LT(std::abs(d.vectors(k - 1, i)), 1e-8);
                EXPECT_LT((h.h0 * d.vectors.col(i) - d.eigenvalues[i] * d.vectors.col(i)).norm(), 1e-9);
            }
        }
    }
}

TEST(DarkStates, CommutantAgreesOnChains) {
    for (double kappa : {0.0, 1.0, -1.0, 0.37}) {
        for (int n = 2; n <= 10; ++n) {
            for (int k = 1; k <= n; ++k) {
                const auto h = chain(n, k, kappa);
                const auto c = commutant(h.h0, h.h1);
                const auto d = dark_states(h.h0, h.control_positions());
                EXPECT_EQ(c.dimension > 1, d.count() > 0) << n << " " << k << " " << kappa;
            }
        }
    }
}

TEST(DarkStates, MirrorChainsHaveManyDarkStates) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> g(0.2, 2.0), kap(-2, 2);
    for (int k = 2; k <= 6; ++k) {
        const int n = 2 * k - 1;
        std::vector<double> c(n - 1);
        for (int i = 0; i < k - 1; ++i) c[i] = c[n - 2 - i] = g(rng);
        const auto h = single_excitation(make_chain(n, c, kap(rng), {k}));
        EXPECT_GE(dark_states(h.h0, h.control_positions()).count(), static_cast<std::size_t>(k - 1));
    }
}

TEST(InternalSymmetry, NoneForSingleNodeControl) {
    for (int n = 3; n <= 9; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto h = chain(n, k, 0.5 * (k % 3));
            EXPECT_EQ(internal_symmetry(h.h0, h.h1).dimension, 0u) << n << " " << k;
        }
    }
}

TEST(InternalSymmetry, IsolatedPair) {
    const auto h = single_excitation(NetworkSpec(2, {}, 0.0, {1}));
    const auto r = internal_symmetry(h.h0, h.h1);
    EXPECT_GE(r.dimension, 1u);
    EXPECT_TRUE(r.has_internal_symmetry);
    EXPECT_GT(r.min_singular_value, 1e-8);
}

TEST(InternalSymmetry, HalfControlledEvenXXChain) {
    for (int n : {4, 6, 8}) {
        std::vector<int> controls(n / 2);
        for (int i = 0; i < n / 2; ++i) controls[i] = i + 1;
        const auto h = single_excitation(make_chain(n, Uniform{}, 0.0, controls));
        const auto r = internal_symmetry(h.h0, h.h1);
        EXPECT_TRUE(r.has_internal_symmetry);
        EXPECT_EQ(r.type, InternalSymmetryType::symplectic);
        const std::size_t m = n / 2;
        EXPECT_EQ(lie_closure({h.h0, h.h1}).dimension, m * (2 * m + 1) + 1);
    }
}

TEST(InternalSymmetry, TwoNodeChainIsSymplectic) {
    // su(2) and sp(1) coincide, so the two-node chain always carries an anticommuting S.
    const auto h = chain(2, 1, 0.7);
    const auto r = internal_symmetry(h.h0, h.h1);
    EXPECT_EQ(r.dimension, 1u);
    EXPECT_EQ(r.type, InternalSymmetryType::symplectic);
}

TEST(Automorphisms, Chains) {
    const auto sym = graph_automorphisms(make_chain(5, Uniform{}, 0.0, {3}));
    ASSERT_EQ(sym.automorphisms.size(), 1u);
    EXPECT_EQ(sym.automorphisms[0], (std::vector<int>{5, 4, 3, 2, 1}));
    EXPECT_TRUE(graph_automorphisms(make_chain(5, Uniform{}, 0.0, {2})).automorphisms.empty());
    EXPECT_TRUE(graph_automorphisms(make_chain(5, std::vector<double>{1, 2, 3, 4}, 0.0, {3})).automorphisms.empty());
}

TEST(Automorphisms, StarBranchesSwap) {
    const auto star = make_star({{3, 3, 3}, CenterSite{}}, 0.0);
    const auto r = graph_automorphisms(star);
    EXPECT_EQ(r.automorphisms.size(), 5u);  // S_3 minus identity
    EXPECT_FALSE(r.cap_reached);
    const auto h = single_excitation(star);
    for (const auto& p : r.automorphisms) {
        const Eigen::MatrixXd pm = permutation_matrix(p);
        EXPECT_LT((pm * h.h0 - h.h0 * pm).norm(), 1e-12);
        EXPECT_LT((pm * h.h1 - h.h1 * pm).norm(), 1e-12);
    }
}

TEST(Automorphisms, CapIsReported) {
    std::vector<Edge> edges;
    for (int v = 2; v <= 10; ++v) edges.push_back({1, v, 1.0});
    const NetworkSpec star(10, edges, 0.0, {1});
    const auto r = graph_automorphisms(star, 1000);
    EXPECT_TRUE(r.cap_reached);
    EXPECT_LE(r.automorphisms.size(), 1000u);
}

TEST(Decompose, ChainExampleBlocks) {
    const auto h = chain(7, 2);
    const auto r = decompose(h.h0, h.h1, commutant(h.h0, h.h1));
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.block_sizes, (std::vector<std::size_t>{1, 6}));
}

TEST(Decompose, MirrorCenterBlocks) {
    const auto h = chain(5, 3);
    const auto r = decompose(h.h0, h.h1, commutant(h.h0, h.h1));
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.block_sizes, (std::vector<std::size_t>{1, 1, 3}));
    std::size_t total = 0;
    for (auto s : r.block_sizes) total += s;
    EXPECT_EQ(total, 5u);
}

TEST(Decompose, ClosureFitsInsideBlocks) {
    for (int n = 3; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k) {
            const auto h = chain(n, k);
            const auto r = decompose(h.h0, h.h1, commutant(h.h0, h.h1));
            std::size_t bound = 0;
            for (auto s : r.block_sizes) bound += s * s;
            EXPECT_LE(lie_closure({h.h0, h.h1}).dimension, bound);
        }
    }
}
