#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "brute_force.hpp"
#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/json_io.hpp"

using namespace spinctrl;

TEST(Hamiltonian, ThreeNodeChain) {
    const auto h = single_excitation(make_chain(3, std::vector<double>{1, 2}, 1.0, {2}));
    Eigen::MatrixXd expected(3, 3);
    expected << 0.5, 1, 0, 1, -1.5, 2, 0, 2, -0.5;
    EXPECT_LT((h.h0 - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(h.control_positions(), std::vector<int>{1});
    EXPECT_EQ(h.h1, Eigen::Vector3d(0, 1, 0).asDiagonal().toDenseMatrix());
}

TEST(Hamiltonian, SingleExcitationMatchesFullSpace) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> g(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 6;
        std::vector<Edge> edges;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (g(rng) > 0 || b == a + 1) edges.push_back({a, b, g(rng) + 3.0});
        const std::vector<int> controls{1 + trial % n};
        const NetworkSpec spec(n, edges, g(rng), controls);
        const auto h = single_excitation(spec);
        const auto labels = oracle::lexicographic_labels(n, 1);
        ASSERT_EQ(h.basis_labels, labels);
        const auto p0 = oracle::project(oracle::full_hamiltonian(spec), n, labels);
        EXPECT_LT((h.h0 - p0).cwiseAbs().maxCoeff(), 1e-12);
        const Eigen::MatrixXd pz = oracle::project(oracle::full_collective_z(n, controls), n, labels);
        const Eigen::MatrixXd indicator =
            (static_cast<double>(controls.size()) * Eigen::MatrixXd::Identity(n, n) - pz) / 2.0;
        EXPECT_EQ(h.h1, indicator);
    }
}

TEST(Hamiltonian, TwoExcitationMatchesFullSpace) {
    for (double kappa : {0.0, 1.0, -0.6}) {
        for (int n = 3; n <= 8; ++n) {
            std::vector<double> g(n - 1);
            for (int i = 0; i < n - 1; ++i) g[i] = 1.0 + 0.5 * i;
            const auto spec = make_chain(n, g, kappa, {1});
            const auto h = second_excitation_chain(spec);
            const auto labels = oracle::lexicographic_labels(n, 2);
            ASSERT_EQ(h.basis_labels, labels);
            Eigen::MatrixXd p = oracle::project(oracle::full_hamiltonian(spec), n, labels);
            p.diagonal().array() -= p.diagonal().minCoeff();
            EXPECT_LT((h.h0 - p).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n << " kappa=" << kappa;
            EXPECT_DOUBLE_EQ(h.h0.diagonal().minCoeff(), 0.0);
        }
    }
}

TEST(Hamiltonian, TwoExcitationRequiresChain) {
    EXPECT_THROW(second_excitation_chain(make_chain(2, Uniform{}, 0.0, {1})), SpecError);
    EXPECT_THROW(second_excitation_chain(NetworkSpec(3, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}}, 0.0, {1})),
                 SpecError);
}

TEST(Hamiltonian, KappaSignDuality) {
    // Flipping kappa and staggering signs maps h0 to -h0 on a bipartite chain.
    for (int n = 2; n <= 9; ++n) {
        const auto a = single_excitation(make_chain(n, Uniform{}, 0.8, {1}));
        const auto b = single_excitation(make_chain(n, Uniform{}, -0.8, {1}));
        Eigen::VectorXd s(n);
        for (int i = 0; i < n; ++i) s(i) = i % 2 ? -1.0 : 1.0;
        const Eigen::MatrixXd mapped = s.asDiagonal() * a.h0 * s.asDiagonal();
        EXPECT_LT((mapped + b.h0).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Hamiltonian, JacobiSpectrumIsSimple) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> g(0.2, 2.0), k(-2, 2);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 9;
        std::vector<double> c(n - 1);
        for (auto& x : c) x = g(rng);
        const auto h = single_excitation(make_chain(n, c, k(rng), {1}));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.h0);
        const auto& v = es.eigenvalues();
        for (int i = 1; i < n; ++i) EXPECT_GT(v(i) - v(i - 1), 1e-9);
        for (int i = 0; i < n; ++i) EXPECT_GT(std::abs(es.eigenvectors()(0, i)), 1e-12);
    }
}

TEST(Hamiltonian, MatrixTextRoundTrip) {
    Eigen::MatrixXd m(2, 3);
    m << 0.1, -2.5e-17, 3, 1.0 / 3.0, 0, -7;
    std::stringstream ss;
    write_matrix_text(ss, m);
    EXPECT_EQ(read_matrix_text(ss), m);
    EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
}
