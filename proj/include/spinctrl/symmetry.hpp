#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "spinctrl/network.hpp"

namespace spinctrl {

struct CommutantBasis {
    std::size_t dimension = 0;
    std::vector<Eigen::MatrixXcd> basis;  // Hermitian, Frobenius-orthonormal
    bool has_external_symmetry = false;
};

struct DarkStateSet {
    Eigen::MatrixXd vectors;  // columns, orthonormal
    std::vector<double> eigenvalues;
    std::vector<double> residuals;  // max |v_k| over controls

    std::size_t count() const { return eigenvalues.size(); }
};

enum class InternalSymmetryType { none, orthogonal, symplectic, both, mixed };

std::string to_string(InternalSymmetryType type);

struct AnticommutantResult {
    std::size_t dimension = 0;
    std::size_t symmetric_dimension = 0;
    std::size_t antisymmetric_dimension = 0;
    std::vector<Eigen::MatrixXd> basis;
    bool has_internal_symmetry = false;
    InternalSymmetryType type = InternalSymmetryType::none;
    double min_singular_value = 0.0;  // of the generic solution used for the invertibility test
};

struct AutomorphismResult {
    // perm[i] is the image of node i+1 (1-based node labels); identity excluded.
    std::vector<std::vector<int>> automorphisms;
    std::vector<std::vector<int>> generators;
    bool cap_reached = false;
};

struct DecompositionReport {
    std::vector<std::size_t> block_sizes;  // ascending
    std::vector<Eigen::MatrixXcd> block_bases;  // orthonormal columns, one matrix per block
    int attempts = 0;
    double off_block_residual = 0.0;
    bool verified = false;
};

CommutantBasis commutant(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1, double tolerance = 1e-9);

// controls: 0-based basis positions.
DarkStateSet dark_states(const Eigen::MatrixXd& h0, const std::vector<int>& controls,
                         double tolerance = 1e-8);

AnticommutantResult internal_symmetry(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1,
                                      double tolerance = 1e-9);

AutomorphismResult graph_automorphisms(const NetworkSpec& spec, std::size_t cap = 100000);

Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm);

DecompositionReport decompose(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1,
                              const CommutantBasis& commutant, std::uint64_t seed = 1);

}  // namespace spinctrl
