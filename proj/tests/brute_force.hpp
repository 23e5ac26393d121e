#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/network.hpp"

namespace oracle {

// Full 2^N XXZ Hamiltonian sum_e gamma_e [(XX + YY)/2 + (kappa/2) ZZ]; bit i set = node i+1 excited.
Eigen::MatrixXd full_hamiltonian(const spinctrl::NetworkSpec& spec);
Eigen::MatrixXd full_collective_z(int node_count, const std::vector<int>& controls);

// Projection onto the n-excitation sector with labels in lexicographic order.
Eigen::MatrixXd project(const Eigen::MatrixXd& full, int node_count, const std::vector<spinctrl::Label>& labels);

std::vector<spinctrl::Label> lexicographic_labels(int node_count, int n);

// Plain Gram-Schmidt closure of i*H_j by repeated brackets of all pairs.
std::size_t naive_closure_dimension(const std::vector<Eigen::MatrixXd>& generators, double tol = 1e-8);

}  // namespace oracle
