#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "spinctrl/network.hpp"

namespace spinctrl {

using Label = std::vector<int>;  // excited sites, 1-based, ascending

struct SubspaceHamiltonian {
    int excitation_number = 1;
    std::vector<Label> basis_labels;
    Eigen::MatrixXd h0;
    Eigen::MatrixXd h1;

    Eigen::Index dimension() const { return h0.rows(); }
    // 0-based basis positions where h1 has a one.
    std::vector<int> control_positions() const;
};

// h0: couplings off the diagonal, mu_v = mu_0 - kappa * (sum of couplings at v) on it,
// mu_0 = (kappa/2) * sum of all couplings. h1: 0/1 indicator of the control set.
SubspaceHamiltonian single_excitation(const NetworkSpec& spec);

// Two-excitation sector of a chain, basis pairs (i, j), i < j, in lexicographic order.
// Diagonal is the ZZ energy shifted so its minimum is 0.
SubspaceHamiltonian second_excitation_chain(const NetworkSpec& spec);

Eigen::MatrixXd control_matrix(const NetworkSpec& spec, const std::vector<Label>& basis_labels);

void write_matrix_text(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_text(std::istream& in);

}  // namespace spinctrl
