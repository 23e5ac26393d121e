#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinctrl {

class FixtureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SymRow {
    int n = 0;
    int k = 0;
    std::vector<std::pair<int, int>> theta;  // printed theta as (numerator, denominator) of pi
    std::string kappa_text;
    std::vector<double> kappa;
    bool no_solution = false;
};

struct BranchRow {
    int n = 0;
    std::vector<int> lengths;
    bool symmetry = false;
    std::size_t dim = 0;
    bool controllable = false;
};

struct TwoExcitationRow {
    std::string label;
    int controlled_states = 0;
    std::size_t dim = 0;
    bool symmetry = false;
};

struct ReferenceValues {
    int version = 0;
    std::vector<SymRow> sym;
    double xx_kappa = 0.0;
    std::vector<BranchRow> xx_branch;
    double heisen_kappa = 1.0;
    std::vector<BranchRow> heisen_branch;
    int two_excitation_chain_length = 5;
    std::vector<TwoExcitationRow> two_excitation;
    std::vector<double> inhomogeneous_couplings;
    int inhomogeneous_controlled_states = 0;
    std::size_t inhomogeneous_dim = 0;
    bool inhomogeneous_symmetry = false;
    Eigen::MatrixXd inhomogeneous_h0;
    int chain_example_n = 0;
    int chain_example_k = 0;
    std::size_t chain_example_dim = 0;
    Eigen::MatrixXd chain_example_m;
};

constexpr int kReferenceVersion = 1;

// SPINCTRL_FIXTURES if set, else the path compiled into the library.
std::string default_fixture_path();
ReferenceValues load_reference_values(const std::string& path);

}  // namespace spinctrl
