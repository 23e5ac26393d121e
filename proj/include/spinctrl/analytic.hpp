#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace spinctrl {

struct BetheSolution {
    int chain_length = 0;
    int control_index = 0;
    int mode_index = 0;
    double theta = 0.0;
    double kappa = 0.0;
    double phi = 0.0;  // (2k - 1) * theta
    std::complex<double> z;
    bool verified = false;
    double residual = 0.0;  // smallest |v_k| over normalized eigenvectors of h0(kappa)
};

struct BetheEnumeration {
    enum class Kind { finite, all_kappa };
    Kind kind = Kind::finite;
    std::vector<BetheSolution> solutions;  // empty finite list: no symmetric kappa

    bool all_kappa() const { return kind == Kind::all_kappa; }
};

// Uniform chain of length n, controlled at k: kappa values giving an eigenvector with v_k = 0.
BetheEnumeration bethe_symmetric_kappas(int n, int k);

// Smallest |v_k| over the normalized eigenvectors of the uniform chain h0(kappa).
double min_eigenvector_component(int n, int k, double kappa);

// Bisection-refined sign changes of the control-site eigenvector components over a kappa grid.
std::vector<double> scan_symmetric_kappas(int n, int k, double lo = -3.0, double hi = 3.0,
                                          double step = 0.01);

bool xx_symmetry_predicate(int n, int k);
bool xx_controllable(int n, int k);
bool heisenberg_controllable(int n, int k);

struct Eigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // columns, unit norm
};

// Uniform chain h0 (stored convention of single_excitation) for kappa in {0, 1, -1}.
Eigensystem closed_form_eigensystem(int n, int kappa);

bool star_controllable_conjecture(const std::vector<int>& lengths);
// Control at the far end of branch p (1-based) of a three-branch star.
bool star_end_control_predicate(const std::vector<int>& lengths, int branch);

}  // namespace spinctrl
