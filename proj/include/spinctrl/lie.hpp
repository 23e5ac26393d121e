#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

namespace spinctrl {

enum class ArithmeticMode { floating, exact };

std::string to_string(ArithmeticMode mode);

struct ClosureOptions {
    ArithmeticMode mode = ArithmeticMode::floating;
    double tolerance = 1e-9;       // relative residual needed to accept a new direction
    std::size_t max_matrix_size = 0;  // 0: unlimited; otherwise reject larger inputs
};

struct LieClosureResult {
    std::size_t dimension = 0;
    std::size_t matrix_size = 0;
    // Skew-Hermitian elements flattened as [Re row-major, Im row-major], unit Frobenius norm.
    // Orthonormal in floating mode; linearly independent in exact mode.
    std::vector<Eigen::VectorXd> basis;
    ArithmeticMode mode = ArithmeticMode::floating;
    double rank_tolerance = 0.0;
    std::size_t commutators_evaluated = 0;
    bool saturated = false;
    // Floating mode only: smallest accepted and largest rejected relative residual.
    double min_accepted_residual = 1.0;
    double max_rejected_residual = 0.0;
};

struct ControllabilityVerdict {
    bool controllable = false;
    std::size_t dimension = 0;
    std::size_t full_dimension = 0;
    std::string note;
};

// Real Lie algebra generated by i*H for each real symmetric H.
// Floating mode grades elements by the eigen-frequencies of ad(i*H_0) and closes by bracketing
// every accepted element with the generators; exact mode runs fraction-free elimination over
// GMP integers after rescaling rational inputs.
LieClosureResult lie_closure(const std::vector<Eigen::MatrixXd>& generators,
                             const ClosureOptions& options = {});

ControllabilityVerdict verdict(const LieClosureResult& result, std::size_t d);

// Largest relative residual of [b_i, b_j] outside span(basis), over all basis pairs.
double closure_defect(const LieClosureResult& result);

Eigen::VectorXd flatten(const Eigen::MatrixXcd& x);
Eigen::MatrixXcd unflatten(const Eigen::VectorXd& v, std::size_t d);

}  // namespace spinctrl
