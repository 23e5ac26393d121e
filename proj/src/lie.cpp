#include <stdexcept>

#include "lie_internal.hpp"

namespace spinctrl {

std::string to_string(ArithmeticMode mode) {
    return mode == ArithmeticMode::exact ? "exact-rational" : "float";
}

Eigen::VectorXd flatten(const Eigen::MatrixXcd& x) {
    const Eigen::Index d = x.rows();
    Eigen::VectorXd v(2 * d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            v(a * d + b) = x(a, b).real();
            v(d * d + a * d + b) = x(a, b).imag();
        }
    }
    return v;
}

Eigen::MatrixXcd unflatten(const Eigen::VectorXd& v, std::size_t size) {
    const auto d = static_cast<Eigen::Index>(size);
    if (v.size() != 2 * d * d) throw std::invalid_argument("unflatten: length is not 2*d*d");
    Eigen::MatrixXcd x(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) x(a, b) = {v(a * d + b), v(d * d + a * d + b)};
    }
    return x;
}

LieClosureResult lie_closure(const std::vector<Eigen::MatrixXd>& generators,
                             const ClosureOptions& options) {
    if (generators.empty()) throw std::invalid_argument("lie_closure: no generators");
    const Eigen::Index d = generators.front().rows();
    if (d < 1) throw std::invalid_argument("lie_closure: empty matrix");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& h = generators[i];
        if (h.rows() != h.cols()) {
            throw std::invalid_argument("lie_closure: generator " + std::to_string(i) + " is not square");
        }
        if (h.rows() != d) {
            throw std::invalid_argument("lie_closure: generator " + std::to_string(i) +
                                        " has a different size");
        }
        const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
        if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
            throw std::invalid_argument("lie_closure: generator " + std::to_string(i) +
                                        " is not symmetric");
        }
    }
    if (options.max_matrix_size && static_cast<std::size_t>(d) > options.max_matrix_size) {
        throw std::length_error("lie_closure: matrix size " + std::to_string(d) + " exceeds cap " +
                                std::to_string(options.max_matrix_size));
    }
    if (!(options.tolerance > 0.0)) throw std::invalid_argument("lie_closure: tolerance must be positive");
    if (options.mode == ArithmeticMode::exact) return detail::closure_exact(generators);
    return detail::closure_float(generators, options.tolerance);
}

ControllabilityVerdict verdict(const LieClosureResult& result, std::size_t d) {
    ControllabilityVerdict v;
    v.dimension = result.dimension;
    v.full_dimension = d * d;
    if (result.dimension == d * d) {
        v.controllable = true;
        v.note = "dim = d^2, u(d)";
    } else if (d * d >= 1 && result.dimension == d * d - 1) {
        v.controllable = true;
        v.note = "dim = d^2 - 1, su(d)";
    } else {
        v.controllable = false;
        v.note = "dim = " + std::to_string(result.dimension) + " < d^2 - 1";
    }
    return v;
}

double closure_defect(const LieClosureResult& result) {
    const std::size_t n = result.basis.size();
    if (n == 0) return 0.0;
    const std::size_t d = result.matrix_size;
    Eigen::MatrixXd b(result.basis.front().size(), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) b.col(i) = result.basis[i];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(b.rows(), b.cols());
    std::vector<Eigen::MatrixXcd> m;
    for (const auto& v : result.basis) m.push_back(unflatten(v, d));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Eigen::VectorXd c = flatten(m[i] * m[j] - m[j] * m[i]);
            const double cn = c.norm();
            if (cn <= 1e-12) continue;  // unit-norm operands: numerically commuting pair
            Eigen::VectorXd r = c - q * (q.transpose() * c);
            r -= q * (q.transpose() * r);
            worst = std::max(worst, r.norm() / cn);
        }
    }
    return worst;
}

}  // namespace spinctrl
