#include "spinctrl/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/network.hpp"

namespace spinctrl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVerifyTol = 1e-8;
constexpr double kDedupTol = 1e-10;
constexpr double kPoleTol = 1e-12;

Eigen::MatrixXd uniform_h0(int n, double kappa) {
    return single_excitation(make_chain(n, Uniform{}, kappa, {1})).h0;
}

}  // namespace

double min_eigenvector_component(int n, int k, double kappa) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(uniform_h0(n, kappa));
    return es.eigenvectors().row(k - 1).cwiseAbs().minCoeff();
}

BetheEnumeration bethe_symmetric_kappas(int n, int k) {
    if (n < 2) throw std::invalid_argument("bethe: chain length must be >= 2");
    if (k < 1 || 2 * k - 1 > n) {
        throw std::invalid_argument("bethe: control index out of range (need 1 <= k <= ceil(N/2))");
    }
    BetheEnumeration out;
    if (n == 2 * k - 1) {
        out.kind = BetheEnumeration::Kind::all_kappa;
        return out;
    }
    const int denom = n - (2 * k - 1);
    for (int j = 1; j <= n - 2 * k; ++j) {
        const double theta = j * kPi / denom;
        const double s_prev = std::sin((k - 1) * theta);
        const double s_k = std::sin(k * theta);
        // kappa pole; a simultaneous zero of sin(k theta) would need theta in {0, pi}
        if (std::abs(s_prev) < kPoleTol) continue;
        BetheSolution s;
        s.chain_length = n;
        s.control_index = k;
        s.mode_index = j;
        s.theta = theta;
        s.kappa = s_k / s_prev;
        s.phi = (2 * k - 1) * theta;
        s.z = std::polar(1.0, theta);
        s.residual = min_eigenvector_component(n, k, s.kappa);
        s.verified = s.residual < kVerifyTol;
        const bool dup = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const BetheSolution& o) {
            return std::abs(o.kappa - s.kappa) <= kDedupTol;
        });
        if (!dup) out.solutions.push_back(s);
    }
    return out;
}

std::vector<double> scan_symmetric_kappas(int n, int k, double lo, double hi, double step) {
    // signed component v_k of the j-th eigenvector, sign fixed by v_1 > 0 (never zero on a chain)
    auto signed_components = [&](double kappa) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(uniform_h0(n, kappa));
        Eigen::VectorXd c(n);
        for (int j = 0; j < n; ++j) {
            const double s = es.eigenvectors()(0, j) < 0 ? -1.0 : 1.0;
            c(j) = s * es.eigenvectors()(k - 1, j);
        }
        return c;
    };
    std::vector<double> roots;
    const int steps = static_cast<int>(std::llround((hi - lo) / step));
    Eigen::VectorXd prev = signed_components(lo);
    for (int i = 1; i <= steps; ++i) {
        const double a = lo + (i - 1) * step, b = lo + i * step;
        const Eigen::VectorXd cur = signed_components(b);
        for (int j = 0; j < n; ++j) {
            if (prev(j) == 0.0) {
                roots.push_back(a);
                continue;
            }
            if (prev(j) * cur(j) >= 0.0) continue;
            double x0 = a, x1 = b, f0 = prev(j);
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (x0 + x1);
                const double fm = signed_components(mid)(j);
                if (fm == 0.0) {
                    x0 = x1 = mid;
                    break;
                }
                if ((fm < 0) == (f0 < 0)) {
                    x0 = mid;
                    f0 = fm;
                } else {
                    x1 = mid;
                }
            }
            roots.push_back(0.5 * (x0 + x1));
        }
        prev = cur;
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || r - unique.back() > 1e-7) unique.push_back(r);
    }
    return unique;
}

bool xx_symmetry_predicate(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("xx predicate: k out of range");
    return std::gcd(n + 1, k) > 1;
}

bool xx_controllable(int n, int k) { return !xx_symmetry_predicate(n, k); }

bool heisenberg_controllable(int n, int k) {
    if (k < 1 || k > n) throw std::invalid_argument("heisenberg predicate: k out of range");
    return std::gcd(n, 2 * k - 1) == 1;
}

Eigensystem closed_form_eigensystem(int n, int kappa) {
    if (n < 1) throw std::invalid_argument("closed form: chain length must be positive");
    if (kappa != 0 && kappa != 1 && kappa != -1) {
        throw std::invalid_argument("closed form: kappa must be 0, 1 or -1");
    }
    Eigensystem out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    if (kappa == 0) {
        const double c = std::sqrt(2.0 / (n + 1));
        for (int j = 1; j <= n; ++j) {
            const double theta = j * kPi / (n + 1);
            out.values(j - 1) = 2.0 * std::cos(theta);
            for (int k = 1; k <= n; ++k) out.vectors(k - 1, j - 1) = c * std::sin(k * theta);
        }
        return out;
    }
    // corner form: hopping 1, diagonal kappa at both ends; stored h0 adds kappa*(N-5)/2 * I
    const double shift = kappa * (n - 5) / 2.0;
    for (int j = 0; j < n; ++j) {
        const double theta = j * kPi / (2.0 * n);
        const double e = 2.0 * std::cos(2.0 * theta);
        out.values(j) = (kappa == 1 ? e : -e) + shift;
        for (int k = 1; k <= n; ++k) {
            const double v = std::cos((2 * k - 1) * theta);
            out.vectors(k - 1, j) = (kappa == 1 || k % 2 == 1) ? v : -v;
        }
        out.vectors.col(j).normalize();
    }
    if (n == 1) out.values(0) = 0.0;
    return out;
}

bool star_controllable_conjecture(const std::vector<int>& lengths) {
    if (lengths.size() < 2) throw std::invalid_argument("star conjecture: need at least 2 branches");
    for (std::size_t a = 0; a < lengths.size(); ++a) {
        if (lengths[a] < 2) throw std::invalid_argument("star conjecture: branch length must be >= 2");
        for (std::size_t b = a + 1; b < lengths.size(); ++b) {
            if (std::gcd(lengths[a], lengths[b]) != 1) return false;
        }
    }
    return true;
}

bool star_end_control_predicate(const std::vector<int>& lengths, int branch) {
    if (lengths.size() != 3) throw std::invalid_argument("end-control predicate: needs exactly 3 branches");
    if (branch < 1 || branch > 3) throw std::invalid_argument("end-control predicate: branch out of range");
    std::vector<int> others;
    for (int p = 1; p <= 3; ++p) {
        if (p != branch) others.push_back(lengths[p - 1]);
    }
    return std::gcd(others[0], others[1]) == 1;
}

}  // namespace spinctrl
