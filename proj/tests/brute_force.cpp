#include "brute_force.hpp"

#include <complex>
#include <functional>

namespace oracle {

namespace {

int bit(int state, int node) { return (state >> (node - 1)) & 1; }

double zeta(int state, int node) { return bit(state, node) ? -1.0 : 1.0; }

}  // namespace

Eigen::MatrixXd full_hamiltonian(const spinctrl::NetworkSpec& spec) {
    const int n = spec.node_count();
    const int dim = 1 << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        for (const auto& e : spec.edges()) {
            h(s, s) += 0.5 * spec.kappa() * e.gamma * zeta(s, e.m) * zeta(s, e.n);
            if (bit(s, e.m) != bit(s, e.n)) {
                const int t = s ^ (1 << (e.m - 1)) ^ (1 << (e.n - 1));
                h(t, s) += e.gamma;
            }
        }
    }
    return h;
}

Eigen::MatrixXd full_collective_z(int node_count, const std::vector<int>& controls) {
    const int dim = 1 << node_count;
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        for (int k : controls) z(s, s) += zeta(s, k);
    }
    return z;
}

std::vector<spinctrl::Label> lexicographic_labels(int node_count, int n) {
    std::vector<spinctrl::Label> out;
    spinctrl::Label cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= node_count; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

Eigen::MatrixXd project(const Eigen::MatrixXd& full, int node_count, const std::vector<spinctrl::Label>& labels) {
    (void)node_count;
    std::vector<int> states;
    for (const auto& l : labels) {
        int s = 0;
        for (int v : l) s |= 1 << (v - 1);
        states.push_back(s);
    }
    const auto d = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd p(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) p(i, j) = full(states[i], states[j]);
    return p;
}

std::size_t naive_closure_dimension(const std::vector<Eigen::MatrixXd>& generators, double tol) {
    using Mat = Eigen::MatrixXcd;
    const std::complex<double> i(0.0, 1.0);
    std::vector<Mat> basis;
    auto add = [&](Mat m) {
        const double n0 = m.norm();
        if (n0 < 1e-14) return false;
        m /= n0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) m -= b * (b.conjugate().cwiseProduct(m).sum().real());
        const double n1 = m.norm();
        if (n1 < tol) return false;
        basis.push_back(m / n1);
        return true;
    };
    for (const auto& g : generators) add(i * g.cast<std::complex<double>>());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            add(basis[a] * basis[b] - basis[b] * basis[a]);
        }
    }
    return basis.size();
}

}  // namespace oracle
