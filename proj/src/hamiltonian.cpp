#include "spinctrl/hamiltonian.hpp"

#include <algorithm>
#include <map>

namespace spinctrl {

std::vector<int> SubspaceHamiltonian::control_positions() const {
    std::vector<int> out;
    for (Eigen::Index i = 0; i < h1.rows(); ++i) {
        if (h1(i, i) != 0.0) out.push_back(static_cast<int>(i));
    }
    return out;
}

Eigen::MatrixXd control_matrix(const NetworkSpec& spec, const std::vector<Label>& basis_labels) {
    const auto& controls = spec.controls();
    const auto d = static_cast<Eigen::Index>(basis_labels.size());
    Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (int site : basis_labels[i]) {
            if (std::binary_search(controls.begin(), controls.end(), site)) {
                h1(i, i) = 1.0;
                break;
            }
        }
    }
    return h1;
}

SubspaceHamiltonian single_excitation(const NetworkSpec& spec) {
    const int n = spec.node_count();
    SubspaceHamiltonian out;
    out.excitation_number = 1;
    for (int v = 1; v <= n; ++v) out.basis_labels.push_back({v});

    double total = 0.0;
    std::vector<double> incident(n, 0.0);
    out.h0 = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : spec.edges()) {
        out.h0(e.m - 1, e.n - 1) = e.gamma;
        out.h0(e.n - 1, e.m - 1) = e.gamma;
        total += e.gamma;
        incident[e.m - 1] += e.gamma;
        incident[e.n - 1] += e.gamma;
    }
    const double mu0 = 0.5 * spec.kappa() * total;
    for (int v = 0; v < n; ++v) out.h0(v, v) = mu0 - spec.kappa() * incident[v];
    out.h1 = control_matrix(spec, out.basis_labels);
    return out;
}

SubspaceHamiltonian second_excitation_chain(const NetworkSpec& spec) {
    const int n = spec.node_count();
    if (n < 3) throw SpecError("nodes", "two-excitation builder needs at least 3 nodes");
    if (!spec.is_chain()) throw SpecError("topology", "two-excitation builder requires a chain");

    SubspaceHamiltonian out;
    out.excitation_number = 2;
    std::map<std::pair<int, int>, Eigen::Index> position;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            position[{i, j}] = static_cast<Eigen::Index>(out.basis_labels.size());
            out.basis_labels.push_back({i, j});
        }
    }
    const auto d = static_cast<Eigen::Index>(out.basis_labels.size());
    out.h0 = Eigen::MatrixXd::Zero(d, d);

    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (Eigen::Index s = 0; s < d; ++s) {
        const int a = out.basis_labels[s][0], b = out.basis_labels[s][1];
        double zz = 0.0;
        for (const Edge& e : spec.edges()) {
            const double sm = (e.m == a || e.m == b) ? -1.0 : 1.0;
            const double sn = (e.n == a || e.n == b) ? -1.0 : 1.0;
            zz += e.gamma * sm * sn;
            // hop one excitation across the edge when exactly one end is excited
            const bool m_exc = sm < 0, n_exc = sn < 0;
            if (m_exc != n_exc) {
                const int from = m_exc ? e.m : e.n, to = m_exc ? e.n : e.m;
                const int other = (from == a) ? b : a;
                const Eigen::Index t = position.at(key(other, to));
                out.h0(s, t) = e.gamma;
            }
        }
        out.h0(s, s) = 0.5 * spec.kappa() * zz;
    }
    const double shift = out.h0.diagonal().minCoeff();
    out.h0.diagonal().array() -= shift;
    out.h1 = control_matrix(spec, out.basis_labels);
    return out;
}

}  // namespace spinctrl
