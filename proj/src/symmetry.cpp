#include "spinctrl/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace spinctrl {

namespace {

using Complex = std::complex<double>;

// Frobenius-orthonormal real symmetric (sym = true) or antisymmetric basis matrices.
std::vector<Eigen::MatrixXd> real_basis(Eigen::Index d, bool sym) {
    std::vector<Eigen::MatrixXd> out;
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = sym ? a : a + 1; b < d; ++b) {
            Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
            if (a == b) {
                e(a, a) = 1.0;
            } else {
                e(a, b) = r;
                e(b, a) = sym ? r : -r;
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

Eigen::VectorXd stack(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::VectorXd v(x.size() + y.size());
    v << Eigen::Map<const Eigen::VectorXd>(x.data(), x.size()),
        Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    return v;
}

// Orthonormal combinations of `basis` spanning the kernel of the linear map whose images are `columns`.
std::vector<Eigen::MatrixXd> kernel(const std::vector<Eigen::MatrixXd>& basis,
                                    const std::vector<Eigen::VectorXd>& columns, double threshold) {
    if (basis.empty()) return {};
    Eigen::MatrixXd a(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i) a.col(i) = columns[i];
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd& s = svd.singularValues();
    const Eigen::MatrixXd& v = svd.matrixV();
    std::vector<Eigen::MatrixXd> out;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const double sigma = j < s.size() ? s(j) : 0.0;
        if (sigma > threshold) continue;
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.front().rows(), basis.front().cols());
        for (std::size_t i = 0; i < basis.size(); ++i) m += v(static_cast<Eigen::Index>(i), j) * basis[i];
        out.push_back(std::move(m));
    }
    return out;
}

double scale_of(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1) {
    return std::max({1.0, h0.norm(), h1.norm()});
}

double min_singular_value(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().minCoeff();
}

Eigen::MatrixXd generic_combination(const std::vector<Eigen::MatrixXd>& basis, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(basis.front().rows(), basis.front().cols());
    for (const auto& b : basis) s += normal(rng) * b;
    return s / s.norm();
}

}  // namespace

std::string to_string(InternalSymmetryType type) {
    switch (type) {
        case InternalSymmetryType::none: return "none";
        case InternalSymmetryType::orthogonal: return "orthogonal";
        case InternalSymmetryType::symplectic: return "symplectic";
        case InternalSymmetryType::both: return "orthogonal+symplectic";
        case InternalSymmetryType::mixed: return "mixed";
    }
    return "none";
}

CommutantBasis commutant(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1, double tolerance) {
    const Eigen::Index d = h0.rows();
    const double threshold = tolerance * scale_of(h0, h1);
    auto images = [&](const std::vector<Eigen::MatrixXd>& basis) {
        std::vector<Eigen::VectorXd> cols;
        for (const auto& e : basis) cols.push_back(stack(h0 * e - e * h0, h1 * e - e * h1));
        return cols;
    };
    // Hermitian S = Re + i*Im with Re symmetric and Im antisymmetric; [h, i*A] = i*[h, A].
    const auto sym = real_basis(d, true);
    const auto anti = real_basis(d, false);
    CommutantBasis out;
    for (const auto& m : kernel(sym, images(sym), threshold)) out.basis.push_back(m.cast<Complex>());
    for (const auto& m : kernel(anti, images(anti), threshold)) {
        out.basis.push_back(Complex(0.0, 1.0) * m.cast<Complex>());
    }
    out.dimension = out.basis.size();
    out.has_external_symmetry = out.dimension > 1;
    return out;
}

DarkStateSet dark_states(const Eigen::MatrixXd& h0, const std::vector<int>& controls, double tolerance) {
    const Eigen::Index d = h0.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h0);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const Eigen::MatrixXd& u = es.eigenvectors();
    const double gap = 1e-10 * std::max(1.0, lambda.cwiseAbs().maxCoeff());

    DarkStateSet out;
    std::vector<Eigen::VectorXd> found;
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index end = start + 1;
        while (end < d && lambda(end) - lambda(end - 1) < gap) ++end;
        const Eigen::Index m = end - start;
        const Eigen::MatrixXd block = u.middleCols(start, m);
        Eigen::MatrixXd c(static_cast<Eigen::Index>(controls.size()), m);
        for (std::size_t i = 0; i < controls.size(); ++i) c.row(i) = block.row(controls[i]);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
            if (svd.singularValues()(i) > tolerance) ++rank;
        }
        for (Eigen::Index j = rank; j < m; ++j) {
            Eigen::VectorXd v = block * svd.matrixV().col(j);
            v.normalize();
            double residual = 0.0;
            for (int k : controls) residual = std::max(residual, std::abs(v(k)));
            found.push_back(v);
            out.eigenvalues.push_back(lambda.segment(start, m).mean());
            out.residuals.push_back(residual);
        }
        start = end;
    }
    out.vectors.resize(d, static_cast<Eigen::Index>(found.size()));
    for (std::size_t i = 0; i < found.size(); ++i) out.vectors.col(i) = found[i];
    return out;
}

AnticommutantResult internal_symmetry(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1,
                                      double tolerance) {
    const Eigen::Index d = h0.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd b0 = h0 - (h0.trace() / d) * id;
    const Eigen::MatrixXd b1 = h1 - (h1.trace() / d) * id;
    const double threshold = tolerance * scale_of(b0, b1);
    auto images = [&](const std::vector<Eigen::MatrixXd>& basis) {
        std::vector<Eigen::VectorXd> cols;
        for (const auto& s : basis) cols.push_back(stack(b0.transpose() * s + s * b0, b1.transpose() * s + s * b1));
        return cols;
    };
    const auto sym_basis = real_basis(d, true);
    const auto anti_basis = real_basis(d, false);
    const auto sym = kernel(sym_basis, images(sym_basis), threshold);
    const auto anti = kernel(anti_basis, images(anti_basis), threshold);

    AnticommutantResult out;
    out.symmetric_dimension = sym.size();
    out.antisymmetric_dimension = anti.size();
    out.dimension = sym.size() + anti.size();
    out.basis = sym;
    out.basis.insert(out.basis.end(), anti.begin(), anti.end());
    if (out.dimension == 0) return out;

    constexpr double kInvertible = 1e-8;
    std::mt19937_64 rng(0x5eed);
    bool orth = false, sympl = false;
    if (!sym.empty()) orth = min_singular_value(generic_combination(sym, rng)) > kInvertible;
    if (!anti.empty()) sympl = min_singular_value(generic_combination(anti, rng)) > kInvertible;
    out.min_singular_value = min_singular_value(generic_combination(out.basis, rng));
    out.has_internal_symmetry = orth || sympl || out.min_singular_value > kInvertible;
    if (orth && sympl) out.type = InternalSymmetryType::both;
    else if (orth) out.type = InternalSymmetryType::orthogonal;
    else if (sympl) out.type = InternalSymmetryType::symplectic;
    else if (out.has_internal_symmetry) out.type = InternalSymmetryType::mixed;
    return out;
}

DecompositionReport decompose(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h1,
                              const CommutantBasis& comm, std::uint64_t seed) {
    const Eigen::Index d = h0.rows();
    DecompositionReport out;
    if (comm.dimension <= 1) {
        out.block_sizes = {static_cast<std::size_t>(d)};
        out.block_bases = {Eigen::MatrixXcd::Identity(d, d)};
        out.attempts = 0;
        out.verified = true;
        return out;
    }
    const double hscale = scale_of(h0, h1);
    constexpr int kMaxAttempts = 6;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
        for (const auto& b : comm.basis) s += normal(rng) * b;
        s /= s.norm();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s);
        const Eigen::VectorXd& mu = es.eigenvalues();
        const Eigen::MatrixXcd& v = es.eigenvectors();

        std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;
        Eigen::Index start = 0;
        while (start < d) {
            Eigen::Index end = start + 1;
            while (end < d && mu(end) - mu(end - 1) < 1e-8) ++end;
            ranges.emplace_back(start, end - start);
            start = end;
        }
        // off-block mass of h0, h1 in the eigenbasis of S*
        double off = 0.0;
        for (const Eigen::MatrixXd* h : {&h0, &h1}) {
            Eigen::MatrixXcd t = v.adjoint() * h->cast<Complex>() * v;
            for (const auto& [s0, n0] : ranges) t.block(s0, s0, n0, n0).setZero();
            off = std::max(off, t.norm());
        }
        out.attempts = attempt;
        out.off_block_residual = off;
        if (off > 1e-8 * hscale) continue;

        std::vector<std::pair<Eigen::Index, Eigen::Index>> order = ranges;
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.second < b.second; });
        out.block_sizes.clear();
        out.block_bases.clear();
        for (const auto& [s0, n0] : order) {
            out.block_sizes.push_back(static_cast<std::size_t>(n0));
            out.block_bases.push_back(v.middleCols(s0, n0));
        }
        out.verified = true;
        return out;
    }
    out.block_sizes = {static_cast<std::size_t>(d)};
    out.block_bases = {Eigen::MatrixXcd::Identity(d, d)};
    out.verified = false;
    return out;
}

}  // namespace spinctrl
