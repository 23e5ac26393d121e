#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "lie_internal.hpp"

namespace spinctrl::detail {

namespace {

constexpr double kFrequencyTol = 1e-8;  // relative gap separating ad(h0) frequency classes
constexpr double kNoiseFloor = 1e-12;   // components below this (relative to the generator) are dropped
const double kSqrt2 = std::sqrt(2.0);

// Real coordinate of a skew-Hermitian matrix: sqrt2*Re X_ab, sqrt2*Im X_ab (a < b) or Im X_aa.
struct Coord {
    int a;
    int b;
    bool imag;
};

// Each class is an ad(h0)-invariant set of coordinates with a running orthonormal basis.
struct FrequencyClass {
    std::vector<Coord> coords;
    Eigen::MatrixXd q;  // coords.size() x accepted
};

struct Component {
    std::size_t cls;
    Eigen::VectorXd residual;
    double norm;
};

class FloatClosure {
public:
    FloatClosure(const std::vector<Eigen::MatrixXd>& generators, double tolerance)
        : d_(generators.front().rows()), tol_(tolerance) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(generators.front());
        u_ = es.eigenvectors();
        build_classes(es.eigenvalues());
        for (const auto& h : generators) {
            Eigen::MatrixXcd g = std::complex<double>(0, 1) * (u_.transpose() * h * u_).cast<std::complex<double>>();
            gens_.push_back(g);
            gen_norms_.push_back(g.norm());
        }
    }

    LieClosureResult run() {
        const std::size_t full = static_cast<std::size_t>(d_ * d_);
        batch(gens_, gen_norms_);
        for (std::size_t j = 0; j < elements_.size() && elements_.size() < full; ++j) {
            for (std::size_t g = 0; g < gens_.size() && elements_.size() < full; ++g) {
                const Eigen::MatrixXcd x = to_matrix(elements_[j]);
                Eigen::MatrixXcd c = gens_[g] * x - x * gens_[g];
                ++commutators_;
                batch({c}, {gen_norms_[g]});
            }
        }
        LieClosureResult out;
        out.mode = ArithmeticMode::floating;
        out.matrix_size = static_cast<std::size_t>(d_);
        out.rank_tolerance = tol_;
        out.dimension = elements_.size();
        out.commutators_evaluated = commutators_;
        out.saturated = elements_.size() == full;
        out.min_accepted_residual = min_accepted_;
        out.max_rejected_residual = max_rejected_;
        for (const auto& e : elements_) {
            Eigen::MatrixXcd x = u_.cast<std::complex<double>>() * to_matrix(e) *
                                 u_.transpose().cast<std::complex<double>>();
            out.basis.push_back(flatten(x));
        }
        return out;
    }

private:
    struct Element {
        std::size_t cls;
        Eigen::VectorXd coords;
    };

    void build_classes(const Eigen::VectorXd& lambda) {
        const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
        struct Pair {
            double f;
            int a, b;
        };
        std::vector<Pair> pairs;
        for (int a = 0; a < d_; ++a) {
            for (int b = a; b < d_; ++b) pairs.push_back({std::abs(lambda(a) - lambda(b)), a, b});
        }
        std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.f < y.f; });
        double prev = -1.0;
        for (const Pair& p : pairs) {
            if (classes_.empty() || p.f - prev > kFrequencyTol * scale) classes_.emplace_back();
            prev = p.f;
            auto& coords = classes_.back().coords;
            if (p.a == p.b) {
                coords.push_back({p.a, p.b, true});
            } else {
                coords.push_back({p.a, p.b, false});
                coords.push_back({p.a, p.b, true});
            }
        }
        for (auto& c : classes_) c.q.resize(static_cast<Eigen::Index>(c.coords.size()), 0);
    }

    Eigen::VectorXd extract(const Eigen::MatrixXcd& x, const FrequencyClass& c) const {
        Eigen::VectorXd v(static_cast<Eigen::Index>(c.coords.size()));
        for (std::size_t i = 0; i < c.coords.size(); ++i) {
            const Coord& k = c.coords[i];
            const auto z = x(k.a, k.b);
            if (k.a == k.b) v(i) = z.imag();
            else v(i) = kSqrt2 * (k.imag ? z.imag() : z.real());
        }
        return v;
    }

    Eigen::MatrixXcd to_matrix(const Element& e) const {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(d_, d_);
        const auto& coords = classes_[e.cls].coords;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            const Coord& k = coords[i];
            const double c = e.coords(i);
            if (k.a == k.b) {
                x(k.a, k.a) = {0.0, c};
            } else if (k.imag) {
                x(k.a, k.b) += std::complex<double>(0.0, c / kSqrt2);
                x(k.b, k.a) += std::complex<double>(0.0, c / kSqrt2);
            } else {
                x(k.a, k.b) += c / kSqrt2;
                x(k.b, k.a) -= c / kSqrt2;
            }
        }
        return x;
    }

    static void project_out(const Eigen::MatrixXd& q, Eigen::VectorXd& r) {
        if (q.cols() == 0) return;
        for (int pass = 0; pass < 2; ++pass) r -= q * (q.transpose() * r);
    }

    // Candidates from one expansion step; scales[i] sets the noise floor of candidates[i].
    void batch(const std::vector<Eigen::MatrixXcd>& candidates, const std::vector<double>& scales) {
        const std::size_t full = static_cast<std::size_t>(d_ * d_);
        std::vector<Component> comps;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const auto& x = candidates[i];
            const double floor = kNoiseFloor * std::max(scales[i], 1e-300);
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                Eigen::VectorXd v = extract(x, classes_[c]);
                const double n = v.norm();
                if (n <= floor) continue;
                project_out(classes_[c].q, v);
                comps.push_back({c, std::move(v), n});
            }
        }
        while (!comps.empty() && elements_.size() < full) {
            std::size_t best = 0;
            double best_rel = -1.0;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                const double rel = comps[i].residual.norm() / comps[i].norm;
                if (rel > best_rel) {
                    best_rel = rel;
                    best = i;
                }
            }
            if (best_rel <= tol_) {
                max_rejected_ = std::max(max_rejected_, best_rel);
                break;
            }
            min_accepted_ = std::min(min_accepted_, best_rel);
            const std::size_t c = comps[best].cls;
            FrequencyClass& cls = classes_[c];
            Eigen::VectorXd q = comps[best].residual / comps[best].residual.norm();
            project_out(cls.q, q);
            q.normalize();
            cls.q.conservativeResize(Eigen::NoChange, cls.q.cols() + 1);
            cls.q.col(cls.q.cols() - 1) = q;
            elements_.push_back({c, q});
            comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(best));
            for (auto& other : comps) {
                if (other.cls == c) other.residual -= q * q.dot(other.residual);
            }
        }
    }

    Eigen::Index d_;
    double tol_;
    Eigen::MatrixXd u_;
    std::vector<FrequencyClass> classes_;
    std::vector<Eigen::MatrixXcd> gens_;
    std::vector<double> gen_norms_;
    std::vector<Element> elements_;
    std::size_t commutators_ = 0;
    double min_accepted_ = 1.0;
    double max_rejected_ = 0.0;
};

}  // namespace

LieClosureResult closure_float(const std::vector<Eigen::MatrixXd>& generators, double tolerance) {
    return FloatClosure(generators, tolerance).run();
}

}  // namespace spinctrl::detail
