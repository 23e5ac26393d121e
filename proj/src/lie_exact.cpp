#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "lie_internal.hpp"

namespace spinctrl::detail {

namespace {

constexpr long kMaxDenominator = 1000000;

// Best rational approximation with bounded denominator; must reproduce x to near machine precision.
mpq_class rationalize(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("exact mode: non-finite matrix entry");
    if (x == std::floor(x) && std::abs(x) < 9e15) return mpq_class(mpz_class(static_cast<long>(x)));
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(r);
        const mpz_class ai(static_cast<long>(a));
        const mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > kMaxDenominator) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double approx = p1.get_d() / q1.get_d();
        if (std::abs(approx - x) <= 4e-16 * std::max(1.0, std::abs(x))) {
            mpq_class out(p1, q1);
            out.canonicalize();
            return out;
        }
        const double frac = r - a;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    throw std::invalid_argument("exact mode: entry " + std::to_string(x) +
                                " is not a rational with denominator <= 1e6 (irrational entry)");
}

using IntMatrix = std::vector<mpz_class>;  // row-major d x d

struct Element {
    int grade;  // 0: real antisymmetric M, 1: i * (real symmetric M)
    IntMatrix m;
};

class ExactClosure {
public:
    explicit ExactClosure(const std::vector<Eigen::MatrixXd>& generators)
        : d_(static_cast<std::size_t>(generators.front().rows())) {
        for (const auto& h : generators) gens_.push_back({1, integerize(h)});
    }

    LieClosureResult run() {
        const std::size_t full = d_ * d_;
        for (const auto& g : gens_) add(g);
        for (std::size_t j = 0; j < elements_.size() && elements_.size() < full; ++j) {
            for (std::size_t g = 0; g < gens_.size() && elements_.size() < full; ++g) {
                Element c = bracket(gens_[g], elements_[j]);
                ++commutators_;
                add(c);
            }
        }
        LieClosureResult out;
        out.mode = ArithmeticMode::exact;
        out.matrix_size = d_;
        out.dimension = elements_.size();
        out.commutators_evaluated = commutators_;
        out.saturated = elements_.size() == full;
        for (const auto& e : elements_) {
            Eigen::MatrixXcd x(d_, d_);
            for (std::size_t a = 0; a < d_; ++a) {
                for (std::size_t b = 0; b < d_; ++b) {
                    const double v = e.m[a * d_ + b].get_d();
                    x(a, b) = e.grade ? std::complex<double>(0.0, v) : std::complex<double>(v, 0.0);
                }
            }
            x /= x.norm();
            out.basis.push_back(flatten(x));
        }
        return out;
    }

private:
    IntMatrix integerize(const Eigen::MatrixXd& h) const {
        std::vector<mpq_class> q(d_ * d_);
        mpz_class lcm = 1;
        for (std::size_t a = 0; a < d_; ++a) {
            for (std::size_t b = 0; b < d_; ++b) {
                q[a * d_ + b] = rationalize(h(a, b));
                mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q[a * d_ + b].get_den_mpz_t());
            }
        }
        IntMatrix m(d_ * d_);
        for (std::size_t i = 0; i < m.size(); ++i) {
            mpq_class scaled = q[i] * lcm;
            m[i] = scaled.get_num();
        }
        make_primitive(m);
        return m;
    }

    static void make_primitive(std::vector<mpz_class>& v) {
        mpz_class g = 0;
        for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g > 1) {
            for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
        }
    }

    Element bracket(const Element& x, const Element& y) const {
        IntMatrix c(d_ * d_);
        mpz_class acc, t;
        for (std::size_t a = 0; a < d_; ++a) {
            for (std::size_t b = 0; b < d_; ++b) {
                acc = 0;
                for (std::size_t k = 0; k < d_; ++k) {
                    mpz_addmul(acc.get_mpz_t(), x.m[a * d_ + k].get_mpz_t(), y.m[k * d_ + b].get_mpz_t());
                    mpz_submul(acc.get_mpz_t(), y.m[a * d_ + k].get_mpz_t(), x.m[k * d_ + b].get_mpz_t());
                }
                c[a * d_ + b] = acc;
            }
        }
        // (iA)(iB) - (iB)(iA) = -(AB - BA)
        if (x.grade == 1 && y.grade == 1) {
            for (auto& v : c) v = -v;
        }
        return {(x.grade + y.grade) % 2, std::move(c)};
    }

    // Coordinates: upper triangle, strict for antisymmetric, with diagonal for symmetric.
    std::vector<mpz_class> coords(const Element& e) const {
        std::vector<mpz_class> v;
        for (std::size_t a = 0; a < d_; ++a) {
            for (std::size_t b = e.grade ? a : a + 1; b < d_; ++b) v.push_back(e.m[a * d_ + b]);
        }
        return v;
    }

    IntMatrix from_coords(int grade, const std::vector<mpz_class>& v) const {
        IntMatrix m(d_ * d_);
        std::size_t i = 0;
        for (std::size_t a = 0; a < d_; ++a) {
            for (std::size_t b = grade ? a : a + 1; b < d_; ++b, ++i) {
                m[a * d_ + b] = v[i];
                m[b * d_ + a] = grade ? v[i] : mpz_class(-v[i]);
            }
        }
        return m;
    }

    void add(const Element& e) {
        auto& rows = rows_[e.grade];
        auto& pivots = pivots_[e.grade];
        std::vector<mpz_class> v = coords(e);
        mpz_class a, b;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::size_t p = pivots[r];
            if (sgn(v[p]) == 0) continue;
            a = rows[r][p];
            b = v[p];
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] *= a;
                mpz_submul(v[i].get_mpz_t(), b.get_mpz_t(), rows[r][i].get_mpz_t());
            }
            make_primitive(v);
        }
        std::size_t pivot = 0;
        while (pivot < v.size() && sgn(v[pivot]) == 0) ++pivot;
        if (pivot == v.size()) return;
        make_primitive(v);
        elements_.push_back({e.grade, from_coords(e.grade, v)});
        rows.push_back(std::move(v));
        pivots.push_back(pivot);
    }

    std::size_t d_;
    std::vector<Element> gens_;
    std::vector<Element> elements_;
    std::vector<std::vector<mpz_class>> rows_[2];
    std::vector<std::size_t> pivots_[2];
    std::size_t commutators_ = 0;
};

}  // namespace

LieClosureResult closure_exact(const std::vector<Eigen::MatrixXd>& generators) {
    return ExactClosure(generators).run();
}

}  // namespace spinctrl::detail
