#include "spinctrl/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "spinctrl/analytic.hpp"
#include "spinctrl/fixtures.hpp"
#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/lie.hpp"
#include "spinctrl/network.hpp"
#include "spinctrl/report.hpp"
#include "spinctrl/symmetry.hpp"
#include "spinctrl/tables.hpp"

namespace spinctrl {

bool AcceptanceSummary::all_passed() const {
    return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

namespace {

// Tolerances pinned for the acceptance run.
constexpr double kMatrixResidual = 1e-10;  // printed matrix M against both Hamiltonians
constexpr double kDarkThreshold = 1e-8;    // |v_k| threshold for dark states

struct Fixture {
    std::string name;
    int criterion = 0;
    SubspaceHamiltonian h;
    bool chain = false;
    bool single_node_connected = false;  // single controlled node on a connected graph
    bool integer_data = false;           // rational entries: exact mode applies
    std::size_t float_dim = 0;
    bool controllable = false;
    std::size_t commutant_dim = 0;
    std::size_t dark_count = 0;
    AnticommutantResult internal;
};

class Suite {
public:
    Suite(const AcceptanceOptions& options, const ReferenceValues& ref) : opt_(options), ref_(ref), rng_(options.seed) {}

    std::vector<CriterionResult> run() {
        std::vector<CriterionResult> out;
        out.push_back(criterion1());
        out.push_back(criterion2());
        out.push_back(criterion3());
        out.push_back(criterion4());
        out.push_back(criterion5());
        out.push_back(criterion6());
        out.push_back(criterion7());
        out.push_back(criterion8());
        out.push_back(criterion9());
        out.push_back(criterion10());
        out.push_back(criterion11());
        out.push_back(criterion12());
        out.push_back(criterion13());
        return out;
    }

private:
    ClosureOptions float_options() const {
        ClosureOptions co;
        co.tolerance = opt_.tolerance;
        return co;
    }

    TableOptions table_options() const {
        TableOptions to;
        to.tolerance = opt_.tolerance;
        to.threads = opt_.threads;
        return to;
    }

    Fixture& evaluate(Fixture f) {
        f.criterion = current_;
        const auto closure = lie_closure({f.h.h0, f.h.h1}, float_options());
        f.float_dim = closure.dimension;
        f.controllable = verdict(closure, static_cast<std::size_t>(f.h.dimension())).controllable;
        f.commutant_dim = commutant(f.h.h0, f.h.h1, opt_.tolerance).dimension;
        f.dark_count = dark_states(f.h.h0, f.h.control_positions(), kDarkThreshold).count();
        f.internal = internal_symmetry(f.h.h0, f.h.h1, opt_.tolerance);
        fixtures_.push_back(std::move(f));
        return fixtures_.back();
    }

    Fixture chain_fixture(const std::string& name, const NetworkSpec& spec, bool integer_data) {
        Fixture f;
        f.name = name;
        f.h = single_excitation(spec);
        f.chain = true;
        f.single_node_connected = spec.controls().size() == 1 && spec.is_connected();
        f.integer_data = integer_data;
        return f;
    }

    std::string chain_name(int n, double kappa, const std::vector<int>& controls) {
        std::ostringstream s;
        s << "chain N=" << n << " kappa=" << fmt(kappa) << " k=";
        for (std::size_t i = 0; i < controls.size(); ++i) s << (i ? "," : "") << controls[i];
        return s.str();
    }

    CriterionResult criterion1() {
        current_ = 1;
        CriterionResult c{1, "XX chain N=7, k=2: dim 36, matrix M commutes, commutant 2, blocks {1,6}", false, {}};
        const int n = ref_.chain_example_n, k = ref_.chain_example_k;
        const auto spec = make_chain(n, Uniform{}, 0.0, {k});
        Fixture& f = evaluate(chain_fixture("chain example N=7 k=2", spec, true));
        const Eigen::MatrixXd& m = ref_.chain_example_m;
        const double res = std::max((f.h.h0 * m - m * f.h.h0).cwiseAbs().maxCoeff(),
                                    (f.h.h1 * m - m * f.h.h1).cwiseAbs().maxCoeff());
        const auto comm = commutant(f.h.h0, f.h.h1, opt_.tolerance);
        Eigen::MatrixXcd rest = m.cast<std::complex<double>>();
        for (const auto& b : comm.basis) rest -= b * b.conjugate().cwiseProduct(m.cast<std::complex<double>>()).sum();
        const double span_res = rest.norm() / m.norm();
        const auto blocks = decompose(f.h.h0, f.h.h1, comm, opt_.seed);
        const bool blocks_ok = blocks.verified && blocks.block_sizes == std::vector<std::size_t>{1, 6};
        c.passed = f.float_dim == ref_.chain_example_dim && res < kMatrixResidual && span_res < kMatrixResidual &&
                   comm.dimension == 2 && blocks_ok;
        std::ostringstream d;
        d << "dim=" << f.float_dim << " M residual=" << fmt(res) << " M outside commutant=" << fmt(span_res)
          << " commutant=" << comm.dimension << " blocks={";
        for (std::size_t i = 0; i < blocks.block_sizes.size(); ++i) d << (i ? "," : "") << blocks.block_sizes[i];
        d << "}";
        c.detail = d.str();
        return c;
    }

    CriterionResult criterion2() {
        current_ = 2;
        CriterionResult c{2, "two-excitation 5-chain family: dims 81,81,100,25; commutant 1 for four controlled states", false, {}};
        bool ok = true;
        std::ostringstream d;
        d << "dims=";
        for (std::size_t i = 0; i < ref_.two_excitation.size(); ++i) {
            const auto& row = ref_.two_excitation[i];
            Fixture f;
            f.name = "two-excitation chain, first " + std::to_string(row.controlled_states) + " states";
            f.h = second_excitation_chain(make_chain(ref_.two_excitation_chain_length, Uniform{}, 0.0, {1}));
            f.h.h1.setZero();
            for (int s = 0; s < row.controlled_states; ++s) f.h.h1(s, s) = 1.0;
            // one controlled state is a single node of the connected 10-node network
            f.single_node_connected = row.controlled_states == 1;
            f.integer_data = true;
            Fixture& e = evaluate(std::move(f));
            ok = ok && e.float_dim == row.dim;
            if (row.controlled_states == 4) {
                ok = ok && e.commutant_dim == 1;
                d << (i ? "," : "") << e.float_dim << " (commutant " << e.commutant_dim << ")";
            } else {
                d << (i ? "," : "") << e.float_dim;
            }
        }
        c.passed = ok && ref_.two_excitation.size() == 4;
        c.detail = d.str();
        return c;
    }

    CriterionResult criterion3() {
        current_ = 3;
        CriterionResult c{3, "printed 10x10 matrix equals the two-excitation chain with couplings 1:2:3:4; closure 25", false, {}};
        const int n = static_cast<int>(ref_.inhomogeneous_couplings.size()) + 1;
        Fixture f;
        f.name = "two-excitation chain couplings 1:2:3:4";
        f.h = second_excitation_chain(make_chain(n, ref_.inhomogeneous_couplings, 0.0, {1}));
        f.integer_data = true;
        const bool same_shape = f.h.h0.rows() == ref_.inhomogeneous_h0.rows() && f.h.h0.cols() == ref_.inhomogeneous_h0.cols();
        const double diff = same_shape ? (f.h.h0 - ref_.inhomogeneous_h0).cwiseAbs().maxCoeff() : 1.0;
        bool prefix = true;
        for (Eigen::Index i = 0; i < f.h.h1.rows(); ++i) {
            prefix = prefix && ((f.h.h1(i, i) == 1.0) == (i < ref_.inhomogeneous_controlled_states));
        }
        Fixture& e = evaluate(std::move(f));
        c.passed = same_shape && diff == 0.0 && prefix && e.float_dim == ref_.inhomogeneous_dim;
        c.detail = "max |entry diff|=" + fmt(diff) + " control=first " +
                   std::to_string(ref_.inhomogeneous_controlled_states) + " states (" + (prefix ? "ok" : "wrong") +
                   ") dim=" + std::to_string(e.float_dim);
        return c;
    }

    CriterionResult criterion4() {
        current_ = 4;
        CriterionResult c{4, "gcd rules: closure verdict vs gcd(N+1,k) (kappa 0) and gcd(N,2k-1) (kappa +-1), N<=12", false, {}};
        std::size_t count = 0;
        std::vector<std::string> bad;
        for (double kappa : {0.0, 1.0, -1.0}) {
            for (int n = 2; n <= 12; ++n) {
                for (int k = 1; k <= n; ++k) {
                    const auto spec = make_chain(n, Uniform{}, kappa, {k});
                    Fixture& f = evaluate(chain_fixture(chain_name(n, kappa, {k}), spec, true));
                    const bool predicted = kappa == 0.0 ? xx_controllable(n, k) : heisenberg_controllable(n, k);
                    ++count;
                    if (predicted != f.controllable) bad.push_back(f.name + " dim=" + std::to_string(f.float_dim));
                }
            }
        }
        c.passed = bad.empty();
        c.detail = std::to_string(count) + " chains, " + std::to_string(bad.size()) + " disagreements";
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    CriterionResult criterion5() {
        current_ = 5;
        CriterionResult c{5, "symmetric-kappa table: verifiable rows match, (8,2) and (10,2) flagged with oracle-verified kappa", false, {}};
        const auto report = reproduce_table(TableId::sym, ref_, table_options());
        bool all_verified = true, explained = true;
        std::vector<std::string> flagged;
        for (const auto& row : report.rows) {
            all_verified = all_verified && row.notes["all_computed_verified"].get<bool>() &&
                           row.notes["scan_complete"].get<bool>();
            if (!row.match) {
                flagged.push_back(row.key);
                explained = explained && row.notes["mismatch_explained"].get<bool>();
            }
        }
        const auto has = [&](const std::string& k) { return std::find(flagged.begin(), flagged.end(), k) != flagged.end(); };
        c.passed = all_verified && explained && has("N=8 k=2") && has("N=10 k=2");
        std::ostringstream d;
        d << report.rows.size() << " rows, all computed kappa verified=" << (all_verified ? "yes" : "no")
          << ", flagged:";
        for (const auto& k : flagged) d << " [" << k << "]";
        d << ", every flagged row oracle-explained=" << (explained ? "yes" : "no");
        c.detail = d.str();
        return c;
    }

    CriterionResult criterion6() {
        current_ = 6;
        CriterionResult c{6, "branched-network tables with center control: every symmetry flag and dim(L) matches", false, {}};
        std::ostringstream d;
        bool ok = true;
        for (TableId id : {TableId::xx_branch, TableId::heisen_branch}) {
            const auto report = reproduce_table(id, ref_, table_options());
            d << to_string(id) << " " << (report.rows.size() - report.mismatches.size()) << "/" << report.rows.size()
              << " rows match";
            for (const auto& row : report.rows) {
                if (row.match) continue;
                ok = false;
                d << "; " << row.key << " computed dim " << row.computed["dim"].get<std::size_t>() << " symmetry "
                  << (row.computed["symmetry"].get<bool>() ? "Yes" : "No") << " vs reference dim "
                  << row.reference["dim"].get<std::size_t>() << " symmetry "
                  << (row.reference["symmetry"].get<bool>() ? "Yes" : "No") << ", alternative controls matching reference: ";
                const auto& m = row.notes["alternative_controls_matching_reference"];
                if (m.empty()) d << "none";
                for (std::size_t i = 0; i < m.size(); ++i) d << (i ? "," : "") << m[i]["site"].get<std::string>();
            }
            d << ". ";
        }
        c.passed = ok;
        c.detail = d.str();
        if (!c.detail.empty() && c.detail.back() == ' ') c.detail.pop_back();
        return c;
    }

    CriterionResult criterion7() {
        current_ = 7;
        CriterionResult c{7, "end control: 50 random chains (N<=10, gamma in [0.2,2], kappa in [-2,2]), k=1, all controllable", false, {}};
        std::uniform_int_distribution<int> len(2, 10);
        std::uniform_real_distribution<double> gamma(0.2, 2.0), kappa(-2.0, 2.0);
        std::vector<std::string> bad;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = len(rng_);
            std::vector<double> g(n - 1);
            for (auto& x : g) x = gamma(rng_);
            const double kap = kappa(rng_);
            Fixture& f = evaluate(chain_fixture("random end-controlled chain #" + std::to_string(trial) + " N=" + std::to_string(n),
                                                make_chain(n, g, kap, {1}), false));
            if (!f.controllable) bad.push_back(f.name + " dim=" + std::to_string(f.float_dim));
        }
        c.passed = bad.empty();
        c.detail = "50 chains, " + std::to_string(bad.size()) + " not controllable";
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    CriterionResult criterion8() {
        current_ = 8;
        CriterionResult c{8, "collective end control {1..k}, k<N, uniform chains N<=10, kappa in {0,1}: all controllable", false, {}};
        std::size_t count = 0;
        std::vector<std::string> bad;
        for (double kappa : {0.0, 1.0}) {
            for (int n = 2; n <= 10; ++n) {
                for (int k = 1; k < n; ++k) {
                    std::vector<int> controls(k);
                    for (int i = 0; i < k; ++i) controls[i] = i + 1;
                    Fixture& f = evaluate(chain_fixture(chain_name(n, kappa, controls), make_chain(n, Uniform{}, kappa, controls), true));
                    ++count;
                    if (!f.controllable) bad.push_back(f.name + " dim=" + std::to_string(f.float_dim));
                }
            }
        }
        c.passed = bad.empty();
        c.detail = std::to_string(count) + " chains, " + std::to_string(bad.size()) + " not controllable";
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    CriterionResult criterion9() {
        current_ = 9;
        CriterionResult c{9, "odd XX chains N in {5,7,9} with random couplings and even k: dark state, not controllable", false, {}};
        std::uniform_int_distribution<int> pick(0, 2);
        std::uniform_real_distribution<double> gamma(0.2, 2.0);
        std::vector<std::string> bad;
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 5 + 2 * pick(rng_);
            std::uniform_int_distribution<int> half(1, (n - 1) / 2);
            const int k = 2 * half(rng_);
            std::vector<double> g(n - 1);
            for (auto& x : g) x = gamma(rng_);
            Fixture& f = evaluate(chain_fixture("random odd XX chain #" + std::to_string(trial) + " N=" + std::to_string(n) +
                                                    " k=" + std::to_string(k),
                                                make_chain(n, g, 0.0, {k}), false));
            if (f.dark_count == 0 || f.controllable) bad.push_back(f.name);
        }
        c.passed = bad.empty();
        c.detail = "50 chains, " + std::to_string(bad.size()) + " violations";
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    CriterionResult criterion10() {
        current_ = 10;
        CriterionResult c{10, "mirror-symmetric chains N=2k-1 controlled at k: at least k-1 dark states", false, {}};
        std::uniform_int_distribution<int> pick_k(2, 6);
        std::uniform_real_distribution<double> gamma(0.2, 2.0), kappa(-2.0, 2.0);
        std::vector<std::string> bad;
        std::map<std::string, int> closure_shape;
        const int trials = 30;
        for (int trial = 0; trial < trials; ++trial) {
            const int k = pick_k(rng_);
            const int n = 2 * k - 1;
            std::vector<double> g(n - 1);
            for (int i = 0; i < (n - 1) / 2; ++i) g[i] = g[n - 2 - i] = gamma(rng_);
            const double kap = kappa(rng_);
            Fixture& f = evaluate(chain_fixture("mirror chain #" + std::to_string(trial) + " N=" + std::to_string(n),
                                                make_chain(n, g, kap, {k}), false));
            if (f.dark_count + 1 < static_cast<std::size_t>(k)) bad.push_back(f.name + " dark=" + std::to_string(f.dark_count));
            const std::size_t kk = static_cast<std::size_t>(k);
            std::string shape = "other";
            for (std::size_t b : {kk, kk + 1}) {
                const std::string base = b == kk ? "k^2" : "(k+1)^2";
                if (f.float_dim == b * b) shape = base;
                else if (f.float_dim == b * b + 1) shape = base + "+1";
            }
            shape = "bright block " + std::to_string(static_cast<std::size_t>(n) - f.dark_count) +
                    (static_cast<std::size_t>(n) - f.dark_count == kk ? " (=k)" : "") + ", dim(L)=" + shape;
            ++closure_shape[shape];
        }
        c.passed = bad.empty();
        std::ostringstream d;
        d << trials << " chains, " << bad.size() << " below k-1 dark states; observed:";
        for (const auto& [shape, count] : closure_shape) d << " [" << shape << "] x" << count;
        c.detail = d.str();
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    CriterionResult criterion11() {
        CriterionResult c{11, "internal symmetry: none for single-node connected fixtures; present for two isolated nodes", false, {}};
        std::size_t count = 0;
        std::vector<std::string> bad;
        for (const auto& f : fixtures_) {
            if (!f.single_node_connected) continue;
            ++count;
            if (f.internal.dimension != 0) {
                bad.push_back(f.name + " (dim " + std::to_string(f.internal.dimension) + ", " +
                              to_string(f.internal.type) + ")");
            }
        }
        const NetworkSpec isolated(2, {}, 0.0, {1}, Topology{TopologyKind::general, {}});
        const auto h = single_excitation(isolated);
        const auto iso = internal_symmetry(h.h0, h.h1, opt_.tolerance);
        const bool iso_ok = iso.dimension >= 1 && iso.has_internal_symmetry;
        c.passed = bad.empty() && iso_ok;
        std::ostringstream d;
        d << count << " single-node fixtures, " << bad.size() << " with nonzero anticommutant";
        if (!bad.empty()) {
            std::set<std::size_t> sizes;
            for (const auto& f : fixtures_) {
                if (f.single_node_connected && f.internal.dimension) sizes.insert(static_cast<std::size_t>(f.h.dimension()));
            }
            d << " (subspace dimensions:";
            for (auto s : sizes) d << " " << s;
            d << ")";
        }
        d << "; isolated pair: dim " << iso.dimension << " " << to_string(iso.type)
          << (iso.has_internal_symmetry ? " invertible" : " singular");
        c.detail = d.str();
        for (std::size_t i = 0; i < std::min<std::size_t>(bad.size(), 5); ++i) c.detail += "; " + bad[i];
        if (bad.size() > 5) c.detail += "; ...";
        return c;
    }

    CriterionResult criterion12() {
        CriterionResult c{12, "chains: commutant dimension > 1 iff a dark state exists", false, {}};
        std::size_t count = 0;
        std::vector<std::string> bad;
        for (const auto& f : fixtures_) {
            if (!f.chain) continue;
            ++count;
            if ((f.commutant_dim > 1) != (f.dark_count > 0)) {
                bad.push_back(f.name + " commutant " + std::to_string(f.commutant_dim) + " dark " + std::to_string(f.dark_count));
            }
        }
        c.passed = bad.empty() && count > 0;
        c.detail = std::to_string(count) + " chain fixtures, " + std::to_string(bad.size()) + " disagreements";
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    CriterionResult criterion13() {
        CriterionResult c{13, "float and exact-rational closure dimensions agree on integer-data fixtures of criteria 1-4", false, {}};
        ClosureOptions exact;
        exact.mode = ArithmeticMode::exact;
        std::size_t count = 0;
        std::vector<std::string> bad;
        for (const auto& f : fixtures_) {
            if (!f.integer_data) continue;
            if (f.criterion > 4) continue;
            const auto r = lie_closure({f.h.h0, f.h.h1}, exact);
            ++count;
            if (r.dimension != f.float_dim) {
                bad.push_back(f.name + " float " + std::to_string(f.float_dim) + " exact " + std::to_string(r.dimension));
            }
        }
        c.passed = bad.empty() && count > 0;
        c.detail = std::to_string(count) + " fixtures, " + std::to_string(bad.size()) + " disagreements";
        for (const auto& b : bad) c.detail += "; " + b;
        return c;
    }

    const AcceptanceOptions& opt_;
    const ReferenceValues& ref_;
    std::mt19937_64 rng_;
    std::vector<Fixture> fixtures_;
    int current_ = 0;
};

}  // namespace

AcceptanceSummary run_acceptance(const AcceptanceOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const std::string path = options.fixture_path.empty() ? default_fixture_path() : options.fixture_path;
    const ReferenceValues ref = load_reference_values(path);

    AcceptanceSummary summary;
    summary.criteria = Suite(options, ref).run();
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    CriterionResult c14{14, "verify is deterministic across runs and finishes within 300 s", false, {}};
    if (options.rerun_for_determinism) {
        AcceptanceSummary again;
        again.criteria = Suite(options, ref).run();
        const bool identical = format_summary(again) == format_summary(summary);
        const bool fast = summary.seconds < kTimeBudgetSeconds;
        c14.passed = identical && fast;
        c14.detail = std::string("second run ") + (identical ? "byte-identical" : "DIFFERS") + "; first run " +
                     (fast ? "within" : "OVER") + " the time budget";
    } else {
        c14.passed = false;
        c14.detail = "determinism rerun disabled";
    }
    summary.criteria.push_back(c14);
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

std::string format_summary(const AcceptanceSummary& summary) {
    std::ostringstream out;
    for (const auto& c : summary.criteria) {
        out << (c.passed ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << " -- " << c.detail << "\n";
    }
    std::size_t passed = 0;
    for (const auto& c : summary.criteria) passed += c.passed;
    out << passed << "/" << summary.criteria.size() << " criteria passed\n";
    return out.str();
}

}  // namespace spinctrl
