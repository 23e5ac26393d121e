#include "spinctrl/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spinctrl/analytic.hpp"

namespace spinctrl {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool uniform_couplings(const NetworkSpec& spec) {
    for (const Edge& e : spec.edges()) {
        if (e.gamma != spec.edges().front().gamma) return false;
    }
    return true;
}

bool mirrored_couplings(const NetworkSpec& spec) {
    const auto& e = spec.edges();
    for (std::size_t i = 0; i < e.size(); ++i) {
        const double a = e[i].gamma, b = e[e.size() - 1 - i].gamma;
        if (std::abs(a - b) > 1e-12 * std::max(std::abs(a), std::abs(b))) return false;
    }
    return true;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i]);
    return s;
}

void add_predictions(AnalysisReport& r) {
    const NetworkSpec& spec = r.network;
    const int n = spec.node_count();
    const double kappa = spec.kappa();
    const auto& controls = spec.controls();
    const bool single = controls.size() == 1;
    const int k = controls.front();
    std::optional<bool> controllable;
    if (r.closure_computed) controllable = r.verdict.controllable;
    const bool has_dark = r.dark.count() > 0;

    if (spec.is_chain()) {
        const bool uniform = uniform_couplings(spec);
        if (uniform && single && kappa == 0.0) {
            r.predictions.push_back({"xx_gcd", "controllable iff gcd(N+1,k) = 1", xx_controllable(n, k),
                                     controllable, "gcd(" + std::to_string(n + 1) + "," + std::to_string(k) + ")"});
        }
        if (uniform && single && (kappa == 1.0 || kappa == -1.0)) {
            r.predictions.push_back({"heisenberg_gcd", "controllable iff gcd(N,2k-1) = 1",
                                     heisenberg_controllable(n, k), controllable,
                                     "gcd(" + std::to_string(n) + "," + std::to_string(2 * k - 1) + ")"});
        }
        if (uniform && single && n >= 2) {
            const int km = std::min(k, n + 1 - k);
            const auto sols = bethe_symmetric_kappas(n, km);
            bool predicted = sols.all_kappa();
            std::vector<double> kappas;
            for (const auto& s : sols.solutions) {
                kappas.push_back(s.kappa);
                if (std::abs(s.kappa - kappa) <= 1e-9 * std::max(1.0, std::abs(kappa))) predicted = true;
            }
            r.predictions.push_back({"bethe_symmetry", "dark state iff kappa is a symmetric Bethe value",
                                     predicted, has_dark,
                                     sols.all_kappa() ? "every kappa is symmetric (N = 2k-1)"
                                                      : "symmetric kappa: [" + join(kappas) + "]"});
        }
        if (single && (k == 1 || k == n)) {
            r.predictions.push_back({"end_control", "end-controlled chain is controllable", true, controllable, ""});
        }
        if (uniform && !single && (kappa == 0.0 || kappa == 1.0)) {
            const int m = static_cast<int>(controls.size());
            bool prefix = controls.back() == m, suffix = controls.front() == n - m + 1;
            for (int i = 0; i < m; ++i) {
                prefix = prefix && controls[i] == i + 1;
                suffix = suffix && controls[i] == n - m + 1 + i;
            }
            if ((prefix || suffix) && m < n) {
                r.predictions.push_back({"collective_end_control",
                                         "collective control of k < N end spins is controllable", true,
                                         controllable, ""});
            }
        }
        if (kappa == 0.0 && single && n % 2 == 1 && k % 2 == 0) {
            r.predictions.push_back({"odd_xx_even_k", "odd XX chain with even k has a dark state", true, has_dark,
                                     "dark states: " + std::to_string(r.dark.count())});
        }
        if (single && n % 2 == 1 && k == (n + 1) / 2 && mirrored_couplings(spec)) {
            const int half = (n + 1) / 2;
            std::ostringstream detail;
            detail << "dark states " << r.dark.count() << " (bound k-1 = " << half - 1 << ")";
            if (r.closure_computed) {
                detail << "; closure dimension " << r.closure.dimension << "; stated controllable block k+1 = "
                       << half + 1 << " vs k = " << half << " implied by k-1 dark states";
            }
            r.predictions.push_back({"centro_symmetric", "mirror-symmetric chain controlled at the center has >= k-1 dark states",
                                     true, r.dark.count() >= static_cast<std::size_t>(half - 1), detail.str()});
        }
    }
    if (spec.topology() && spec.topology()->kind == TopologyKind::star && kappa == 0.0 && single) {
        const auto& lengths = spec.topology()->lengths;
        if (k == 1) {
            r.predictions.push_back({"star_conjecture", "center-controlled star is controllable iff lengths pairwise coprime",
                                     star_controllable_conjecture(lengths), controllable, ""});
        }
        if (lengths.size() == 3) {
            for (int p = 1; p <= 3; ++p) {
                if (star_node_index(lengths, p, lengths[p - 1]) == k) {
                    r.predictions.push_back({"star_end_control",
                                             "far-end control of branch p is controllable iff the other lengths are coprime",
                                             star_end_control_predicate(lengths, p), controllable,
                                             "branch " + std::to_string(p)});
                }
            }
        }
    }
}

void add_flags(AnalysisReport& r, const SubspaceHamiltonian& h) {
    const std::size_t d = r.dimension;
    {
        ConsistencyFlag f{"verdict_matches_dimension", r.closure_computed, false, ""};
        if (f.applicable) {
            const std::size_t dim = r.closure.dimension;
            f.holds = r.verdict.controllable == (dim == d * d || dim + 1 == d * d);
            f.detail = r.verdict.note;
        }
        r.flags.push_back(f);
    }
    {
        ConsistencyFlag f{"commutant_iff_dark_state", r.network.is_chain() && r.excitation_number == 1, false, ""};
        if (f.applicable) {
            f.holds = r.commutant.has_external_symmetry == (r.dark.count() > 0);
            f.detail = "commutant " + std::to_string(r.commutant.dimension) + ", dark states " +
                       std::to_string(r.dark.count());
        }
        r.flags.push_back(f);
    }
    {
        ConsistencyFlag f{"dark_states_in_commutant", r.dark.count() > 0, false, ""};
        if (f.applicable) {
            double worst = 0.0;
            for (Eigen::Index j = 0; j < r.dark.vectors.cols(); ++j) {
                const Eigen::VectorXd v = r.dark.vectors.col(j);
                Eigen::MatrixXcd p = (v * v.transpose()).cast<std::complex<double>>();
                Eigen::MatrixXcd rest = p;
                for (const auto& b : r.commutant.basis) {
                    rest -= b * (b.conjugate().cwiseProduct(p).sum());
                }
                worst = std::max(worst, rest.norm());
            }
            f.holds = worst < 1e-8;
            f.detail = "max residual " + fmt(worst);
        }
        r.flags.push_back(f);
    }
    {
        ConsistencyFlag f{"closure_within_blocks", r.closure_computed && r.blocks.verified, false, ""};
        if (f.applicable) {
            std::size_t bound = 0;
            for (std::size_t s : r.blocks.block_sizes) bound += s * s;
            f.holds = r.closure.dimension <= bound;
            f.detail = std::to_string(r.closure.dimension) + " <= " + std::to_string(bound) +
                       (r.closure.dimension == bound ? " (equal)" : "");
        }
        r.flags.push_back(f);
    }
    {
        ConsistencyFlag f{"symmetry_obstructs_control", r.closure_computed && r.commutant.has_external_symmetry,
                          false, ""};
        if (f.applicable) f.holds = !r.verdict.controllable;
        r.flags.push_back(f);
    }
    {
        ConsistencyFlag f{"decomposition_verified", r.commutant.has_external_symmetry, false, ""};
        if (f.applicable) {
            f.holds = r.blocks.verified;
            f.detail = "attempts " + std::to_string(r.blocks.attempts) + ", off-block " +
                       fmt(r.blocks.off_block_residual);
        }
        r.flags.push_back(f);
    }
    {
        ConsistencyFlag f{"automorphisms_commute", r.excitation_number == 1 && !r.automorphisms.automorphisms.empty(),
                          false, ""};
        if (f.applicable) {
            double worst = 0.0;
            for (const auto& perm : r.automorphisms.automorphisms) {
                const Eigen::MatrixXd p = permutation_matrix(perm);
                worst = std::max(worst, (p * h.h0 - h.h0 * p).cwiseAbs().maxCoeff());
                worst = std::max(worst, (p * h.h1 - h.h1 * p).cwiseAbs().maxCoeff());
            }
            f.holds = worst < 1e-12 * std::max(1.0, h.h0.cwiseAbs().maxCoeff());
            f.detail = "max residual " + fmt(worst);
        }
        r.flags.push_back(f);
    }
    for (const auto& p : r.predictions) {
        ConsistencyFlag f{"prediction:" + p.name, p.observed.has_value(), false, p.statement};
        if (f.applicable) f.holds = *p.observed == p.predicted;
        r.flags.push_back(f);
    }
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

}  // namespace

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

AnalysisReport analyze(const NetworkSpec& spec, const AnalysisOptions& options) {
    AnalysisReport r{.network = spec};
    r.excitation_number = options.excitation_number;

    auto t = Clock::now();
    SubspaceHamiltonian h;
    if (options.excitation_number == 1) h = single_excitation(spec);
    else if (options.excitation_number == 2) h = second_excitation_chain(spec);
    else throw std::invalid_argument("excitation number must be 1 or 2");
    r.dimension = static_cast<std::size_t>(h.dimension());
    r.timings_ms["hamiltonian"] = elapsed_ms(t);

    t = Clock::now();
    r.commutant = commutant(h.h0, h.h1, options.tolerance);
    r.timings_ms["commutant"] = elapsed_ms(t);
    t = Clock::now();
    r.dark = dark_states(h.h0, h.control_positions());
    r.timings_ms["dark_states"] = elapsed_ms(t);
    t = Clock::now();
    r.internal = internal_symmetry(h.h0, h.h1, options.tolerance);
    r.timings_ms["internal_symmetry"] = elapsed_ms(t);
    t = Clock::now();
    r.automorphisms = graph_automorphisms(spec);
    r.timings_ms["automorphisms"] = elapsed_ms(t);
    t = Clock::now();
    r.blocks = decompose(h.h0, h.h1, r.commutant, options.seed);
    r.timings_ms["decompose"] = elapsed_ms(t);

    t = Clock::now();
    if (r.dimension > options.closure_cap) {
        r.closure_note = "closure skipped: d = " + std::to_string(r.dimension) + " exceeds cap " +
                         std::to_string(options.closure_cap);
    } else {
        ClosureOptions co;
        co.mode = options.mode;
        co.tolerance = options.tolerance;
        r.closure = lie_closure({h.h0, h.h1}, co);
        r.verdict = verdict(r.closure, r.dimension);
        r.closure_computed = true;
        r.closure_note = r.verdict.note;
    }
    r.timings_ms["closure"] = elapsed_ms(t);

    t = Clock::now();
    if (options.excitation_number == 1) add_predictions(r);
    add_flags(r, h);
    r.timings_ms["predictions"] = elapsed_ms(t);
    return r;
}

json symmetry_report_json(const CommutantBasis& comm, const DarkStateSet& dark,
                          const AnticommutantResult& internal, const AutomorphismResult& autos,
                          const DecompositionReport& blocks) {
    return json{
        {"commutant_dimension", comm.dimension},
        {"has_external_symmetry", comm.has_external_symmetry},
        {"dark_state_count", dark.count()},
        {"dark_state_eigenvalues", dark.eigenvalues},
        {"dark_state_residuals", dark.residuals},
        {"internal_symmetry",
         {{"dimension", internal.dimension},
          {"symmetric_dimension", internal.symmetric_dimension},
          {"antisymmetric_dimension", internal.antisymmetric_dimension},
          {"has_internal_symmetry", internal.has_internal_symmetry},
          {"type", to_string(internal.type)}}},
        {"automorphisms",
         {{"count", autos.automorphisms.size()},
          {"generators", autos.generators},
          {"cap_reached", autos.cap_reached}}},
        {"block_sizes", blocks.block_sizes},
        {"decomposition_verified", blocks.verified},
    };
}

json report_to_json(const AnalysisReport& r, bool include_timings) {
    json closure{{"computed", r.closure_computed}, {"note", r.closure_note}, {"full_dimension", r.dimension * r.dimension}};
    if (r.closure_computed) {
        closure["dimension"] = r.closure.dimension;
        closure["controllable"] = r.verdict.controllable;
        closure["mode"] = to_string(r.closure.mode);
        closure["rank_tolerance"] = r.closure.rank_tolerance;
        closure["commutators_evaluated"] = r.closure.commutators_evaluated;
        closure["saturated"] = r.closure.saturated;
        if (r.closure.mode == ArithmeticMode::floating) {
            closure["min_accepted_residual"] = r.closure.min_accepted_residual;
            closure["max_rejected_residual"] = r.closure.max_rejected_residual;
        }
    } else {
        closure["dimension"] = nullptr;
        closure["controllable"] = nullptr;
    }
    json predictions = json::array();
    for (const auto& p : r.predictions) {
        predictions.push_back({{"name", p.name},
                               {"statement", p.statement},
                               {"predicted", p.predicted},
                               {"observed", optional_bool(p.observed)},
                               {"agrees", p.observed ? json(*p.observed == p.predicted) : json(nullptr)},
                               {"detail", p.detail}});
    }
    json flags = json::array();
    for (const auto& f : r.flags) {
        flags.push_back({{"name", f.name},
                         {"applicable", f.applicable},
                         {"holds", f.applicable ? json(f.holds) : json(nullptr)},
                         {"detail", f.detail}});
    }
    json doc{{"network", network_to_json(r.network)},
             {"excitation_number", r.excitation_number},
             {"dimension", r.dimension},
             {"closure", closure},
             {"symmetry", symmetry_report_json(r.commutant, r.dark, r.internal, r.automorphisms, r.blocks)},
             {"predictions", predictions},
             {"consistency", flags}};
    if (include_timings) doc["timings_ms"] = r.timings_ms;
    return doc;
}

std::string report_to_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "network: N=" << r.network.node_count() << " edges=" << r.network.edges().size()
        << " kappa=" << fmt(r.network.kappa()) << " controls=";
    for (std::size_t i = 0; i < r.network.controls().size(); ++i) out << (i ? "," : "") << r.network.controls()[i];
    if (r.network.topology()) out << " topology=" << to_string(r.network.topology()->kind);
    out << "\n";
    out << "subspace: n=" << r.excitation_number << " d=" << r.dimension << "\n";
    if (r.closure_computed) {
        out << "closure: dim(L)=" << r.closure.dimension << " of " << r.dimension * r.dimension << " ("
            << to_string(r.closure.mode) << ", " << r.closure.commutators_evaluated << " commutators) -> "
            << (r.verdict.controllable ? "controllable" : "not controllable") << " [" << r.verdict.note << "]\n";
    } else {
        out << r.closure_note << "\n";
    }
    out << "commutant: dim=" << r.commutant.dimension
        << (r.commutant.has_external_symmetry ? " (external symmetry)" : "") << "\n";
    out << "dark states: " << r.dark.count();
    if (r.dark.count()) out << " eigenvalues [" << join(r.dark.eigenvalues) << "]";
    out << "\n";
    out << "internal symmetry: dim=" << r.internal.dimension << " type=" << to_string(r.internal.type) << "\n";
    out << "automorphisms: " << r.automorphisms.automorphisms.size()
        << (r.automorphisms.cap_reached ? " (cap reached)" : "") << "\n";
    out << "blocks:";
    for (std::size_t s : r.blocks.block_sizes) out << " " << s;
    out << "\n";
    for (const auto& p : r.predictions) {
        out << "prediction " << p.name << ": predicted=" << (p.predicted ? "true" : "false") << " observed="
            << (p.observed ? (*p.observed ? "true" : "false") : "n/a");
        if (p.observed) out << (*p.observed == p.predicted ? " agree" : " DISAGREE");
        if (!p.detail.empty()) out << " (" << p.detail << ")";
        out << "\n";
    }
    for (const auto& f : r.flags) {
        if (!f.applicable) continue;
        out << "check " << f.name << ": " << (f.holds ? "ok" : "FAILED");
        if (!f.detail.empty()) out << " (" << f.detail << ")";
        out << "\n";
    }
    return out.str();
}

}  // namespace spinctrl
