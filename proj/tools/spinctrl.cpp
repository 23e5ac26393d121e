#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "spinctrl/acceptance.hpp"
#include "spinctrl/analytic.hpp"
#include "spinctrl/fixtures.hpp"
#include "spinctrl/network.hpp"
#include "spinctrl/report.hpp"
#include "spinctrl/tables.hpp"

using namespace spinctrl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAcceptance = 2;

struct AnalysisFlags {
    double tolerance = 1e-9;
    bool exact = false;
    std::uint64_t seed = 1;
    std::string json_out;
    int excitation = 1;
    std::size_t cap = 40;
    bool emit_network = false;
};

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
    cmd->add_option("--tol", f.tolerance, "rank tolerance")->check(CLI::PositiveNumber);
    cmd->add_flag("--exact", f.exact, "exact rational arithmetic for the closure");
    cmd->add_option("--seed", f.seed, "seed for randomized checks");
    cmd->add_option("--json", f.json_out, "write the JSON report to this file ('-' for stdout)");
    cmd->add_option("--excitation", f.excitation, "excitation subspace")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--cap", f.cap, "skip the closure above this subspace dimension");
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int run_analysis(const NetworkSpec& spec, const AnalysisFlags& f) {
    if (f.emit_network) {
        std::cout << serialize_network(spec) << "\n";
        return kExitOk;
    }
    AnalysisOptions opts;
    opts.tolerance = f.tolerance;
    opts.mode = f.exact ? ArithmeticMode::exact : ArithmeticMode::floating;
    opts.seed = f.seed;
    opts.excitation_number = f.excitation;
    opts.closure_cap = f.cap;
    const auto report = analyze(spec, opts);
    if (!f.json_out.empty()) write_output(f.json_out, report_to_json(report).dump(2) + "\n");
    if (f.json_out != "-") std::cout << report_to_text(report);
    return kExitOk;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("not an integer: " + item);
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("not a number: " + item);
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinctrl: controllability and symmetry analysis of spin networks"};
    app.require_subcommand(1);

    AnalysisFlags analyze_flags;
    std::string input;
    auto* analyze_cmd = app.add_subcommand("analyze", "analyze a network description (JSON)");
    analyze_cmd->add_option("--input,-i", input, "network JSON file ('-' for stdin)")->required();
    add_analysis_flags(analyze_cmd, analyze_flags);

    AnalysisFlags chain_flags;
    int chain_length = 0;
    double chain_kappa = 0.0;
    std::string chain_controls, chain_couplings;
    auto* chain_cmd = app.add_subcommand("chain", "analyze a chain");
    chain_cmd->add_option("--length,-N", chain_length, "number of nodes")->required();
    chain_cmd->add_option("--kappa", chain_kappa, "anisotropy");
    chain_cmd->add_option("--control", chain_controls, "controlled nodes, e.g. 1 or 1,2")->required();
    chain_cmd->add_option("--couplings", chain_couplings, "comma-separated couplings (default uniform)");
    chain_cmd->add_flag("--emit-network", chain_flags.emit_network, "print the network JSON and exit");
    add_analysis_flags(chain_cmd, chain_flags);

    AnalysisFlags star_flags;
    std::string star_lengths, star_control = "center";
    double star_kappa = 0.0;
    auto* star_cmd = app.add_subcommand("star", "analyze a star of chains joined at a center");
    star_cmd->add_option("--lengths", star_lengths, "branch lengths including the center, e.g. 5,4,3")->required();
    star_cmd->add_option("--control", star_control, "'center' or 'p:j' (branch p, position j)");
    star_cmd->add_option("--kappa", star_kappa, "anisotropy");
    star_cmd->add_flag("--emit-network", star_flags.emit_network, "print the network JSON and exit");
    add_analysis_flags(star_cmd, star_flags);

    int bethe_length = 0, bethe_control = 0;
    auto* bethe_cmd = app.add_subcommand("bethe", "anisotropies giving a dark state on a uniform chain");
    bethe_cmd->add_option("--length,-N", bethe_length, "number of nodes")->required();
    bethe_cmd->add_option("--control,-k", bethe_control, "controlled node")->required();

    std::string table_id, table_fixtures, table_json;
    bool table_exact = false;
    unsigned table_threads = 0;
    auto* table_cmd = app.add_subcommand("table", "reproduce a reference table");
    table_cmd->add_option("--id", table_id, "sym | xx-branch | heisen-branch | two-excitation")->required();
    table_cmd->add_option("--json", table_json, "write JSON to this file ('-' for stdout)");
    table_cmd->add_flag("--exact", table_exact, "exact rational arithmetic for closures");
    table_cmd->add_option("--fixtures", table_fixtures, "reference values file");
    table_cmd->add_option("--threads", table_threads, "worker threads (0: all cores)");

    AcceptanceOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
    verify_cmd->add_option("--tol", verify_opts.tolerance, "rank tolerance")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_opts.seed, "seed for random fixtures");
    verify_cmd->add_option("--fixtures", verify_opts.fixture_path, "reference values file");
    verify_cmd->add_option("--threads", verify_opts.threads, "worker threads (0: all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze_cmd) return run_analysis(parse_network(slurp(input)), analyze_flags);
        if (*chain_cmd) {
            Couplings couplings = Uniform{};
            if (!chain_couplings.empty()) couplings = parse_double_list(chain_couplings);
            return run_analysis(make_chain(chain_length, couplings, chain_kappa, parse_int_list(chain_controls)),
                                chain_flags);
        }
        if (*star_cmd) {
            StarDescriptor desc{parse_int_list(star_lengths), parse_control_site(star_control)};
            return run_analysis(make_star(desc, star_kappa), star_flags);
        }
        if (*bethe_cmd) {
            const auto result = bethe_symmetric_kappas(bethe_length, bethe_control);
            if (result.all_kappa()) {
                std::cout << "N=" << bethe_length << " k=" << bethe_control
                          << ": dark state for every kappa (mirror center)\n";
                return kExitOk;
            }
            if (result.solutions.empty()) {
                std::cout << "N=" << bethe_length << " k=" << bethe_control << ": no symmetric kappa\n";
                return kExitOk;
            }
            for (const auto& s : result.solutions) {
                std::cout << "j=" << s.mode_index << " theta/pi=" << fmt(s.theta / M_PI) << " kappa=" << fmt(s.kappa)
                          << " verified=" << (s.verified ? "yes" : "no") << " residual=" << fmt(s.residual) << "\n";
            }
            return kExitOk;
        }
        if (*table_cmd) {
            const auto ref = load_reference_values(table_fixtures.empty() ? default_fixture_path() : table_fixtures);
            TableOptions opts;
            opts.mode = table_exact ? ArithmeticMode::exact : ArithmeticMode::floating;
            opts.threads = table_threads;
            const auto report = reproduce_table(parse_table_id(table_id), ref, opts);
            if (!table_json.empty()) write_output(table_json, table_to_json(report).dump(2) + "\n");
            if (table_json != "-") std::cout << table_to_text(report);
            return kExitOk;
        }
        if (*verify_cmd) {
            const auto summary = run_acceptance(verify_opts);
            std::cout << format_summary(summary);
            std::fprintf(stderr, "elapsed %.1f s\n", summary.seconds);
            return summary.all_passed() ? kExitOk : kExitAcceptance;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
