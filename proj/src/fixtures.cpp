#include "spinctrl/fixtures.hpp"

#include <cstdlib>
#include <fstream>

#include "spinctrl/json_io.hpp"

#ifndef SPINCTRL_DEFAULT_FIXTURES
#define SPINCTRL_DEFAULT_FIXTURES "data/reference_values.json"
#endif

namespace spinctrl {

namespace {

std::vector<BranchRow> branch_rows(const json& rows) {
    std::vector<BranchRow> out;
    for (const auto& r : rows) {
        out.push_back({r.at("N").get<int>(), r.at("lengths").get<std::vector<int>>(),
                       r.at("symmetry").get<bool>(), r.at("dim").get<std::size_t>(),
                       r.at("controllable").get<bool>()});
    }
    return out;
}

}  // namespace

std::string default_fixture_path() {
    if (const char* env = std::getenv("SPINCTRL_FIXTURES"); env && *env) return env;
    return SPINCTRL_DEFAULT_FIXTURES;
}

ReferenceValues load_reference_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("reference fixture not found: " + path);
    ReferenceValues ref;
    try {
        const json doc = json::parse(in);
        ref.version = doc.at("version").get<int>();
        if (ref.version != kReferenceVersion) {
            throw FixtureError("reference fixture " + path + " has version " + std::to_string(ref.version) +
                               ", expected " + std::to_string(kReferenceVersion));
        }
        for (const auto& r : doc.at("sym").at("rows")) {
            SymRow row;
            row.n = r.at("N").get<int>();
            row.k = r.at("k").get<int>();
            for (const auto& t : r.at("theta")) row.theta.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
            row.kappa_text = r.at("kappa_text").get<std::string>();
            row.kappa = r.at("kappa").get<std::vector<double>>();
            row.no_solution = r.at("no_solution").get<bool>();
            ref.sym.push_back(std::move(row));
        }
        ref.xx_kappa = doc.at("xx_branch").at("kappa").get<double>();
        ref.xx_branch = branch_rows(doc.at("xx_branch").at("rows"));
        ref.heisen_kappa = doc.at("heisen_branch").at("kappa").get<double>();
        ref.heisen_branch = branch_rows(doc.at("heisen_branch").at("rows"));
        const json& two_excitation = doc.at("two_excitation");
        ref.two_excitation_chain_length = two_excitation.at("chain_length").get<int>();
        for (const auto& r : two_excitation.at("rows")) {
            ref.two_excitation.push_back({r.at("label").get<std::string>(), r.at("controlled_states").get<int>(),
                                r.at("dim").get<std::size_t>(), r.at("symmetry").get<bool>()});
        }
        const json& inh = two_excitation.at("inhomogeneous");
        ref.inhomogeneous_couplings = inh.at("couplings").get<std::vector<double>>();
        ref.inhomogeneous_controlled_states = inh.at("controlled_states").get<int>();
        ref.inhomogeneous_dim = inh.at("dim").get<std::size_t>();
        ref.inhomogeneous_symmetry = inh.at("symmetry").get<bool>();
        ref.inhomogeneous_h0 = matrix_from_json(inh.at("h0"));
        const json& ex = doc.at("xx_chain_example");
        ref.chain_example_n = ex.at("N").get<int>();
        ref.chain_example_k = ex.at("k").get<int>();
        ref.chain_example_dim = ex.at("dim").get<std::size_t>();
        ref.chain_example_m = matrix_from_json(ex.at("M"));
    } catch (const json::exception& e) {
        throw FixtureError("reference fixture " + path + " is malformed: " + e.what());
    } catch (const std::invalid_argument& e) {
        throw FixtureError("reference fixture " + path + " is malformed: " + e.what());
    }
    return ref;
}

}  // namespace spinctrl
