#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spinctrl/hamiltonian.hpp"
#include "spinctrl/json_io.hpp"
#include "spinctrl/lie.hpp"
#include "spinctrl/network.hpp"
#include "spinctrl/symmetry.hpp"

namespace spinctrl {

struct AnalysisOptions {
    double tolerance = 1e-9;
    ArithmeticMode mode = ArithmeticMode::floating;
    std::size_t closure_cap = 40;  // skip the closure when d exceeds this
    int excitation_number = 1;     // 2 only for chains
    std::uint64_t seed = 1;
};

// A closed-form statement about the network and whether the computation agrees with it.
struct Prediction {
    std::string name;
    std::string statement;
    bool predicted = false;
    std::optional<bool> observed;  // empty when the closure was skipped
    std::string detail;
};

struct ConsistencyFlag {
    std::string name;
    bool applicable = false;
    bool holds = false;
    std::string detail;
};

struct AnalysisReport {
    NetworkSpec network;
    int excitation_number = 1;
    std::size_t dimension = 0;
    bool closure_computed = false;
    std::string closure_note{};
    LieClosureResult closure{};
    ControllabilityVerdict verdict{};
    CommutantBasis commutant{};
    DarkStateSet dark{};
    AnticommutantResult internal{};
    AutomorphismResult automorphisms{};
    DecompositionReport blocks{};
    std::vector<Prediction> predictions{};
    std::vector<ConsistencyFlag> flags{};
    std::map<std::string, double> timings_ms{};
};

AnalysisReport analyze(const NetworkSpec& spec, const AnalysisOptions& options = {});

json symmetry_report_json(const CommutantBasis& commutant, const DarkStateSet& dark,
                          const AnticommutantResult& internal, const AutomorphismResult& automorphisms,
                          const DecompositionReport& blocks);
json report_to_json(const AnalysisReport& report, bool include_timings = true);
std::string report_to_text(const AnalysisReport& report);

// %.17g formatting used by every text output.
std::string fmt(double x);

}  // namespace spinctrl
