#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace spinctrl {

// Validation failure carrying the offending field path (e.g. "controls[0]").
class SpecError : public std::invalid_argument {
public:
    SpecError(std::string path, const std::string& message)
        : std::invalid_argument(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct Edge {
    int m = 0;  // 1-based, m < n
    int n = 0;
    double gamma = 0.0;

    bool operator==(const Edge&) const = default;
};

enum class TopologyKind { chain, star, general };

struct Topology {
    TopologyKind kind = TopologyKind::general;
    std::vector<int> lengths;  // star branch lengths, empty otherwise

    bool operator==(const Topology&) const = default;
};

std::string to_string(TopologyKind kind);

// Immutable network description. Nodes are 1-based, edges are kept sorted by (m, n),
// controls sorted ascending.
class NetworkSpec {
public:
    NetworkSpec(int node_count, std::vector<Edge> edges, double kappa, std::vector<int> controls,
                std::optional<Topology> topology = std::nullopt);

    int node_count() const noexcept { return node_count_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    double kappa() const noexcept { return kappa_; }
    const std::vector<int>& controls() const noexcept { return controls_; }
    const std::optional<Topology>& topology() const noexcept { return topology_; }

    // Coupling between two nodes, 0 if not adjacent.
    double coupling(int a, int b) const;
    bool is_chain() const;
    bool is_connected() const;

    NetworkSpec with_controls(std::vector<int> controls) const;
    NetworkSpec with_kappa(double kappa) const;

    bool operator==(const NetworkSpec&) const = default;

private:
    int node_count_;
    std::vector<Edge> edges_;
    double kappa_;
    std::vector<int> controls_;
    std::optional<Topology> topology_;
};

struct Uniform {};
using Couplings = std::variant<Uniform, std::vector<double>>;

NetworkSpec make_chain(int length, const Couplings& couplings, double kappa,
                       std::vector<int> controls);

struct CenterSite {
    bool operator==(const CenterSite&) const = default;
};
struct BranchSite {
    int branch = 1;    // 1-based branch index p
    int position = 2;  // 2..lengths[p-1]
    bool operator==(const BranchSite&) const = default;
};
using ControlSite = std::variant<CenterSite, BranchSite>;

struct StarDescriptor {
    std::vector<int> branch_lengths;
    ControlSite control_site = CenterSite{};
};

// Global node index of branch p, position j (center is position 1 of every branch).
int star_node_index(const std::vector<int>& lengths, int branch, int position);
ControlSite parse_control_site(const std::string& text);
NetworkSpec make_star(const StarDescriptor& descriptor, double kappa);

NetworkSpec parse_network(const std::string& text);
std::string serialize_network(const NetworkSpec& spec);

}  // namespace spinctrl
