#include "spinctrl/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "spinctrl/json_io.hpp"

namespace spinctrl {

namespace {

std::string indexed(const std::string& field, std::size_t i) {
    return field + "[" + std::to_string(i) + "]";
}

void require_in_range(int node, int n, const std::string& path) {
    if (node < 1 || node > n) {
        throw SpecError(path, "index out of range (" + std::to_string(node) + " not in 1.." +
                                  std::to_string(n) + ")");
    }
}

std::vector<std::pair<int, int>> star_edge_pairs(const std::vector<int>& lengths) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t p = 0; p < lengths.size(); ++p) {
        int prev = 1;
        for (int j = 2; j <= lengths[p]; ++j) {
            int node = star_node_index(lengths, static_cast<int>(p) + 1, j);
            pairs.emplace_back(std::min(prev, node), std::max(prev, node));
            prev = node;
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

void validate_star_lengths(const std::vector<int>& lengths, const std::string& path) {
    if (lengths.size() < 2) throw SpecError(path, "star needs at least 2 branches");
    for (std::size_t p = 0; p < lengths.size(); ++p) {
        if (lengths[p] < 2) throw SpecError(indexed(path, p), "branch length must be >= 2");
    }
}

}  // namespace

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::chain: return "chain";
        case TopologyKind::star: return "star";
        case TopologyKind::general: return "general";
    }
    return "general";
}

NetworkSpec::NetworkSpec(int node_count, std::vector<Edge> edges, double kappa,
                         std::vector<int> controls, std::optional<Topology> topology)
    : node_count_(node_count),
      edges_(std::move(edges)),
      kappa_(kappa),
      controls_(std::move(controls)),
      topology_(std::move(topology)) {
    if (node_count_ < 1) throw SpecError("nodes", "node count must be positive");
    if (!std::isfinite(kappa_)) throw SpecError("kappa", "must be finite");

    for (std::size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        const std::string path = indexed("edges", i);
        require_in_range(e.m, node_count_, path);
        require_in_range(e.n, node_count_, path);
        if (e.m == e.n) throw SpecError(path, "self-loop");
        if (e.m > e.n) std::swap(e.m, e.n);
        if (!std::isfinite(e.gamma)) throw SpecError(path, "coupling must be finite");
        if (e.gamma == 0.0) throw SpecError(path, "zero coupling (omit the edge instead)");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.m, a.n) < std::tie(b.m, b.n); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
        if (edges_[i].m == edges_[i - 1].m && edges_[i].n == edges_[i - 1].n) {
            throw SpecError("edges", "duplicate edge (" + std::to_string(edges_[i].m) + "," +
                                         std::to_string(edges_[i].n) + ")");
        }
    }

    if (controls_.empty()) throw SpecError("controls", "control set must be nonempty");
    for (std::size_t i = 0; i < controls_.size(); ++i) {
        require_in_range(controls_[i], node_count_, indexed("controls", i));
    }
    std::sort(controls_.begin(), controls_.end());
    if (std::adjacent_find(controls_.begin(), controls_.end()) != controls_.end()) {
        throw SpecError("controls", "duplicate control index");
    }

    if (topology_) {
        if (topology_->kind == TopologyKind::chain) {
            topology_->lengths.clear();
            if (!is_chain()) throw SpecError("topology", "disconnected or non-path chain declaration");
        } else if (topology_->kind == TopologyKind::star) {
            validate_star_lengths(topology_->lengths, "topology.lengths");
            int expected = 1;
            for (int l : topology_->lengths) expected += l - 1;
            if (expected != node_count_) {
                throw SpecError("topology.lengths", "star lengths imply " + std::to_string(expected) +
                                                        " nodes, spec has " + std::to_string(node_count_));
            }
            std::vector<std::pair<int, int>> have;
            for (const Edge& e : edges_) have.emplace_back(e.m, e.n);
            if (have != star_edge_pairs(topology_->lengths)) {
                throw SpecError("edges", "edge set does not match the declared star");
            }
        } else {
            topology_->lengths.clear();
        }
    }
}

double NetworkSpec::coupling(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const Edge& e : edges_) {
        if (e.m == a && e.n == b) return e.gamma;
    }
    return 0.0;
}

bool NetworkSpec::is_chain() const {
    if (static_cast<int>(edges_.size()) != node_count_ - 1) return false;
    for (int i = 0; i < node_count_ - 1; ++i) {
        if (edges_[i].m != i + 1 || edges_[i].n != i + 2) return false;
    }
    return true;
}

bool NetworkSpec::is_connected() const {
    std::vector<std::vector<int>> adj(node_count_ + 1);
    for (const Edge& e : edges_) {
        adj[e.m].push_back(e.n);
        adj[e.n].push_back(e.m);
    }
    std::vector<bool> seen(node_count_ + 1, false);
    std::queue<int> todo;
    todo.push(1);
    seen[1] = true;
    int count = 1;
    while (!todo.empty()) {
        int v = todo.front();
        todo.pop();
        for (int w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                todo.push(w);
            }
        }
    }
    return count == node_count_;
}

NetworkSpec NetworkSpec::with_controls(std::vector<int> controls) const {
    return NetworkSpec(node_count_, edges_, kappa_, std::move(controls), topology_);
}

NetworkSpec NetworkSpec::with_kappa(double kappa) const {
    return NetworkSpec(node_count_, edges_, kappa, controls_, topology_);
}

NetworkSpec make_chain(int length, const Couplings& couplings, double kappa,
                       std::vector<int> controls) {
    if (length < 2) throw SpecError("length", "chain length must be >= 2");
    std::vector<double> gammas(length - 1, 1.0);
    if (const auto* list = std::get_if<std::vector<double>>(&couplings)) {
        if (static_cast<int>(list->size()) != length - 1) {
            throw SpecError("couplings", "expected " + std::to_string(length - 1) + " couplings, got " +
                                             std::to_string(list->size()));
        }
        for (std::size_t i = 0; i < list->size(); ++i) {
            if ((*list)[i] == 0.0) {
                throw SpecError(indexed("couplings", i), "zero coupling disconnects the chain");
            }
        }
        gammas = *list;
    }
    std::vector<Edge> edges;
    for (int n = 1; n < length; ++n) edges.push_back({n, n + 1, gammas[n - 1]});
    return NetworkSpec(length, std::move(edges), kappa, std::move(controls),
                       Topology{TopologyKind::chain, {}});
}

int star_node_index(const std::vector<int>& lengths, int branch, int position) {
    if (branch < 1 || branch > static_cast<int>(lengths.size())) {
        throw SpecError("control_site", "branch index out of range");
    }
    if (position == 1) return 1;
    if (position < 2 || position > lengths[branch - 1]) {
        throw SpecError("control_site", "position out of range for branch " + std::to_string(branch));
    }
    int offset = 1;
    for (int q = 0; q < branch - 1; ++q) offset += lengths[q] - 1;
    return offset + (position - 1);
}

ControlSite parse_control_site(const std::string& text) {
    if (text == "center") return CenterSite{};
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw SpecError("control_site", "expected 'center' or 'p:j', got '" + text + "'");
    }
    int p = 0, j = 0;
    try {
        std::size_t used_p = 0, used_j = 0;
        const std::string ps = text.substr(0, colon), js = text.substr(colon + 1);
        p = std::stoi(ps, &used_p);
        j = std::stoi(js, &used_j);
        if (used_p != ps.size() || used_j != js.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw SpecError("control_site", "expected 'center' or 'p:j', got '" + text + "'");
    }
    if (p < 1) throw SpecError("control_site", "branch index must be >= 1");
    if (j < 2) throw SpecError("control_site", "position must be >= 2 (use 'center' for the center)");
    return BranchSite{p, j};
}

NetworkSpec make_star(const StarDescriptor& descriptor, double kappa) {
    const auto& lengths = descriptor.branch_lengths;
    validate_star_lengths(lengths, "lengths");
    int n = 1;
    for (int l : lengths) n += l - 1;
    std::vector<Edge> edges;
    for (auto [a, b] : star_edge_pairs(lengths)) edges.push_back({a, b, 1.0});
    int control = 1;
    if (const auto* site = std::get_if<BranchSite>(&descriptor.control_site)) {
        if (site->position < 2) throw SpecError("control_site", "branch position must be >= 2");
        control = star_node_index(lengths, site->branch, site->position);
    }
    return NetworkSpec(n, std::move(edges), kappa, {control}, Topology{TopologyKind::star, lengths});
}

namespace {

int require_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw SpecError(path, "expected integer");
    return v.get<int>();
}

double require_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SpecError(path, "expected number");
    return v.get<double>();
}

std::vector<int> int_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw SpecError(path, "expected array");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(require_int(v[i], indexed(path, i)));
    return out;
}

TopologyKind parse_kind(const json& v) {
    if (!v.is_string()) throw SpecError("topology.type", "expected string");
    const auto s = v.get<std::string>();
    if (s == "chain") return TopologyKind::chain;
    if (s == "star") return TopologyKind::star;
    if (s == "general") return TopologyKind::general;
    throw SpecError("topology.type", "unknown topology '" + s + "'");
}

}  // namespace

NetworkSpec network_from_json(const json& doc) {
    if (!doc.is_object()) throw SpecError("", "network must be a JSON object");
    static const std::set<std::string> known{"kappa", "nodes", "edges", "controls", "topology"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.count(key)) throw SpecError(key, "unknown field");
    }
    if (!doc.contains("kappa")) throw SpecError("kappa", "missing field");
    const double kappa = require_number(doc["kappa"], "kappa");
    if (!doc.contains("controls")) throw SpecError("controls", "missing field");
    const json& controls_doc = doc["controls"];

    std::optional<Topology> topology;
    const json* topo = nullptr;
    if (doc.contains("topology")) {
        topo = &doc["topology"];
        if (!topo->is_object()) throw SpecError("topology", "expected object");
        if (!topo->contains("type")) throw SpecError("topology.type", "missing field");
        topology = Topology{parse_kind((*topo)["type"]), {}};
        if (topo->contains("lengths")) {
            if (topology->kind != TopologyKind::star) {
                throw SpecError("topology.lengths", "only valid for star topology");
            }
            topology->lengths = int_list((*topo)["lengths"], "topology.lengths");
        }
    }

    const bool is_star = topology && topology->kind == TopologyKind::star;
    if (controls_doc.is_string() && !is_star) {
        throw SpecError("controls", "named control sites require a star topology");
    }

    if (!doc.contains("edges")) {
        if (topology && topology->kind == TopologyKind::chain && topo->contains("length")) {
            const int length = require_int((*topo)["length"], "topology.length");
            if (doc.contains("nodes") && require_int(doc["nodes"], "nodes") != length) {
                throw SpecError("nodes", "conflicts with topology.length");
            }
            Couplings couplings = Uniform{};
            if (topo->contains("couplings")) {
                const json& c = (*topo)["couplings"];
                if (c.is_string()) {
                    if (c.get<std::string>() != "uniform") {
                        throw SpecError("topology.couplings", "expected \"uniform\" or a list");
                    }
                } else if (c.is_array()) {
                    std::vector<double> g;
                    for (std::size_t i = 0; i < c.size(); ++i) {
                        g.push_back(require_number(c[i], indexed("topology.couplings", i)));
                    }
                    couplings = g;
                } else {
                    throw SpecError("topology.couplings", "expected \"uniform\" or a list");
                }
            }
            return make_chain(length, couplings, kappa, int_list(controls_doc, "controls"));
        }
        if (is_star) {
            StarDescriptor desc{topology->lengths, CenterSite{}};
            if (controls_doc.is_string()) {
                desc.control_site = parse_control_site(controls_doc.get<std::string>());
                return make_star(desc, kappa);
            }
            NetworkSpec base = make_star(desc, kappa);
            if (doc.contains("nodes") && require_int(doc["nodes"], "nodes") != base.node_count()) {
                throw SpecError("nodes", "conflicts with topology.lengths");
            }
            return base.with_controls(int_list(controls_doc, "controls"));
        }
        throw SpecError("edges", "missing field");
    }

    if (!doc.contains("nodes")) throw SpecError("nodes", "missing field");
    const int nodes = require_int(doc["nodes"], "nodes");
    const json& edges_doc = doc["edges"];
    if (!edges_doc.is_array()) throw SpecError("edges", "expected array");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < edges_doc.size(); ++i) {
        const json& e = edges_doc[i];
        const std::string path = indexed("edges", i);
        if (!e.is_array() || e.size() != 3) throw SpecError(path, "expected [m, n, gamma]");
        edges.push_back({require_int(e[0], path + "[0]"), require_int(e[1], path + "[1]"),
                         require_number(e[2], path + "[2]")});
    }
    std::vector<int> controls;
    if (controls_doc.is_string()) {
        auto site = parse_control_site(controls_doc.get<std::string>());
        controls.push_back(1);
        if (const auto* b = std::get_if<BranchSite>(&site)) {
            controls[0] = star_node_index(topology->lengths, b->branch, b->position);
        }
    } else {
        controls = int_list(controls_doc, "controls");
    }
    return NetworkSpec(nodes, std::move(edges), kappa, std::move(controls), topology);
}

json network_to_json(const NetworkSpec& spec) {
    json edges = json::array();
    for (const Edge& e : spec.edges()) edges.push_back(json::array({e.m, e.n, e.gamma}));
    json doc{{"kappa", spec.kappa()},
             {"nodes", spec.node_count()},
             {"edges", edges},
             {"controls", spec.controls()}};
    if (spec.topology()) {
        json topo{{"type", to_string(spec.topology()->kind)}};
        if (spec.topology()->kind == TopologyKind::star) topo["lengths"] = spec.topology()->lengths;
        doc["topology"] = topo;
    }
    return doc;
}

NetworkSpec parse_network(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("", std::string("malformed JSON: ") + e.what());
    }
    return network_from_json(doc);
}

std::string serialize_network(const NetworkSpec& spec) { return network_to_json(spec).dump(2); }

}  // namespace spinctrl
