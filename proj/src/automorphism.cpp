#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "spinctrl/symmetry.hpp"

namespace spinctrl {

namespace {

constexpr double kWeightTol = 1e-12;

class AutomorphismSearch {
public:
    AutomorphismSearch(const NetworkSpec& spec, std::size_t cap) : n_(spec.node_count()), cap_(cap) {
        // weight classes: couplings equal within relative tolerance share an id (0 = no edge)
        std::vector<double> distinct;
        for (const Edge& e : spec.edges()) distinct.push_back(e.gamma);
        std::sort(distinct.begin(), distinct.end());
        std::vector<double> reps;
        for (double g : distinct) {
            if (reps.empty() || std::abs(g - reps.back()) > kWeightTol * std::max(std::abs(g), std::abs(reps.back()))) {
                reps.push_back(g);
            }
        }
        auto class_of = [&](double g) {
            for (std::size_t i = 0; i < reps.size(); ++i) {
                if (std::abs(g - reps[i]) <= kWeightTol * std::max(std::abs(g), std::abs(reps[i]))) {
                    return static_cast<int>(i) + 1;
                }
            }
            return 0;
        };
        w_.assign(n_, std::vector<int>(n_, 0));
        adj_.resize(n_);
        for (const Edge& e : spec.edges()) {
            const int c = class_of(e.gamma);
            w_[e.m - 1][e.n - 1] = w_[e.n - 1][e.m - 1] = c;
            adj_[e.m - 1].push_back(e.n - 1);
            adj_[e.n - 1].push_back(e.m - 1);
        }
        std::vector<bool> controlled(n_, false);
        for (int k : spec.controls()) controlled[k - 1] = true;
        refine(controlled);
        order_vertices();
    }

    AutomorphismResult run() {
        map_.assign(n_, -1);
        used_.assign(n_, false);
        search(0);
        if (!result_.cap_reached) result_.generators = generators(result_.automorphisms);
        return std::move(result_);
    }

private:
    void refine(const std::vector<bool>& controlled) {
        using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
        color_.assign(n_, 0);
        {
            std::map<std::pair<bool, std::vector<int>>, int> ids;
            std::vector<std::pair<bool, std::vector<int>>> sig(n_);
            for (int v = 0; v < n_; ++v) {
                std::vector<int> ws;
                for (int u : adj_[v]) ws.push_back(w_[v][u]);
                std::sort(ws.begin(), ws.end());
                sig[v] = {controlled[v], ws};
                ids.emplace(sig[v], 0);
            }
            int next = 0;
            for (auto& [_, id] : ids) id = next++;
            for (int v = 0; v < n_; ++v) color_[v] = ids[sig[v]];
        }
        for (int round = 0; round < n_; ++round) {
            std::map<Signature, int> ids;
            std::vector<Signature> sig(n_);
            for (int v = 0; v < n_; ++v) {
                std::vector<std::pair<int, int>> nb;
                for (int u : adj_[v]) nb.emplace_back(color_[u], w_[v][u]);
                std::sort(nb.begin(), nb.end());
                sig[v] = {color_[v], nb};
                ids.emplace(sig[v], 0);
            }
            int next = 0;
            for (auto& [_, id] : ids) id = next++;
            std::vector<int> fresh(n_);
            for (int v = 0; v < n_; ++v) fresh[v] = ids[sig[v]];
            const auto count = [](const std::vector<int>& c) { return std::set<int>(c.begin(), c.end()).size(); };
            const bool stable = count(fresh) == count(color_);
            color_ = std::move(fresh);
            if (stable) break;
        }
    }

    void order_vertices() {
        std::vector<bool> seen(n_, false);
        for (int s = 0; s < n_; ++s) {
            if (seen[s]) continue;
            std::queue<int> q;
            q.push(s);
            seen[s] = true;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                order_.push_back(v);
                for (int u : adj_[v]) {
                    if (!seen[u]) {
                        seen[u] = true;
                        q.push(u);
                    }
                }
            }
        }
    }

    void search(std::size_t depth) {
        if (result_.cap_reached) return;
        if (depth == order_.size()) {
            bool identity = true;
            for (int v = 0; v < n_; ++v) identity = identity && map_[v] == v;
            if (identity) return;
            if (result_.automorphisms.size() >= cap_) {
                result_.cap_reached = true;
                return;
            }
            std::vector<int> perm(n_);
            for (int v = 0; v < n_; ++v) perm[v] = map_[v] + 1;
            result_.automorphisms.push_back(std::move(perm));
            return;
        }
        const int v = order_[depth];
        for (int u = 0; u < n_; ++u) {
            if (used_[u] || color_[u] != color_[v]) continue;
            bool ok = true;
            for (std::size_t i = 0; i < depth && ok; ++i) {
                const int w = order_[i];
                ok = w_[v][w] == w_[u][map_[w]];
            }
            if (!ok) continue;
            map_[v] = u;
            used_[u] = true;
            search(depth + 1);
            used_[u] = false;
            map_[v] = -1;
        }
    }

    std::vector<std::vector<int>> generators(const std::vector<std::vector<int>>& all) const {
        std::vector<int> id(n_);
        for (int v = 0; v < n_; ++v) id[v] = v + 1;
        std::set<std::vector<int>> group{id};
        std::vector<std::vector<int>> gens;
        auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
            std::vector<int> c(n_);
            for (int v = 0; v < n_; ++v) c[v] = a[b[v] - 1];
            return c;
        };
        for (const auto& p : all) {
            if (group.count(p)) continue;
            gens.push_back(p);
            std::vector<std::vector<int>> frontier(group.begin(), group.end());
            while (!frontier.empty()) {
                std::vector<std::vector<int>> next;
                for (const auto& g : frontier) {
                    for (const auto& s : gens) {
                        auto c = compose(s, g);
                        if (group.insert(c).second) next.push_back(std::move(c));
                    }
                }
                frontier = std::move(next);
            }
        }
        return gens;
    }

    int n_;
    std::size_t cap_;
    std::vector<std::vector<int>> w_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> color_;
    std::vector<int> order_;
    std::vector<int> map_;
    std::vector<bool> used_;
    AutomorphismResult result_;
};

}  // namespace

AutomorphismResult graph_automorphisms(const NetworkSpec& spec, std::size_t cap) {
    return AutomorphismSearch(spec, cap).run();
}

Eigen::MatrixXd permutation_matrix(const std::vector<int>& perm) {
    const auto n = static_cast<Eigen::Index>(perm.size());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index v = 0; v < n; ++v) p(perm[v] - 1, v) = 1.0;
    return p;
}

}  // namespace spinctrl
