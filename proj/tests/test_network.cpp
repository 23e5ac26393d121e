#include <gtest/gtest.h>

#include "spinctrl/json_io.hpp"
#include "spinctrl/network.hpp"

using namespace spinctrl;

namespace {

std::string error_path(const std::function<void()>& f) {
    try {
        f();
    } catch (const SpecError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST(Network, NormalizesEdgeOrder) {
    NetworkSpec s(3, {{3, 2, 2.0}, {2, 1, 1.0}}, 0.5, {2});
    ASSERT_EQ(s.edges().size(), 2u);
    EXPECT_EQ(s.edges()[0].m, 1);
    EXPECT_EQ(s.edges()[0].n, 2);
    EXPECT_EQ(s.edges()[1].m, 2);
    EXPECT_EQ(s.edges()[1].n, 3);
    EXPECT_DOUBLE_EQ(s.coupling(3, 2), 2.0);
    EXPECT_DOUBLE_EQ(s.coupling(1, 3), 0.0);
}

TEST(Network, RejectsBadInput) {
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 1, 1.0}}, 0, {1}); }), "edges[0]");
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 2, 0.0}}, 0, {1}); }), "edges[0]");
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 2, 1.0}, {2, 1, 3.0}}, 0, {1}); }), "edges");
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 2, 1.0}}, 0, {}); }), "controls");
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 2, 1.0}}, 0, {4}); }), "controls[0]");
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 2, 1.0}}, 0, {0}); }), "controls[0]");
    EXPECT_EQ(error_path([] { NetworkSpec(3, {{1, 4, 1.0}}, 0, {1}); }), "edges[0]");
}

TEST(Network, ControlOutOfRangeMessage) {
    try {
        make_chain(5, Uniform{}, 0.0, {0});
        FAIL();
    } catch (const SpecError& e) {
        EXPECT_NE(std::string(e.what()).find("out of range"), std::string::npos);
    }
}

TEST(Network, ChainDeclarationMustBePath) {
    EXPECT_THROW(NetworkSpec(4, {{1, 2, 1.0}, {3, 4, 1.0}}, 0, {1}, Topology{TopologyKind::chain, {}}), SpecError);
    EXPECT_THROW(NetworkSpec(4, {{1, 2, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}}, 0, {1}, Topology{TopologyKind::chain, {}}),
                 SpecError);
    EXPECT_NO_THROW(NetworkSpec(3, {{1, 2, 1.0}, {2, 3, 1.0}}, 0, {1}, Topology{TopologyKind::chain, {}}));
}

TEST(Network, ChainAndConnectivity) {
    const auto c = make_chain(5, std::vector<double>{1, 2, 3, 4}, 1.0, {1, 2});
    EXPECT_TRUE(c.is_chain());
    EXPECT_TRUE(c.is_connected());
    EXPECT_DOUBLE_EQ(c.coupling(3, 4), 3.0);
    EXPECT_THROW(make_chain(5, std::vector<double>{1, 2}, 0.0, {1}), SpecError);
    const NetworkSpec pair(2, {}, 0.0, {1});
    EXPECT_FALSE(pair.is_connected());
}

TEST(Network, StarIndexing) {
    const std::vector<int> lengths{5, 4, 3};
    EXPECT_EQ(star_node_index(lengths, 1, 1), 1);
    EXPECT_EQ(star_node_index(lengths, 1, 2), 2);
    EXPECT_EQ(star_node_index(lengths, 1, 5), 5);
    EXPECT_EQ(star_node_index(lengths, 2, 2), 6);
    EXPECT_EQ(star_node_index(lengths, 3, 3), 10);

    const auto star = make_star({lengths, CenterSite{}}, 0.0);
    EXPECT_EQ(star.node_count(), 10);
    EXPECT_EQ(star.edges().size(), 9u);
    EXPECT_EQ(star.controls(), std::vector<int>{1});
    EXPECT_TRUE(star.is_connected());
    EXPECT_FALSE(star.is_chain());

    const auto end = make_star({lengths, parse_control_site("2:4")}, 1.0);
    EXPECT_EQ(end.controls(), std::vector<int>{8});
    EXPECT_TRUE(std::holds_alternative<CenterSite>(parse_control_site("center")));
    EXPECT_ANY_THROW(parse_control_site("4:1"));
    EXPECT_ANY_THROW(parse_control_site("x"));
}

TEST(Network, JsonRoundTrip) {
    const auto specs = {make_chain(4, std::vector<double>{1.5, 0.25, 3}, -0.75, {2, 3}),
                        make_star({{3, 2, 4}, BranchSite{3, 4}}, 1.0),
                        NetworkSpec(4, {{1, 3, 0.1}, {2, 4, 1e-3}, {1, 4, 7.0}}, 0.3, {4})};
    for (const auto& s : specs) {
        EXPECT_EQ(parse_network(serialize_network(s)), s);
    }
}

TEST(Network, JsonShorthands) {
    const auto chain = parse_network(R"({"nodes": 4, "kappa": 1,
        "topology": {"type": "chain", "length": 4, "couplings": "uniform"}, "controls": [1]})");
    EXPECT_EQ(chain, make_chain(4, Uniform{}, 1.0, {1}));

    const auto star = parse_network(R"({"kappa": 0, "topology": {"type": "star", "lengths": [5, 4, 3]},
        "controls": "center"})");
    EXPECT_EQ(star, make_star({{5, 4, 3}, CenterSite{}}, 0.0));
}

TEST(Network, JsonErrors) {
    EXPECT_THROW(parse_network(R"({"nodes": 3, "kappa": 0, "edges": [[1,2,1]], "controls": [1], "extra": 1})"),
                 SpecError);
    EXPECT_THROW(parse_network(R"({"nodes": 3, "kappa": 0, "edges": [[1,2]], "controls": [1]})"), SpecError);
    EXPECT_THROW(parse_network("not json"), SpecError);
}
