#include <gtest/gtest.h>

#include "spinctrl/acceptance.hpp"
#include "spinctrl/fixtures.hpp"
#include "spinctrl/report.hpp"
#include "spinctrl/tables.hpp"

using namespace spinctrl;

TEST(Report, ChainExampleIsConsistent) {
    const auto r = analyze(make_chain(7, Uniform{}, 0.0, {2}));
    EXPECT_TRUE(r.closure_computed);
    EXPECT_EQ(r.closure.dimension, 36u);
    EXPECT_FALSE(r.verdict.controllable);
    EXPECT_EQ(r.commutant.dimension, 2u);
    EXPECT_EQ(r.dark.count(), 1u);
    for (const auto& f : r.flags) {
        if (f.applicable) EXPECT_TRUE(f.holds) << f.name << ": " << f.detail;
    }
    const auto doc = report_to_json(r, false);
    EXPECT_EQ(doc["closure"]["dimension"], 36);
    EXPECT_FALSE(doc.contains("timings_ms"));
    EXPECT_TRUE(report_to_json(r, true).contains("timings_ms"));
}

TEST(Report, ReportsAreDeterministic) {
    const auto spec = make_star({{3, 4, 5}, CenterSite{}}, 1.0);
    EXPECT_EQ(report_to_json(analyze(spec), false).dump(), report_to_json(analyze(spec), false).dump());
}

TEST(Report, ClosureCap) {
    AnalysisOptions o;
    o.closure_cap = 5;
    const auto r = analyze(make_chain(8, Uniform{}, 0.0, {1}), o);
    EXPECT_FALSE(r.closure_computed);
    EXPECT_NE(r.closure_note.find("exceeds cap"), std::string::npos);
    for (const auto& p : r.predictions) {
        if (p.name == "xx_gcd" || p.name == "end_control") EXPECT_FALSE(p.observed.has_value()) << p.name;
        if (p.name == "bethe_symmetry") EXPECT_TRUE(p.observed.has_value());
    }
}

TEST(Report, TwoExcitation) {
    AnalysisOptions o;
    o.excitation_number = 2;
    // z_1 acts on the four pair states containing node 1
    const auto r = analyze(make_chain(5, Uniform{}, 0.0, {1}), o);
    EXPECT_EQ(r.dimension, 10u);
    EXPECT_EQ(r.closure.dimension, 25u);
}

TEST(Report, FormatKeepsFullPrecision) {
    EXPECT_EQ(fmt(0.1), "0.10000000000000001");
    EXPECT_EQ(fmt(36), "36");
}

TEST(Fixtures, LoadsBundledReference) {
    const auto ref = load_reference_values(default_fixture_path());
    EXPECT_EQ(ref.version, kReferenceVersion);
    EXPECT_EQ(ref.chain_example_dim, 36u);
    EXPECT_EQ(ref.two_excitation.size(), 4u);
    EXPECT_EQ(ref.inhomogeneous_h0.rows(), 10);
    EXPECT_FALSE(ref.sym.empty());
}

TEST(Fixtures, MissingFileIsAnError) {
    try {
        load_reference_values("/nonexistent/reference.json");
        FAIL();
    } catch (const FixtureError& e) {
        EXPECT_NE(std::string(e.what()).find("not found"), std::string::npos);
    }
    AcceptanceOptions o;
    o.fixture_path = "/nonexistent/reference.json";
    EXPECT_THROW(run_acceptance(o), FixtureError);
}

TEST(Tables, TwoExcitationTableMatches) {
    const auto ref = load_reference_values(default_fixture_path());
    const auto t = reproduce_table(TableId::two_excitation, ref);
    EXPECT_TRUE(t.mismatches.empty());
    EXPECT_FALSE(table_to_text(t).empty());
    EXPECT_EQ(table_to_json(t)["rows"].size(), t.rows.size());
}

TEST(Tables, XXBranchTableMatches) {
    const auto ref = load_reference_values(default_fixture_path());
    EXPECT_TRUE(reproduce_table(TableId::xx_branch, ref).mismatches.empty());
}

TEST(Tables, SymmetricKappaRowsAreVerified) {
    const auto ref = load_reference_values(default_fixture_path());
    const auto t = reproduce_table(TableId::sym, ref);
    for (const auto& row : t.rows) {
        EXPECT_TRUE(row.notes["all_computed_verified"].get<bool>()) << row.key;
        if (!row.match) EXPECT_TRUE(row.notes["mismatch_explained"].get<bool>()) << row.key;
    }
}

TEST(Tables, TableIds) {
    for (auto id : {TableId::sym, TableId::xx_branch, TableId::heisen_branch, TableId::two_excitation}) {
        EXPECT_EQ(parse_table_id(to_string(id)), id);
    }
    EXPECT_ANY_THROW(parse_table_id("nope"));
}

TEST(Acceptance, SummaryFormatting) {
    AcceptanceSummary s;
    s.criteria.push_back({1, "first", true, "ok"});
    s.criteria.push_back({2, "second", false, "bad"});
    s.seconds = 12.5;
    EXPECT_FALSE(s.all_passed());
    const auto text = format_summary(s);
    EXPECT_NE(text.find("PASS [1] first -- ok"), std::string::npos);
    EXPECT_NE(text.find("FAIL [2] second -- bad"), std::string::npos);
    EXPECT_EQ(text.find("12.5"), std::string::npos);
}
