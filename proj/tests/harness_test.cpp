#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "hcvr/harness.hpp"

using namespace hcvr;
using namespace hcvr::harness;

TEST_CASE("family specs") {
    FamilySpec s;
    s.kind = FamilyKind::prefix;
    s.m = 4;
    CHECK_THROWS_AS(validate(s), UsageError);
    s.vertex = VertexSet::of({1, 2});
    s.inclusive = false;
    CHECK(build_family(s).size() == 5);
    s.kind = FamilyKind::levels;
    s.levels = {1, 5};
    CHECK_THROWS_AS(validate(s), UsageError);
    s.m = 0;
    CHECK_THROWS_AS(validate(s), UsageError);
    CHECK(parse_kind("link-target") == FamilyKind::link_target);
    CHECK_THROWS_AS(parse_kind("cube"), UsageError);
    CHECK(parse_window("3..5").lo == 3);
    CHECK(parse_window("3..5").hi == 5);
    CHECK(parse_window("7").hi == 7);
    CHECK_THROWS_AS(parse_window("5..3"), UsageError);
    CHECK_THROWS_AS(parse_window("a..3"), UsageError);
}

TEST_CASE("cmd_betti") {
    BettiRequest req;
    req.spec.m = 5;
    const Report r5 = cmd_betti(req);
    CHECK(r5.match);
    CHECK(r5.computed[4] == 1);
    CHECK(r5.computed[7] == 10);
    REQUIRE(r5.euler_consistent.has_value());
    CHECK(*r5.euler_consistent);

    req.spec.kind = FamilyKind::f123;
    const Report f = cmd_betti(req);
    CHECK(f.match);
    CHECK(f.computed[6] == 5);

    req.spec.kind = FamilyKind::full_cube;
    req.spec.m = 3;
    req.r = 2;
    req.windows = {{0, 3}};
    const Report q3 = cmd_betti(req);
    CHECK(q3.match);
    CHECK(q3.computed[3] == 1);

    req.spec.m = 7;
    req.r = 3;
    CHECK_THROWS_AS(cmd_betti(req), UsageError);
}

TEST_CASE("cmd_link") {
    const Report a = cmd_link(5, VertexSet::of({1, 2, 3, 5}));
    CHECK(a.match);
    CHECK(a.computed[6] == 1);
    CHECK(a.computed[3] == 1);
    const Report b = cmd_link(5, VertexSet::of({1, 2, 3, 4}));
    CHECK(b.match);
    CHECK(b.computed[3] == 0);
    const Report c = cmd_link(6, VertexSet::of({1, 2, 3, 6}));
    CHECK(c.match);
    CHECK(c.computed[3] == 2);
    CHECK_THROWS_AS(cmd_link(5, VertexSet::of({1, 2, 3})), UsageError);
}

TEST_CASE("cmd_sweep") {
    const SweepResult s = cmd_sweep(5, 5);
    CHECK(s.ok());
    CHECK(s.steps.size() == 6);
    CHECK(s.steps[0].vertex == VertexSet::of({1, 2, 3, 4}));
    CHECK(s.steps[0].delta_top == 1);
    CHECK(s.steps[0].delta_middle == 0);
    CHECK(s.steps[1].vertex == VertexSet::of({1, 2, 3, 5}));
    CHECK(s.steps[1].delta_top == 1);
    CHECK(s.steps[1].delta_middle == 1);
    REQUIRE(s.final_prediction.has_value());
    CHECK(s.final_match);
    CHECK_THROWS_AS(cmd_sweep(4, 4), UsageError);
}

TEST_CASE("cmd_facets and cmd_identities") {
    FacetRequest q;
    q.m = 4;
    const FacetReport r = cmd_facets(q);
    CHECK(r.ok());
    CHECK(r.clique_count == 256);
    q.kind = FacetKind::fn_fn1;
    q.n = 2;
    q.m = 5;
    CHECK(cmd_facets(q).ok());
    const IdentityReport id = cmd_identities(40);
    CHECK(id.ok());
    CHECK(id.rows.size() > 100);
    CHECK_THROWS_AS(cmd_identities(5), UsageError);
}

TEST_CASE("report serialization") {
    BettiRequest req;
    req.spec.m = 4;
    const Report r = cmd_betti(req);
    const auto j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    const std::vector<std::string> want{"command", "family", "r", "windows", "vertices", "facets", "dimension",
                                        "betti", "computed_dims", "prediction", "euler_consistent", "match",
                                        "stats"};
    CHECK(keys == want);
    CHECK(j["betti"]["7"] == 1);
    CHECK(j["match"] == true);
    const std::string row = csv_row(r);
    CHECK(row.rfind("betti,full-cube,4,3,,0..7,", 0) == 0);
    const std::string header = csv_header();
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}

TEST_CASE("facet export and import") {
    const auto path = std::filesystem::temp_directory_path() / "hcvr_harness_facets.txt";
    BettiRequest req;
    req.spec.m = 4;
    req.r = 2;
    req.export_facets = path.string();
    const Report r = cmd_betti(req);
    std::ifstream in(path);
    const Complex k = read_facets(in);
    const Report back = betti_of(k, {});
    CHECK(back.computed == r.computed);
    std::filesystem::remove(path);
}
