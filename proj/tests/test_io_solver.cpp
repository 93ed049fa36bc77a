#include <doctest.h>

#include <json.hpp>

#include "pcycle/io.hpp"
#include "pcycle/oracle.hpp"
#include "pcycle/solver.hpp"
#include "support.hpp"

using namespace pcycle;
using namespace pcycle::test;

TEST_CASE("parse_matrix") {
    const CostMatrix m = parse_matrix("2\ninf 5\n3 inf");
    CHECK(m.size() == 2);
    CHECK(m(0, 1) == 5);
    CHECK(m(1, 0) == 3);
    CHECK(is_inf(m(0, 0)));
    CHECK(parse_matrix("2\r\n- 5\r\n3 -\r\n") == m);
    CHECK(parse_matrix("  2\n\ninf\t5\n3 inf\n\n") == m);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_matrix("2\ninf 5\n3 4"), DiagonalNotInf);
    CHECK_THROWS_AS(parse_matrix("2\ninf 5 1\n3 inf"), NonSquare);
    CHECK_THROWS_AS(parse_matrix("3\ninf 5 1\n3 inf 1"), NonSquare);
    CHECK_THROWS_AS(parse_matrix("2\ninf 5\n3 inf\n1 2"), NonSquare);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
    CHECK_THROWS_AS(parse_matrix("1\ninf"), ParseError);
    try {
        parse_matrix("2\ninf 5\n3x inf\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
    }
    try {
        parse_matrix("2\ninf  inf\n3 inf\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 6);
    }
}

TEST_CASE("bundled fixture") {
    const CostMatrix m = load_matrix(PCYCLE_EXAMPLE2_PATH);
    CHECK(m == example2_matrix());
    CHECK(m.size() == 20);
    CHECK(m(0, 1) == 88);
    CHECK(m(19, 18) == 84);
    CHECK(render_matrix(m).substr(0, 10) == "20\ninf 88 ");
}

TEST_CASE("generator") {
    CHECK(gen_instance(5, 99, 42) == gen_instance(5, 99, 42));
    CHECK_FALSE(gen_instance(5, 99, 42) == gen_instance(5, 99, 43));
    const CostMatrix ones = gen_instance(5, 1, 0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            if (i != j) CHECK(ones(i, j) == 1);
    CHECK(derangement_value(ones, Derangement::cyclic(5)) == 5);
    CHECK_THROWS_AS(gen_instance(1, 5, 0), InvalidArgument);
    CHECK_THROWS_AS(gen_instance(4, 0, 0), InvalidArgument);
}

TEST_CASE("property: render/parse round trip") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const CostMatrix m = gen_instance(2 + static_cast<int>(seed % 15), 1 + static_cast<Cost>(seed * 37 % 1000), seed);
        CHECK(parse_matrix(render_matrix(m)) == m);
        CHECK(matrix_checksum(parse_matrix(render_matrix(m))) == matrix_checksum(m));
    }
}

TEST_CASE("solve the worked example") {
    Trace trace;
    const SolveReport rep = solve(example2_matrix(), SolveOptions{}, &trace);
    CHECK(rep.initial_value == 1300);
    CHECK(rep.phase1_value == 221);
    REQUIRE(rep.ap_value);
    CHECK(*rep.ap_value == 212);
    REQUIRE(rep.tour_value);
    CHECK(*rep.tour_value == 213);
    CHECK(rep.exactness == Exactness::CertifiedOptimal);
    CHECK(rep.timings.empty());

    const auto j = nlohmann::json::parse(report_to_json(rep));
    CHECK(j["ap_value"] == 212);
    CHECK(j["tour_value"] == 213);
    CHECK(j["exactness"] == "certified_optimal");
    CHECK(j["instance"]["n"] == 20);
    CHECK_FALSE(j.contains("timings"));
    for (const auto& e : trace.events()) CHECK(nlohmann::json::parse(event_to_json(e)).contains("value_after"));
}

TEST_CASE("phase selection") {
    SolveOptions o;
    o.phases = 1;
    const SolveReport p1 = solve(example2_matrix(), o);
    CHECK_FALSE(p1.ap_value);
    CHECK(p1.exactness == Exactness::Heuristic);
    REQUIRE(p1.tour_value);  // the cyclic start is a tour
    o.phases = 2;
    const SolveReport p12 = solve(example2_matrix(), o);
    CHECK(*p12.ap_value == 212);
    CHECK(p12.patch_added == std::nullopt);
    o.phases = 4;
    CHECK_THROWS_AS(solve(example2_matrix(), o), InvalidArgument);
    o.phases = 3;
    o.restarts = 0;
    CHECK_THROWS_AS(solve(example2_matrix(), o), InvalidArgument);
}

TEST_CASE("two vertices: the only tour") {
    const CostMatrix m = gen_instance(2, 9, 0);
    const SolveReport rep = solve(m, SolveOptions{});
    CHECK(*rep.tour_value == m(0, 1) + m(1, 0));
    CHECK(rep.exactness == Exactness::CertifiedOptimal);
}

TEST_CASE("restarts") {
    const CostMatrix m = gen_instance(12, 99, 4);
    SolveOptions o;
    o.restarts = 5;
    o.seed = 17;
    const SolveReport a = solve(m, o);
    const SolveReport b = solve(m, o);
    CHECK(report_to_json(a) == report_to_json(b));
    CHECK(a.restarts.size() == 5);
    for (const auto& r : a.restarts) CHECK(a.phase1_value <= r.final_value);
    CHECK(is_tour(random_tour(12, 3)));
    CHECK(random_tour(12, 3) == random_tour(12, 3));
}

TEST_CASE("timings are opt-in") {
    SolveOptions o;
    o.timings = true;
    const SolveReport rep = solve(gen_instance(6, 9, 1), o);
    CHECK(rep.timings.size() == 3);
    CHECK(report_to_text(rep).find("time_phase1") != std::string::npos);
}
