#include <doctest.h>

#include <random>

#include "smm/harness.hpp"

using namespace smm;

TEST_CASE("extract_row reads states off the ring") {
    // Hand-built 3-ring, middle cell on.
    StorageGraph g("nsew");
    NodeId a = g.add_node("a", g.origin());
    NodeId b = g.add_node("b", g.origin());
    NodeId c = g.add_node("c", g.origin());
    g.set_edge(a, 'e', b);
    g.set_edge(b, 'e', c);
    g.set_edge(c, 'e', a);
    g.set_edge(a, 'n', a);
    g.set_edge(b, 'n', g.origin());
    g.set_edge(c, 'n', c);
    CHECK(extract_row(g, a, 3) == row_from_string("010"));
    CHECK(extract_row(g, b, 3) == row_from_string("100"));

    // All self-loops read as an all-zero row.
    g.set_edge(b, 'n', b);
    CHECK(extract_row(g, a, 3) == row_from_string("000"));

    // Width mismatch: the e-walk does not come back to the start.
    CHECK_THROWS_AS(extract_row(g, a, 2), GraphError);
    CHECK_THROWS_AS(extract_row(g, a, 4), GraphError);
    // Broken ring: a missing e edge.
    StorageGraph h("nsew");
    NodeId lone = h.add_node("x", h.origin());
    CHECK_THROWS_AS(extract_row(h, lone, 2), GraphError);
}

TEST_CASE("diff_run matches the oracle and fills the report") {
    RunReport report = diff_run(row_from_string("0001000"), 110, 5);
    CHECK(report.verdict == Verdict::Match);
    CHECK(report.program_id == "eca-rule110-w7-i5");
    CHECK(report.status.stopped_with_message());
    CHECK(report.generations.size() == 6);
    CHECK(report.generations[0] == row_from_string("0001000"));
    CHECK(report.generations[1] == row_from_string("0011000"));
    REQUIRE(report.reachable_per_generation.size() == 6);
    for (std::size_t t = 0; t < 6; ++t)
        CHECK(report.reachable_per_generation[t] == static_cast<std::int64_t>(7 * (t + 1) + 1));
    CHECK_FALSE(report.program_hash.empty());
}

TEST_CASE("identity rule: every generation equals generation zero") {
    std::mt19937 rng(31337);
    Row row(9);
    for (auto& cell : row) cell = rng() % 2;
    RunReport report = diff_run(row, 204, 5);
    CHECK(report.verdict == Verdict::Match);
    for (const Row& generation : report.generations) CHECK(generation == row);
}

TEST_CASE("a corrupted update block yields a located mismatch") {
    Row row = row_from_string("00100110100");
    // Swap one leaf of rule 110's block: behave like a different rule on
    // exactly one neighborhood. 110 ^ 0x80 flips the (1,1,1) outcome.
    UpdateBlock corrupted = gen_update_block(110 ^ 0x80);
    GeneratedProgram gp = gen_program_with_block(row, corrupted, 8);
    std::vector<Row> oracle = evolve(row, 110, 8);
    RunReport report = diff_run_program(gp, oracle, "corrupted");

    CHECK(report.verdict == Verdict::Mismatch);
    // The report's coordinates are the first divergence of the two rules.
    std::vector<Row> actual = evolve(row, 110 ^ 0x80, 8);
    std::size_t gen = 0, cell = 0;
    bool found = false;
    for (std::size_t t = 0; !found && t < oracle.size(); ++t) {
        for (std::size_t i = 0; i < oracle[t].size(); ++i) {
            if (actual[t][i] != oracle[t][i]) {
                gen = t;
                cell = i;
                found = true;
                break;
            }
        }
    }
    REQUIRE(found);
    CHECK(report.mismatch_generation == gen);
    CHECK(report.mismatch_cell == cell);
}

TEST_CASE("vm faults surface as a fault verdict") {
    RunReport report = diff_run(row_from_string("010"), 110, 3, Limits{10, 1000});
    CHECK(report.verdict == Verdict::Fault);
    CHECK(report.status.faulted());
    CHECK(report.status.fault == Fault::StepLimit);
}

TEST_CASE("spacetime rendering is bit-exact") {
    SpacetimeDiagram single{{row_from_string("0101")}};
    CHECK(render_spacetime(single, DiagramFormat::Text) == ".#.#\n");

    SpacetimeDiagram all_on{{row_from_string("11"), row_from_string("11")}};
    CHECK(render_spacetime(all_on, DiagramFormat::Pbm) == "P1\n2 2\n1 1\n1 1\n");

    SpacetimeDiagram evolution{evolve(row_from_string("0001000"), 110, 2)};
    CHECK(render_spacetime(evolution, DiagramFormat::Text) == "...#...\n..##...\n.###...\n");
}

TEST_CASE("report json round-trips") {
    RunReport report = diff_run(row_from_string("0001000"), 110, 3);
    nlohmann::ordered_json j = report_to_json(report);
    RunReport back = report_from_json(j);
    CHECK(back == report);
    CHECK(report_to_json(back) == j);

    // Mismatch coordinates survive the trip too.
    GeneratedProgram gp = gen_program_with_block(row_from_string("01011"), gen_update_block(30), 4);
    RunReport mismatch = diff_run_program(gp, evolve(row_from_string("01011"), 110, 4), "x");
    REQUIRE(mismatch.verdict == Verdict::Mismatch);
    CHECK(report_from_json(report_to_json(mismatch)) == mismatch);
}

TEST_CASE("reports are deterministic apart from the duration field") {
    RunReport a = diff_run(row_from_string("0001000"), 110, 4);
    RunReport b = diff_run(row_from_string("0001000"), 110, 4);
    CHECK(a == b);  // operator== ignores duration
    nlohmann::ordered_json ja = report_to_json(a);
    nlohmann::ordered_json jb = report_to_json(b);
    ja.erase("duration_ms");
    jb.erase("duration_ms");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("fnv1a64 hex") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64_hex("a") != fnv1a64_hex("b"));
    CHECK(fnv1a64_hex("abc").size() == 16);
}
