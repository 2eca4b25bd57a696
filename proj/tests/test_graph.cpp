#include <doctest.h>

#include <random>

#include "smm/graph.hpp"

using namespace smm;

TEST_CASE("fresh graph has a single origin node that is the center") {
    StorageGraph g("nsew");
    CHECK(g.node_count() == 1);
    CHECK(g.center() == g.origin());
    CHECK(g.reachable_count() == 1);
    for (char d : std::string("nsew")) CHECK_FALSE(g.edge(g.origin(), d).has_value());
}

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(StorageGraph(""), GraphError);
    CHECK_THROWS_AS(StorageGraph("nsen"), GraphError);
    CHECK_THROWS_AS(StorageGraph("a b"), GraphError);
    CHECK_NOTHROW(StorageGraph("nsewBT"));
}

TEST_CASE("add_node fans out every direction to the target") {
    StorageGraph g("nsew");
    NodeId id = g.add_node("center-T0", g.origin());
    CHECK(id != g.origin());
    for (char d : std::string("nsew")) CHECK(g.edge(id, d) == NodeRef{g.origin()});
    CHECK(g.center() == g.origin());  // add_node alone does not recenter
    NodeId other = g.add_node("", id);
    CHECK(other != id);
    CHECK_THROWS_AS(g.add_node("x", 999), GraphError);
}

TEST_CASE("resolve walks from the center and yields nil on missing edges") {
    StorageGraph g("nsew");
    CHECK(g.resolve("") == NodeRef{g.origin()});
    CHECK(g.resolve("n") == NodeRef{});

    NodeId a = g.add_node("a", g.origin());
    g.set_center(a);
    CHECK(g.resolve("") == NodeRef{a});
    CHECK(g.resolve("n") == NodeRef{g.origin()});
    CHECK(g.resolve("nn") == NodeRef{});  // origin has no out-edges
}

TEST_CASE("set_edge mutates and creates edges without touching node count") {
    StorageGraph g("nsew");
    NodeId a = g.add_node("a", g.origin());
    g.set_edge(a, 'e', a);
    CHECK(g.edge(a, 'e') == NodeRef{a});  // self-loops are legal
    g.set_edge(a, 'e', a);
    CHECK(g.edge(a, 'e') == NodeRef{a});  // idempotent

    // Origin starts with no edges; set_edge grows its out-degree.
    g.set_edge(g.origin(), 'n', g.origin());
    CHECK(g.edge(g.origin(), 'n') == NodeRef{g.origin()});
    CHECK(g.node_count() == 2);

    CHECK_THROWS_AS(g.set_edge(a, 'q', a), GraphError);
    CHECK_THROWS_AS(g.set_edge(999, 'n', a), GraphError);
    CHECK_THROWS_AS(g.set_edge(a, 'n', 999), GraphError);
}

TEST_CASE("set_center") {
    StorageGraph g("nsew");
    NodeId a = g.add_node("a", g.origin());
    g.set_center(a);
    CHECK(g.center() == a);
    g.set_center(a);
    CHECK(g.center() == a);
    g.set_center(g.origin());
    CHECK(g.resolve("") == NodeRef{g.origin()});
    CHECK_THROWS_AS(g.set_center(999), GraphError);
}

TEST_CASE("reachable_count counts only what the center can see") {
    StorageGraph g("nsew");
    NodeId a = g.add_node("a", g.origin());
    CHECK(g.reachable_count() == 1);  // a is not reachable from origin
    g.set_center(a);
    CHECK(g.reachable_count() == 2);
    g.add_node("junk", a);
    CHECK(g.reachable_count() == 2);  // new nodes stay invisible until linked
    CHECK(g.node_count() == 3);
}

TEST_CASE("to_dot is deterministic and covers exactly the reachable subgraph") {
    StorageGraph g("nsew");
    CHECK(g.to_dot() == "digraph smm {\n  node [shape=circle];\n"
                        "  n0 [label=\"0 Origin\", shape=doublecircle];\n}\n");

    NodeId a = g.add_node("a", g.origin());
    g.set_center(a);
    std::string first = g.to_dot();
    CHECK(first == g.to_dot());

    // Unreachable additions must not change the rendering.
    g.add_node("junk", a);
    CHECK(g.to_dot() == first);
}

TEST_CASE("path composition: resolve(x ++ y) equals resolve_from(resolve(x), y)") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        StorageGraph g("nsew");
        for (int i = 0; i < 8; ++i) {
            NodeId id = g.add_node("", g.center());
            g.set_center(id);
        }
        for (int i = 0; i < 12; ++i) {
            NodeId from = static_cast<NodeId>(rng() % g.node_count());
            NodeId to = static_cast<NodeId>(rng() % g.node_count());
            g.set_edge(from, "nsew"[rng() % 4], to);
        }
        auto random_path = [&](std::size_t len) {
            Path p;
            for (std::size_t i = 0; i < len; ++i) p += "nsew"[rng() % 4];
            return p;
        };
        Path x = random_path(rng() % 4);
        Path y = random_path(rng() % 4);
        NodeRef px = g.resolve(x);
        if (px) CHECK(g.resolve(x + y) == g.resolve_from(*px, y));
        CHECK(g.resolve("") == NodeRef{g.center()});
    }
}

TEST_CASE("add_node never changes reachability; set toward a reachable target never grows it") {
    std::mt19937 rng(7);
    StorageGraph g("nsew");
    for (int i = 0; i < 6; ++i) {
        NodeId id = g.add_node("", g.center());
        g.set_center(id);
    }
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t before = g.reachable_count();
        std::size_t nodes_before = g.node_count();
        if (rng() % 2) {
            g.add_node("", static_cast<NodeId>(rng() % g.node_count()));
            CHECK(g.reachable_count() == before);
        } else {
            // Mimic the machine's set: both endpoints resolved, hence reachable.
            auto reachable = g.reachable_nodes();
            NodeId from = reachable[rng() % reachable.size()];
            NodeId to = reachable[rng() % reachable.size()];
            g.set_edge(from, "nsew"[rng() % 4], to);
            CHECK(g.reachable_count() <= before);
        }
        CHECK(g.node_count() >= nodes_before);
    }
}
