#pragma once
// Storage graph: the machine's memory. A directed graph of nodes whose
// out-edges are labelled by single-character directions, plus a movable
// distinguished node (the center) from which all paths are resolved.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace smm {

using NodeId = std::uint32_t;

// Result of resolving a path: a node, or nothing when some step of the
// walk names a direction the current node does not have.
using NodeRef = std::optional<NodeId>;

// A path is a string of direction symbols; "" resolves to the center.
using Path = std::string;

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class StorageGraph {
public:
    // Starts with a single node (the origin) of out-degree zero, which is
    // also the center. The alphabet is fixed for the lifetime of the graph;
    // symbols must be distinct printable non-whitespace characters.
    explicit StorageGraph(std::string_view alphabet = "nsew");

    const std::string& alphabet() const { return alphabet_; }
    bool has_direction(char d) const { return direction_index(d) >= 0; }

    NodeId origin() const { return 0; }
    NodeId center() const { return center_; }
    std::size_t node_count() const { return labels_.size(); }

    // Creates a node whose every direction points at `target` and returns
    // its id. Does not move the center.
    NodeId add_node(std::string label, NodeId target);

    // Points node's d edge at target, creating the edge if absent.
    void set_edge(NodeId node, char d, NodeId target);

    void set_center(NodeId node);

    std::optional<NodeId> edge(NodeId node, char d) const;
    const std::string& label(NodeId node) const;

    NodeRef resolve(const Path& path) const { return resolve_from(center_, path); }
    NodeRef resolve_from(NodeId start, const Path& path) const;

    // Nodes reachable from the center by directed edges, center included,
    // in ascending id order.
    std::vector<NodeId> reachable_nodes() const;
    std::size_t reachable_count() const { return reachable_nodes().size(); }

    // Deterministic DOT rendering of the reachable subgraph: vertices in id
    // order, arcs in alphabet order per vertex, center drawn doubled.
    std::string to_dot() const;

private:
    int direction_index(char d) const;
    void require_node(NodeId node, const char* what) const;

    static constexpr NodeId kNoEdge = 0xffffffffu;

    std::string alphabet_;
    std::vector<std::string> labels_;
    std::vector<NodeId> edges_;  // node_count * alphabet size, kNoEdge = absent
    NodeId center_ = 0;
};

}  // namespace smm
