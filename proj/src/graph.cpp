#include "smm/graph.hpp"

#include <algorithm>
#include <cctype>

namespace smm {

StorageGraph::StorageGraph(std::string_view alphabet) : alphabet_(alphabet) {
    if (alphabet_.empty())
        throw GraphError("direction alphabet must not be empty");
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(alphabet_[i]);
        if (!std::isgraph(c))
            throw GraphError("direction symbols must be printable non-whitespace");
        if (alphabet_.find(alphabet_[i], i + 1) != std::string::npos)
            throw GraphError(std::string("duplicate direction symbol '") + alphabet_[i] + "'");
    }
    labels_.push_back("Origin");
    edges_.assign(alphabet_.size(), kNoEdge);
}

int StorageGraph::direction_index(char d) const {
    auto pos = alphabet_.find(d);
    return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

void StorageGraph::require_node(NodeId node, const char* what) const {
    if (node >= labels_.size())
        throw GraphError(std::string("unknown ") + what + " node id " + std::to_string(node));
}

NodeId StorageGraph::add_node(std::string label, NodeId target) {
    require_node(target, "target");
    NodeId id = static_cast<NodeId>(labels_.size());
    labels_.push_back(std::move(label));
    edges_.insert(edges_.end(), alphabet_.size(), target);
    return id;
}

void StorageGraph::set_edge(NodeId node, char d, NodeId target) {
    require_node(node, "source");
    require_node(target, "target");
    int di = direction_index(d);
    if (di < 0)
        throw GraphError(std::string("direction '") + d + "' is not in the alphabet");
    edges_[node * alphabet_.size() + static_cast<std::size_t>(di)] = target;
}

void StorageGraph::set_center(NodeId node) {
    require_node(node, "center");
    center_ = node;
}

std::optional<NodeId> StorageGraph::edge(NodeId node, char d) const {
    require_node(node, "source");
    int di = direction_index(d);
    if (di < 0)
        throw GraphError(std::string("direction '") + d + "' is not in the alphabet");
    NodeId t = edges_[node * alphabet_.size() + static_cast<std::size_t>(di)];
    if (t == kNoEdge) return std::nullopt;
    return t;
}

const std::string& StorageGraph::label(NodeId node) const {
    require_node(node, "label");
    return labels_[node];
}

NodeRef StorageGraph::resolve_from(NodeId start, const Path& path) const {
    require_node(start, "start");
    NodeId cur = start;
    for (char d : path) {
        int di = direction_index(d);
        if (di < 0)
            throw GraphError(std::string("direction '") + d + "' is not in the alphabet");
        NodeId next = edges_[cur * alphabet_.size() + static_cast<std::size_t>(di)];
        if (next == kNoEdge) return std::nullopt;
        cur = next;
    }
    return cur;
}

std::vector<NodeId> StorageGraph::reachable_nodes() const {
    std::vector<bool> seen(labels_.size(), false);
    std::vector<NodeId> stack{center_};
    seen[center_] = true;
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for (std::size_t di = 0; di < alphabet_.size(); ++di) {
            NodeId next = edges_[cur * alphabet_.size() + di];
            if (next != kNoEdge && !seen[next]) {
                seen[next] = true;
                stack.push_back(next);
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId id = 0; id < seen.size(); ++id)
        if (seen[id]) out.push_back(id);
    return out;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string StorageGraph::to_dot() const {
    std::vector<NodeId> ids = reachable_nodes();
    std::string out = "digraph smm {\n  node [shape=circle];\n";
    for (NodeId id : ids) {
        out += "  n" + std::to_string(id) + " [label=\"" + std::to_string(id);
        if (!labels_[id].empty()) out += " " + dot_escape(labels_[id]);
        out += "\"";
        if (id == center_) out += ", shape=doublecircle";
        out += "];\n";
    }
    for (NodeId id : ids) {
        for (std::size_t di = 0; di < alphabet_.size(); ++di) {
            NodeId t = edges_[id * alphabet_.size() + di];
            if (t == kNoEdge) continue;
            out += "  n" + std::to_string(id) + " -> n" + std::to_string(t) +
                   " [label=\"" + std::string(1, alphabet_[di]) + "\"];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace smm
