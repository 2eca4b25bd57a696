#pragma once
// Differential harness: runs a generated program, extracts every generation
// from the storage graph, and compares it against the direct row simulator.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "smm/codegen.hpp"
#include "smm/eca.hpp"
#include "smm/graph.hpp"
#include "smm/vm.hpp"

namespace smm {

// Reads `width` cells by walking e from `start`; bit i is 0 when the i-th
// node's n edge is a self-loop. Throws GraphError when the walk does not
// come back to `start` in exactly `width` steps.
Row extract_row(const StorageGraph& g, NodeId start, std::size_t width);

// All generations of a finished run, walking s from the final generation's
// cell 0 back to the initial row. Returned oldest first.
std::vector<Row> extract_generations_via_s(const StorageGraph& g, NodeId final_start,
                                           std::size_t width, std::size_t generations);

enum class Verdict { Match, Mismatch, Fault };
const char* verdict_name(Verdict verdict);

struct RunReport {
    std::string program_id;
    std::string program_hash;  // fnv1a64 of the rendered program text
    MachineStatus status;
    std::int64_t steps = 0;
    std::int64_t nodes_created = 0;
    std::vector<std::int64_t> reachable_per_generation;
    std::vector<Row> generations;  // rows extracted from the graph
    Verdict verdict = Verdict::Fault;
    std::size_t mismatch_generation = 0;  // when Mismatch
    std::size_t mismatch_cell = 0;        // when Mismatch
    double duration_ms = 0.0;             // excluded from comparisons

    bool operator==(const RunReport& o) const;
};

// Compiles the row/rule/iterations triple, executes it, snapshots each
// generation as it completes, and compares everything against evolve().
RunReport diff_run(const Row& row, std::uint8_t rule, std::size_t iterations,
                   const Limits& limits = {});

// Same, for an already-generated program and explicit oracle rows (one per
// generation). This is the entry point for fault-injection tests.
RunReport diff_run_program(const GeneratedProgram& gp, const std::vector<Row>& oracle_rows,
                           std::string program_id, const Limits& limits = {});

struct SpacetimeDiagram {
    std::vector<Row> rows;  // generation 0 first
};

enum class DiagramFormat { Text, Pbm };

// Text: '.' off, '#' on, one row per line. PBM: plain P1, "width height",
// then space-separated 0/1 rows.
std::string render_spacetime(const SpacetimeDiagram& diagram, DiagramFormat format);

nlohmann::ordered_json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::ordered_json& j);

std::uint64_t fnv1a64(std::string_view text);
std::string fnv1a64_hex(std::string_view text);

}  // namespace smm
