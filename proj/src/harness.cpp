#include "smm/harness.hpp"

#include <chrono>
#include <cstdio>

namespace smm {

Row extract_row(const StorageGraph& g, NodeId start, std::size_t width) {
    if (width == 0) throw GraphError("row width must be at least 1");
    Row row;
    row.reserve(width);
    NodeId cur = start;
    for (std::size_t i = 0; i < width; ++i) {
        NodeRef n = g.edge(cur, 'n');
        row.push_back((n && *n == cur) ? 0 : 1);
        NodeRef next = g.edge(cur, 'e');
        if (!next)
            throw GraphError("malformed ring: node " + std::to_string(cur) + " has no e edge");
        cur = *next;
    }
    if (cur != start)
        throw GraphError("malformed ring: e-walk of " + std::to_string(width) +
                         " steps does not return to node " + std::to_string(start));
    return row;
}

std::vector<Row> extract_generations_via_s(const StorageGraph& g, NodeId final_start,
                                           std::size_t width, std::size_t generations) {
    std::vector<Row> rows(generations);
    NodeId start = final_start;
    for (std::size_t t = generations; t-- > 0;) {
        rows[t] = extract_row(g, start, width);
        if (t > 0) {
            NodeRef prev = g.edge(start, 's');
            if (!prev)
                throw GraphError("generation chain broken: node " + std::to_string(start) +
                                 " has no s edge");
            start = *prev;
        }
    }
    return rows;
}

const char* verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Match: return "match";
        case Verdict::Mismatch: return "mismatch";
        case Verdict::Fault: return "fault";
    }
    return "fault";
}

bool RunReport::operator==(const RunReport& o) const {
    return program_id == o.program_id && program_hash == o.program_hash && status == o.status &&
           steps == o.steps && nodes_created == o.nodes_created &&
           reachable_per_generation == o.reachable_per_generation &&
           generations == o.generations && verdict == o.verdict &&
           (verdict != Verdict::Mismatch ||
            (mismatch_generation == o.mismatch_generation && mismatch_cell == o.mismatch_cell));
}

RunReport diff_run_program(const GeneratedProgram& gp, const std::vector<Row>& oracle_rows,
                           std::string program_id, const Limits& limits) {
    const auto started = std::chrono::steady_clock::now();
    const EmissionPlan& plan = gp.plan;

    RunReport report;
    report.program_id = std::move(program_id);
    report.program_hash = fnv1a64_hex(render(gp.program));

    MachineState m = load(gp.program, StorageGraph("nsew"));
    // Generated programs only ever move forward, so each generation boundary
    // is crossed exactly once; snapshot the ring when the pc reaches it.
    std::size_t next_boundary = 0;
    while (m.status.running()) {
        if (next_boundary < plan.generation_ready_pc.size() &&
            m.pc == plan.generation_ready_pc[next_boundary]) {
            report.reachable_per_generation.push_back(
                static_cast<std::int64_t>(m.graph.reachable_count()));
            report.generations.push_back(extract_row(m.graph, m.graph.center(), plan.width));
            ++next_boundary;
        }
        step(m, limits);
    }
    report.status = m.status;
    report.steps = m.steps_executed;
    report.nodes_created = m.nodes_created;

    if (!m.status.stopped_with_message() || next_boundary != plan.generation_ready_pc.size()) {
        report.verdict = Verdict::Fault;
    } else {
        report.verdict = Verdict::Match;
        for (std::size_t t = 0; t < oracle_rows.size(); ++t) {
            if (t >= report.generations.size()) {
                report.verdict = Verdict::Fault;
                break;
            }
            if (report.generations[t] != oracle_rows[t]) {
                report.verdict = Verdict::Mismatch;
                report.mismatch_generation = t;
                const Row& got = report.generations[t];
                for (std::size_t i = 0; i < oracle_rows[t].size(); ++i) {
                    if (i >= got.size() || got[i] != oracle_rows[t][i]) {
                        report.mismatch_cell = i;
                        break;
                    }
                }
                break;
            }
        }
    }

    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return report;
}

RunReport diff_run(const Row& row, std::uint8_t rule, std::size_t iterations,
                   const Limits& limits) {
    GeneratedProgram gp = gen_program(row, rule, iterations);
    std::vector<Row> oracle = evolve(row, rule, iterations);
    std::string id = "eca-rule" + std::to_string(rule) + "-w" + std::to_string(row.size()) +
                     "-i" + std::to_string(iterations);
    return diff_run_program(gp, oracle, std::move(id), limits);
}

std::string render_spacetime(const SpacetimeDiagram& diagram, DiagramFormat format) {
    std::string out;
    if (format == DiagramFormat::Text) {
        for (const Row& row : diagram.rows) {
            for (std::uint8_t b : row) out += b ? '#' : '.';
            out += '\n';
        }
        return out;
    }
    std::size_t width = diagram.rows.empty() ? 0 : diagram.rows.front().size();
    out = "P1\n" + std::to_string(width) + " " + std::to_string(diagram.rows.size()) + "\n";
    for (const Row& row : diagram.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ' ';
            out += row[i] ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::ordered_json status_to_json(const MachineStatus& status) {
    nlohmann::ordered_json j;
    switch (status.kind) {
        case MachineStatus::Kind::Running:
            j["kind"] = "running";
            break;
        case MachineStatus::Kind::Halted:
            j["kind"] = "halted";
            j["reason"] = status.halt_reason == MachineStatus::HaltReason::StopMessage
                              ? "stop"
                              : "end-of-program";
            if (status.halt_reason == MachineStatus::HaltReason::StopMessage)
                j["message"] = status.stop_message;
            break;
        case MachineStatus::Kind::Faulted:
            j["kind"] = "faulted";
            j["fault"] = fault_name(status.fault);
            j["at"] = status.fault_pc;
            break;
    }
    return j;
}

MachineStatus status_from_json(const nlohmann::ordered_json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "running") return MachineStatus::make_running();
    if (kind == "halted") {
        if (j.at("reason").get<std::string>() == "stop")
            return MachineStatus::stopped(j.at("message").get<std::string>());
        return MachineStatus::end_of_program();
    }
    std::string fault = j.at("fault").get<std::string>();
    for (Fault f : {Fault::InvalidPathInSet, Fault::InvalidPathInCenter, Fault::JumpBeforeStart,
                    Fault::StepLimit, Fault::NodeLimit}) {
        if (fault == fault_name(f)) return MachineStatus::make_fault(f, j.at("at").get<int>());
    }
    throw std::invalid_argument("unknown fault name in report: " + fault);
}

}  // namespace

nlohmann::ordered_json report_to_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["program_id"] = report.program_id;
    j["program_hash"] = report.program_hash;
    j["status"] = status_to_json(report.status);
    j["steps"] = report.steps;
    j["nodes_created"] = report.nodes_created;
    j["reachable_per_generation"] = report.reachable_per_generation;
    auto rows = nlohmann::ordered_json::array();
    for (const Row& row : report.generations) rows.push_back(row_to_string(row));
    j["generations"] = rows;
    j["verdict"] = verdict_name(report.verdict);
    if (report.verdict == Verdict::Mismatch) {
        j["mismatch_generation"] = report.mismatch_generation;
        j["mismatch_cell"] = report.mismatch_cell;
    }
    j["duration_ms"] = report.duration_ms;
    return j;
}

RunReport report_from_json(const nlohmann::ordered_json& j) {
    RunReport report;
    report.program_id = j.at("program_id").get<std::string>();
    report.program_hash = j.at("program_hash").get<std::string>();
    report.status = status_from_json(j.at("status"));
    report.steps = j.at("steps").get<std::int64_t>();
    report.nodes_created = j.at("nodes_created").get<std::int64_t>();
    report.reachable_per_generation =
        j.at("reachable_per_generation").get<std::vector<std::int64_t>>();
    for (const auto& row : j.at("generations"))
        report.generations.push_back(row_from_string(row.get<std::string>()));
    std::string verdict = j.at("verdict").get<std::string>();
    for (Verdict v : {Verdict::Match, Verdict::Mismatch, Verdict::Fault}) {
        if (verdict == verdict_name(v)) report.verdict = v;
    }
    if (report.verdict == Verdict::Mismatch) {
        report.mismatch_generation = j.at("mismatch_generation").get<std::size_t>();
        report.mismatch_cell = j.at("mismatch_cell").get<std::size_t>();
    }
    if (j.contains("duration_ms")) report.duration_ms = j.at("duration_ms").get<double>();
    return report;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(text)));
    return buf;
}

}  // namespace smm
