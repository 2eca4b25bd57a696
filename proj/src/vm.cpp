#include "smm/vm.hpp"

#include <cstdio>
#include <stdexcept>
#include <utility>

namespace smm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_limits(const Limits& limits) {
    if (limits.max_steps < 1 || limits.max_nodes < 1)
        throw std::invalid_argument("limits must be at least 1");
}

std::string ref_text(const NodeRef& ref) {
    return ref ? std::to_string(*ref) : std::string("nil");
}

// Executes the instruction at pc against the given code span. Shared by the
// program-level stepper and run_block; `code` is the whole program in the
// former case and just the block in the latter.
void exec_one(StorageGraph& graph, std::span<const Instruction> code, int& pc,
              MachineStatus& status, std::int64_t& steps, std::int64_t& nodes,
              const Limits& limits, const TraceSink& sink) {
    const int len = static_cast<int>(code.size());
    const Instruction& instr = code[static_cast<std::size_t>(pc - 1)];

    TraceEvent ev;
    ev.pc = pc;
    ev.text = render_instruction(instr);

    if (steps >= limits.max_steps) {
        status = MachineStatus::make_fault(Fault::StepLimit, pc);
        ev.faults = true;
        ev.fault = Fault::StepLimit;
        if (sink) sink(ev);
        return;
    }

    auto raise = [&](Fault fault) {
        status = MachineStatus::make_fault(fault, pc);
        ev.faults = true;
        ev.fault = fault;
    };
    auto advance = [&] {
        if (pc + 1 > len) {
            status = MachineStatus::end_of_program();
            ev.halts = true;
        } else {
            pc = pc + 1;
        }
    };

    std::visit(
        overloaded{
            [&](const NewInstr& i) {
                if (nodes >= limits.max_nodes) {
                    raise(Fault::NodeLimit);
                    return;
                }
                NodeId prev = graph.center();
                NodeId id = graph.add_node(i.label, prev);
                graph.set_center(id);
                ++nodes;
                ++steps;
                ev.center_moved = true;
                ev.center_before = prev;
                ev.center_after = id;
                advance();
            },
            [&](const SetInstr& i) {
                NodeRef px = graph.resolve(i.x);
                NodeRef py = graph.resolve(i.y);
                ev.has_x = ev.has_y = true;
                ev.x = px;
                ev.y = py;
                ++steps;
                if (!px || !py) {
                    raise(Fault::InvalidPathInSet);
                    return;
                }
                graph.set_edge(*px, i.d, *py);
                advance();
            },
            [&](const CenterInstr& i) {
                NodeRef px = graph.resolve(i.x);
                ev.has_x = true;
                ev.x = px;
                ++steps;
                if (!px) {
                    raise(Fault::InvalidPathInCenter);
                    return;
                }
                ev.center_moved = true;
                ev.center_before = graph.center();
                ev.center_after = *px;
                graph.set_center(*px);
                advance();
            },
            [&](const IfInstr& i) {
                NodeRef px = graph.resolve(i.x);
                NodeRef py = graph.resolve(i.y);
                ev.has_x = ev.has_y = true;
                ev.x = px;
                ev.y = py;
                ev.is_branch = true;
                ++steps;
                // nil = nil counts as equal; nil never equals a node.
                bool taken = (px == py);
                ev.taken = taken;
                if (!taken) {
                    advance();
                    return;
                }
                int target = i.target.target_line(pc);
                if (target < 1) {
                    raise(Fault::JumpBeforeStart);
                    return;
                }
                if (target > len) {
                    status = MachineStatus::end_of_program();
                    ev.halts = true;
                    return;
                }
                ev.jump_to = target;
                pc = target;
            },
            [&](const StopInstr& i) {
                ++steps;
                status = MachineStatus::stopped(i.message);
                ev.halts = true;
                ev.is_stop = true;
                ev.stop_message = i.message;
            },
        },
        instr);

    if (sink) sink(ev);
}

}  // namespace

const char* fault_name(Fault fault) {
    switch (fault) {
        case Fault::InvalidPathInSet: return "invalid-path-in-set";
        case Fault::InvalidPathInCenter: return "invalid-path-in-center";
        case Fault::JumpBeforeStart: return "jump-before-start";
        case Fault::StepLimit: return "step-limit";
        case Fault::NodeLimit: return "node-limit";
    }
    return "unknown";
}

MachineStatus MachineStatus::end_of_program() {
    MachineStatus s;
    s.kind = Kind::Halted;
    s.halt_reason = HaltReason::EndOfProgram;
    return s;
}

MachineStatus MachineStatus::stopped(std::string message) {
    MachineStatus s;
    s.kind = Kind::Halted;
    s.halt_reason = HaltReason::StopMessage;
    s.stop_message = std::move(message);
    return s;
}

MachineStatus MachineStatus::make_fault(Fault fault, int pc) {
    MachineStatus s;
    s.kind = Kind::Faulted;
    s.fault = fault;
    s.fault_pc = pc;
    return s;
}

std::string MachineStatus::describe() const {
    switch (kind) {
        case Kind::Running: return "running";
        case Kind::Halted:
            return halt_reason == HaltReason::StopMessage
                       ? "halted: stop \"" + stop_message + "\""
                       : "halted: end of program";
        case Kind::Faulted:
            return std::string("faulted: ") + fault_name(fault) + " at line " +
                   std::to_string(fault_pc);
    }
    return "running";
}

std::string TraceEvent::to_line() const {
    char head[16];
    std::snprintf(head, sizeof head, "%5d ", pc);
    std::string line = head + text + " |";
    if (has_x) line += " x=" + ref_text(x);
    if (has_y) line += " y=" + ref_text(y);
    if (center_moved)
        line += " center " + std::to_string(center_before) + " -> " + std::to_string(center_after);
    if (is_branch) {
        if (!taken)
            line += " not-taken";
        else if (jump_to > 0)
            line += " taken -> " + std::to_string(jump_to);
        else
            line += " taken -> exit";
    }
    if (is_stop) line += " halt \"" + stop_message + "\"";
    if (faults) line += std::string(" fault ") + fault_name(fault);
    return line;
}

MachineState load(Program program, StorageGraph graph) {
    for (char d : program.alphabet) {
        if (!graph.has_direction(d))
            throw std::invalid_argument(std::string("program direction '") + d +
                                        "' is not in the graph alphabet");
    }
    MachineState m;
    m.graph = std::move(graph);
    m.program = std::move(program);
    m.pc = 1;
    m.status = m.program.instructions.empty() ? MachineStatus::end_of_program()
                                              : MachineStatus::make_running();
    return m;
}

void step(MachineState& m, const Limits& limits, const TraceSink& sink) {
    check_limits(limits);
    if (m.status.terminal()) throw std::logic_error("step on a terminal machine");
    exec_one(m.graph, m.program.instructions, m.pc, m.status, m.steps_executed, m.nodes_created,
             limits, sink);
}

void run(MachineState& m, const Limits& limits, const TraceSink& sink) {
    check_limits(limits);
    while (m.status.running())
        exec_one(m.graph, m.program.instructions, m.pc, m.status, m.steps_executed,
                 m.nodes_created, limits, sink);
}

BlockResult run_block(StorageGraph& graph, std::span<const Instruction> block,
                      const Limits& limits) {
    check_limits(limits);
    BlockResult result;
    if (block.empty()) {
        result.status = MachineStatus::end_of_program();
        return result;
    }
    int pc = 1;
    MachineStatus status;
    while (status.running())
        exec_one(graph, block, pc, status, result.steps, result.nodes_created, limits, {});
    result.status = status;
    return result;
}

void run_block(MachineState& m, std::span<const Instruction> block, const Limits& limits) {
    check_limits(limits);
    if (m.status.terminal()) throw std::logic_error("run_block on a terminal machine");
    Limits remaining{limits.max_steps - m.steps_executed, limits.max_nodes - m.nodes_created};
    if (remaining.max_steps < 1 || remaining.max_nodes < 1) {
        m.status = MachineStatus::make_fault(
            remaining.max_steps < 1 ? Fault::StepLimit : Fault::NodeLimit, 1);
        return;
    }
    BlockResult result = run_block(m.graph, block, remaining);
    m.steps_executed += result.steps;
    m.nodes_created += result.nodes_created;
    // A normal block exit leaves the machine running at its own pc; anything
    // else (stop, fault) terminates the machine.
    if (result.status.faulted() || result.status.stopped_with_message()) m.status = result.status;
}

}  // namespace smm
