#pragma once
// Stepping interpreter for assembly programs over a storage graph, with
// step/node limits, optional per-instruction tracing, and fault reporting.

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "smm/assembly.hpp"
#include "smm/graph.hpp"

namespace smm {

struct Limits {
    std::int64_t max_steps = 10'000'000;
    std::int64_t max_nodes = 1'000'000;
};

enum class Fault {
    InvalidPathInSet,
    InvalidPathInCenter,
    JumpBeforeStart,
    StepLimit,
    NodeLimit,
};

const char* fault_name(Fault fault);

struct MachineStatus {
    enum class Kind { Running, Halted, Faulted };
    enum class HaltReason { StopMessage, EndOfProgram };

    Kind kind = Kind::Running;
    HaltReason halt_reason = HaltReason::EndOfProgram;  // when Halted
    std::string stop_message;                           // when halted via stop
    Fault fault = Fault::StepLimit;                     // when Faulted
    int fault_pc = 0;                                   // when Faulted

    bool running() const { return kind == Kind::Running; }
    bool terminal() const { return kind != Kind::Running; }
    bool halted() const { return kind == Kind::Halted; }
    bool faulted() const { return kind == Kind::Faulted; }
    bool stopped_with_message() const {
        return halted() && halt_reason == HaltReason::StopMessage;
    }

    std::string describe() const;

    static MachineStatus make_running() { return {}; }
    static MachineStatus end_of_program();
    static MachineStatus stopped(std::string message);
    static MachineStatus make_fault(Fault fault, int pc);

    bool operator==(const MachineStatus&) const = default;
};

// One executed (or faulting) instruction. `x`/`y` hold resolved operand
// refs where the instruction has them.
struct TraceEvent {
    int pc = 0;
    std::string text;  // canonical instruction rendering
    bool has_x = false, has_y = false;
    NodeRef x, y;
    bool center_moved = false;
    NodeId center_before = 0, center_after = 0;
    bool is_branch = false, taken = false;
    int jump_to = 0;       // resolved target line when taken (0 = exits past end)
    bool halts = false;    // instruction ended the run
    bool is_stop = false;
    bool faults = false;
    Fault fault = Fault::StepLimit;
    std::string stop_message;

    std::string to_line() const;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct MachineState {
    StorageGraph graph;
    Program program;
    int pc = 1;  // 1-based; meaningful while running
    MachineStatus status;
    std::int64_t steps_executed = 0;
    std::int64_t nodes_created = 0;
};

// Binds a program to a graph. The program's directions must all exist in the
// graph's alphabet. An empty program loads already halted.
MachineState load(Program program, StorageGraph graph);

// Executes exactly one instruction. Rejects terminal states. A step that
// would exceed a limit faults without executing; path faults consume the
// step that raised them.
void step(MachineState& m, const Limits& limits = {}, const TraceSink& sink = {});

// Steps until the machine halts, faults, or trips a limit.
void run(MachineState& m, const Limits& limits = {}, const TraceSink& sink = {});

struct BlockResult {
    MachineStatus status;  // Halted{EndOfProgram} on a normal block exit
    std::int64_t steps = 0;
    std::int64_t nodes_created = 0;
};

// Runs an instruction sequence directly against a graph, as if spliced in at
// the current point: jumps landing past the block's end exit normally; jumps
// below its first instruction fault. Fault pcs are block-relative.
BlockResult run_block(StorageGraph& graph, std::span<const Instruction> block,
                      const Limits& limits = {});

// Same, but borrowing a machine's graph and merging counters and any
// terminal status back into it.
void run_block(MachineState& m, std::span<const Instruction> block, const Limits& limits = {});

}  // namespace smm
