#pragma once
// Compiles (initial row, rule, iteration count) into a standalone machine
// program over the n/s/e/w alphabet.
//
// Row encoding: cells are a ring doubly linked by e and w; a cell's n edge
// is a self-loop when the cell is off and points elsewhere when it is on;
// s points at the same cell in the previous generation (or at the origin
// for the initial row's first cell). Iterations are fully unrolled: each
// new-generation cell is created and immediately runs an update block that
// reads the predecessor row through s/sw/se/sn/swn/sen and writes only the
// new cell's n edge.

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "smm/assembly.hpp"
#include "smm/eca.hpp"
#include "smm/graph.hpp"

namespace smm {

// A relocatable instruction sequence: relative jumps only, entered at its
// first instruction, every exit landing exactly one past its last.
struct UpdateBlock {
    std::vector<Instruction> instructions;

    int length() const { return static_cast<int>(instructions.size()); }
    bool operator==(const UpdateBlock&) const = default;
};

// Throws std::invalid_argument unless `block` satisfies the update-block
// shape: non-empty, no new/ctr/stop, all jumps relative and landing within
// [1, length + 1].
void validate_update_block(const UpdateBlock& block);

// Fixed 15-instruction decision tree over the W, C, E neighborhood states
// (tested via "if swn sw", "if sn s", "if sen se"); its induced truth table
// equals rule_table(rule). Identical shape for every rule.
UpdateBlock gen_update_block(std::uint8_t rule);

// Program that builds `row` as a ring on a fresh graph and halts with the
// center on cell 0.
Program gen_init(const Row& row);

// Instruction layout of a generated program, used to watch a run
// generation by generation.
struct EmissionPlan {
    std::size_t width = 0;
    std::size_t iterations = 0;
    std::uint8_t rule = 0;
    Row initial;
    int init_length = 0;       // instructions before the first iteration
    int block_length = 0;      // update block size
    int iteration_length = 0;  // instructions per unrolled iteration
    // pc at which generation t is complete with the center on its cell 0;
    // size iterations + 1, the last entry is the final stop instruction.
    std::vector<int> generation_ready_pc;

    int total_length() const {
        return init_length + static_cast<int>(iterations) * iteration_length + 1;
    }
};

struct GeneratedProgram {
    Program program;
    EmissionPlan plan;
};

GeneratedProgram gen_program(const Row& row, std::uint8_t rule, std::size_t iterations);

// Same emission with a caller-supplied update block (plan.rule is left 0).
GeneratedProgram gen_program_with_block(const Row& row, const UpdateBlock& block,
                                        std::size_t iterations);

// A minimal graph for exercising an update block on one neighborhood:
// a predecessor cell with its two ring neighbors in the given states, and
// a fresh centered cell whose s points at the predecessor.
StorageGraph neighborhood_micrograph(bool w_on, bool c_on, bool e_on);

// Runs the block on all 8 neighborhood micrographs and reads the new cell's
// state each time. Index 4W + 2C + E, matching rule_table. Throws if a run
// faults.
RuleTable block_truth_table(const UpdateBlock& block);

// The two fixture programs shipped under corpus/, embedded verbatim.
std::string_view corpus_listing1_text();
std::string_view corpus_listing2_text();
Program corpus_listing1();
UpdateBlock corpus_listing2();

}  // namespace smm
