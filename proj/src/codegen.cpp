#include "smm/codegen.hpp"

#include <cstdio>
#include <stdexcept>

#include "smm/vm.hpp"

namespace smm {

namespace {

SetInstr set_instr(Path x, char d, Path y = {}) { return SetInstr{std::move(x), d, std::move(y)}; }

IfInstr if_rel(Path x, Path y, int forward) {
    return IfInstr{std::move(x), std::move(y), {JumpTarget::Kind::RelativeForward, forward}};
}

std::string cell_label(std::size_t generation, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "c%zu-%zu", generation, index);
    return buf;
}

// Initial-row construction without the final stop: cell 0, then each next
// cell eastwards (new + optional "set n" + "set we"), ring closure, and a
// recenter onto cell 0.
void emit_init_body(std::vector<Instruction>& out, const Row& row) {
    const std::size_t width = row.size();
    for (std::size_t i = 0; i < width; ++i) {
        out.push_back(NewInstr{cell_label(0, i)});
        if (row[i] == 0) out.push_back(set_instr("", 'n'));
        if (i > 0) out.push_back(set_instr("w", 'e'));
    }
    const Path back(width - 1, 'w');
    out.push_back(set_instr("", 'e', back));       // last cell's e -> cell 0
    out.push_back(set_instr(back, 'w'));           // cell 0's w -> last cell
    out.push_back(CenterInstr{"e"});               // stand on cell 0
}

}  // namespace

void validate_update_block(const UpdateBlock& block) {
    const int len = block.length();
    if (len == 0) throw std::invalid_argument("update block must not be empty");
    for (int line = 1; line <= len; ++line) {
        const Instruction& instr = block.instructions[static_cast<std::size_t>(line - 1)];
        if (std::holds_alternative<NewInstr>(instr) || std::holds_alternative<CenterInstr>(instr) ||
            std::holds_alternative<StopInstr>(instr))
            throw std::invalid_argument("update block may only contain set and if instructions");
        if (const auto* jump = std::get_if<IfInstr>(&instr)) {
            if (jump->target.kind == JumpTarget::Kind::Absolute)
                throw std::invalid_argument("update block jumps must be relative");
            int target = jump->target.target_line(line);
            if (target < 1 || target > len + 1)
                throw std::invalid_argument(
                    "update block jump at line " + std::to_string(line) + " lands at " +
                    std::to_string(target) + ", outside [1, " + std::to_string(len + 1) + "]");
        }
    }
}

UpdateBlock gen_update_block(std::uint8_t rule) {
    const RuleTable table = rule_table(rule);
    // Leaf jumps land on the shared off leaf ("set n", line 14) or on the
    // shared exit (line 15). Line layout:
    //   1 set n s      default on: n -> predecessor
    //   2 if swn sw +2 W off -> 4, W on -> 3
    //   3 if s s +6    -> 9 (the W-on half)
    //   4 if sn s +3   W off: C off -> 7, C on -> 5
    //   5,6            W off, C on: E test + E-on leaf jump
    //   7,8            W off, C off: E test + E-on leaf jump
    //   9 if sn s +3   W on: C off -> 12, C on -> 10
    //  10,11           W on, C on
    //  12,13           W on, C off
    //  14 set n        off leaf, falls through to the exit
    //  15 if s s +1    exit, one past the end
    auto leaf = [&](int line, int w, int c, int e) {
        int target = table[static_cast<std::size_t>(4 * w + 2 * c + e)] ? 15 : 14;
        return target - line;
    };
    UpdateBlock block;
    auto& ins = block.instructions;
    ins.push_back(set_instr("", 'n', "s"));
    ins.push_back(if_rel("swn", "sw", 2));
    ins.push_back(if_rel("s", "s", 6));
    ins.push_back(if_rel("sn", "s", 3));
    ins.push_back(if_rel("sen", "se", leaf(5, 0, 1, 0)));
    ins.push_back(if_rel("s", "s", leaf(6, 0, 1, 1)));
    ins.push_back(if_rel("sen", "se", leaf(7, 0, 0, 0)));
    ins.push_back(if_rel("s", "s", leaf(8, 0, 0, 1)));
    ins.push_back(if_rel("sn", "s", 3));
    ins.push_back(if_rel("sen", "se", leaf(10, 1, 1, 0)));
    ins.push_back(if_rel("s", "s", leaf(11, 1, 1, 1)));
    ins.push_back(if_rel("sen", "se", leaf(12, 1, 0, 0)));
    ins.push_back(if_rel("s", "s", leaf(13, 1, 0, 1)));
    ins.push_back(set_instr("", 'n'));
    ins.push_back(if_rel("s", "s", 1));
    validate_update_block(block);
    return block;
}

Program gen_init(const Row& row) {
    if (row.empty()) throw std::invalid_argument("row width must be at least 1");
    Program program;
    emit_init_body(program.instructions, row);
    program.instructions.push_back(StopInstr{});
    program.spans.assign(program.instructions.size(), SourceSpan{});
    return program;
}

GeneratedProgram gen_program_with_block(const Row& row, const UpdateBlock& block,
                                        std::size_t iterations) {
    if (row.empty()) throw std::invalid_argument("row width must be at least 1");
    validate_update_block(block);
    const std::size_t width = row.size();

    GeneratedProgram gp;
    auto& ins = gp.program.instructions;
    emit_init_body(ins, row);

    EmissionPlan& plan = gp.plan;
    plan.width = width;
    plan.iterations = iterations;
    plan.initial = row;
    plan.init_length = static_cast<int>(ins.size());
    plan.block_length = block.length();
    plan.iteration_length = static_cast<int>(width) * (block.length() + 3) + 1;
    plan.generation_ready_pc.reserve(iterations + 1);
    plan.generation_ready_pc.push_back(plan.init_length + 1);

    const Path back(width - 1, 'w');
    for (std::size_t t = 1; t <= iterations; ++t) {
        for (std::size_t i = 0; i < width; ++i) {
            // The center is on the previous generation's cell i - 1's
            // successor chain: for cell 0 it stands on the old cell 0, so
            // the fan-out of new wires s; for later cells it stands on the
            // new cell i - 1, wiring w, and s is fetched via wse.
            ins.push_back(NewInstr{cell_label(t, i)});
            if (i > 0) {
                ins.push_back(set_instr("", 's', "wse"));
                ins.push_back(set_instr("w", 'e'));
            }
            ins.insert(ins.end(), block.instructions.begin(), block.instructions.end());
        }
        ins.push_back(set_instr("", 'e', back));
        ins.push_back(set_instr(back, 'w'));
        ins.push_back(CenterInstr{"e"});
        plan.generation_ready_pc.push_back(static_cast<int>(ins.size()) + 1);
    }
    ins.push_back(StopInstr{"done"});
    gp.program.spans.assign(ins.size(), SourceSpan{});

    if (static_cast<int>(ins.size()) != plan.total_length())
        throw std::logic_error("emission layout does not match its plan");
    return gp;
}

GeneratedProgram gen_program(const Row& row, std::uint8_t rule, std::size_t iterations) {
    GeneratedProgram gp = gen_program_with_block(row, gen_update_block(rule), iterations);
    gp.plan.rule = rule;
    return gp;
}

StorageGraph neighborhood_micrograph(bool w_on, bool c_on, bool e_on) {
    StorageGraph g;
    NodeId west = g.add_node("W", g.origin());
    NodeId mid = g.add_node("C", g.origin());
    NodeId east = g.add_node("E", g.origin());
    g.set_edge(mid, 'w', west);
    g.set_edge(mid, 'e', east);
    g.set_edge(west, 'n', w_on ? g.origin() : west);
    g.set_edge(mid, 'n', c_on ? g.origin() : mid);
    g.set_edge(east, 'n', e_on ? g.origin() : east);
    NodeId cell = g.add_node("X", mid);  // fan-out wires s (and n) to the predecessor
    g.set_center(cell);
    return g;
}

RuleTable block_truth_table(const UpdateBlock& block) {
    RuleTable table{};
    for (int w = 0; w < 2; ++w) {
        for (int c = 0; c < 2; ++c) {
            for (int e = 0; e < 2; ++e) {
                StorageGraph g = neighborhood_micrograph(w != 0, c != 0, e != 0);
                BlockResult result = run_block(g, block.instructions);
                if (result.status.faulted())
                    throw std::runtime_error("update block faulted on a neighborhood: " +
                                             result.status.describe());
                NodeRef n = g.edge(g.center(), 'n');
                table[static_cast<std::size_t>(4 * w + 2 * c + e)] =
                    (n && *n == g.center()) ? 0 : 1;
            }
        }
    }
    return table;
}

namespace {

constexpr std::string_view kListing1 =
    " 1 new center-T0\n"
    " 2 new right1-T0\n"
    " 3 set n\n"
    " 4 set we\n"
    " 5 new right2-T0\n"
    " 6 set n\n"
    " 7 set we\n"
    " 8 new right3-T0\n"
    " 9 set n\n"
    "10 set we\n"
    "11 ctr www\n"
    "12 new left1-T0\n"
    "13 set n\n"
    "14 set ew\n"
    "15 new left2-T0\n"
    "16 set n\n"
    "17 set ew\n"
    "18 new left3-T0\n"
    "19 set n\n"
    "20 set ew\n"
    "21 set eeeeeee\n"
    "22 set w eeeeee\n"
    "23 stop\n";

constexpr std::string_view kListing2 =
    " 1 set n s\n"
    " 2 if swn sw +2\n"
    " 3 if s s +7\n"
    " 4 if sn s +2\n"
    " 5 if s s +4\n"
    " 6 if sen se +2\n"
    " 7 if s s +2\n"
    " 8 set n\n"
    " 9 if s s +7\n"
    "10 if sn s  +4\n"
    "11 if sen se +2\n"
    "12 set n\n"
    "13 if s s +3\n"
    "14 if sen se -2\n"
    "15 if s s -2\n";

}  // namespace

std::string_view corpus_listing1_text() { return kListing1; }
std::string_view corpus_listing2_text() { return kListing2; }

Program corpus_listing1() { return parse(kListing1); }

UpdateBlock corpus_listing2() {
    UpdateBlock block{parse(kListing2).instructions};
    validate_update_block(block);
    return block;
}

}  // namespace smm
