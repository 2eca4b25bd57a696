#pragma once
// Assembly dialect for the machine: parse, canonical printing, and static
// diagnostics.
//
// Line-oriented, whitespace-separated tokens. '#' starts a comment, blank
// lines are ignored, an optional leading integer on an instruction line
// must equal the instruction's 1-based index. A ".dirs d1 d2 ..." directive
// before the first instruction overrides the default alphabet n s e w.
//
//   new [label]            create a node, all edges to the old center, recenter
//   set XD [to] [Y]        point p(X)'s D edge at p(Y); X = prefix, D = last
//                          symbol of the first operand; Y defaults to empty
//   ctr X | center X       move the center to p(X); X must be non-empty
//   if X Y [then] T        jump to T when p(X) = p(Y); T is a line number,
//                          absolute, or relative (+n / -n)
//   stop [message]         halt, recording the message
//
// "." is the explicit empty path wherever a path operand is expected.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "smm/graph.hpp"

namespace smm {

struct JumpTarget {
    enum class Kind { Absolute, RelativeForward, RelativeBackward };
    Kind kind = Kind::Absolute;
    int magnitude = 1;  // >= 1

    // Target line for an instruction at line `pc`; may fall outside the
    // program (below 1 is a runtime fault, past the end is a clean halt).
    int target_line(int pc) const {
        switch (kind) {
            case Kind::Absolute: return magnitude;
            case Kind::RelativeForward: return pc + magnitude;
            case Kind::RelativeBackward: return pc - magnitude;
        }
        return magnitude;
    }

    bool operator==(const JumpTarget&) const = default;
};

struct NewInstr {
    std::string label;
    bool operator==(const NewInstr&) const = default;
};
struct SetInstr {
    Path x;
    char d = '\0';
    Path y;
    bool operator==(const SetInstr&) const = default;
};
struct CenterInstr {
    Path x;  // non-empty
    bool operator==(const CenterInstr&) const = default;
};
struct IfInstr {
    Path x;
    Path y;
    JumpTarget target;
    bool operator==(const IfInstr&) const = default;
};
struct StopInstr {
    std::string message;
    bool operator==(const StopInstr&) const = default;
};

using Instruction = std::variant<NewInstr, SetInstr, CenterInstr, IfInstr, StopInstr>;

// 1-based source position of an instruction's first token.
struct SourceSpan {
    int line = 0;
    int column = 0;
};

struct Program {
    std::string alphabet = "nsew";
    std::vector<Instruction> instructions;  // index 0 is line 1
    std::vector<SourceSpan> spans;          // parallel to instructions

    int length() const { return static_cast<int>(instructions.size()); }

    bool operator==(const Program& o) const {
        return alphabet == o.alphabet && instructions == o.instructions;
    }
};

struct ParseError : std::runtime_error {
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line(line),
          column(column) {}
    int line;
    int column;
};

Program parse(std::string_view text);

// Canonical text: explicit line numbers, single spaces, "ctr", omitted empty
// Y operand, "." for empty paths in if, signed relative targets. A non-default
// alphabet is emitted as a leading .dirs directive. parse(render(p)) == p.
std::string render(const Program& program);

// One instruction in canonical form, without a line number.
std::string render_instruction(const Instruction& instr);

struct Diagnostic {
    enum class Severity { Note, Warning, Error };
    Severity severity = Severity::Note;
    int line = 0;  // instruction index the diagnostic is about
    std::string message;
};

// Static checks: jump targets below line 1 (error), targets more than one
// past the end (warning), targets exactly one past the end (note: intentional
// halt), instructions unreachable by naive flow analysis (warning).
std::vector<Diagnostic> validate(const Program& program);

const char* severity_name(Diagnostic::Severity severity);

}  // namespace smm
