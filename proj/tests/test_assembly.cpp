#include <doctest.h>

#include <random>

#include "smm/assembly.hpp"
#include "smm/codegen.hpp"

using namespace smm;

namespace {

Instruction parse_one(const std::string& line) {
    Program p = parse(line);
    REQUIRE(p.length() == 1);
    return p.instructions[0];
}

}  // namespace

TEST_CASE("set operand splits into x-prefix and final direction") {
    CHECK(parse_one("set we") == Instruction{SetInstr{"w", 'e', ""}});
    CHECK(parse_one("set n") == Instruction{SetInstr{"", 'n', ""}});
    CHECK(parse_one("set w eeeeee") == Instruction{SetInstr{"", 'w', "eeeeee"}});
    CHECK(parse_one("set eeeeeee") == Instruction{SetInstr{"eeeeee", 'e', ""}});
    CHECK(parse_one("set n s") == Instruction{SetInstr{"", 'n', "s"}});
    CHECK(parse_one("set we to eeeeee") == Instruction{SetInstr{"w", 'e', "eeeeee"}});
    CHECK(parse_one("set we .") == Instruction{SetInstr{"w", 'e', ""}});
}

TEST_CASE("if parses paths, noise word and target kinds") {
    CHECK(parse_one("if swn sw +2") ==
          Instruction{IfInstr{"swn", "sw", {JumpTarget::Kind::RelativeForward, 2}}});
    CHECK(parse_one("if s s -2") ==
          Instruction{IfInstr{"s", "s", {JumpTarget::Kind::RelativeBackward, 2}}});
    CHECK(parse_one("if s s 1") ==
          Instruction{IfInstr{"s", "s", {JumpTarget::Kind::Absolute, 1}}});
    CHECK(parse_one("if s s then 4") ==
          Instruction{IfInstr{"s", "s", {JumpTarget::Kind::Absolute, 4}}});
    CHECK(parse_one("if . . 1") ==
          Instruction{IfInstr{"", "", {JumpTarget::Kind::Absolute, 1}}});
}

TEST_CASE("center and new") {
    CHECK(parse_one("ctr www") == Instruction{CenterInstr{"www"}});
    CHECK(parse_one("center www") == Instruction{CenterInstr{"www"}});
    CHECK(parse_one("new center-T0") == Instruction{NewInstr{"center-T0"}});
    CHECK(parse_one("new") == Instruction{NewInstr{""}});
}

TEST_CASE("stop keeps the rest of the line") {
    CHECK(parse_one("stop") == Instruction{StopInstr{""}});
    CHECK(parse_one("stop done") == Instruction{StopInstr{"done"}});
    CHECK(parse_one("stop all done now") == Instruction{StopInstr{"all done now"}});
    CHECK(parse_one("stop done # comment") == Instruction{StopInstr{"done"}});
}

TEST_CASE("comments, blank lines and explicit numbering") {
    Program p = parse("# header\n\n1 new a\n 2 set n # trailing\n\n3 stop\n");
    CHECK(p.length() == 3);
    CHECK(p.spans[1].line == 4);

    CHECK_THROWS_AS(parse("2 new a"), ParseError);
    CHECK_THROWS_AS(parse("1 new a\n3 stop"), ParseError);
    CHECK_NOTHROW(parse("new a\n2 stop"));  // numbering may start mid-file if consistent
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("frob x"), ParseError);              // unknown mnemonic
    CHECK_THROWS_AS(parse("set q"), ParseError);               // direction outside alphabet
    CHECK_THROWS_AS(parse("set"), ParseError);                 // missing direction token
    CHECK_THROWS_AS(parse("ctr ."), ParseError);               // centering on the empty path
    CHECK_THROWS_AS(parse("ctr"), ParseError);
    CHECK_THROWS_AS(parse("if s s"), ParseError);              // missing target
    CHECK_THROWS_AS(parse("if s s +0"), ParseError);           // magnitude below 1
    CHECK_THROWS_AS(parse("if s s 0"), ParseError);
    CHECK_THROWS_AS(parse("if s s ++2"), ParseError);
    CHECK_THROWS_AS(parse("if s s 2x"), ParseError);
    CHECK_THROWS_AS(parse("new a b"), ParseError);             // trailing token
    CHECK_THROWS_AS(parse("set we e junk"), ParseError);
    CHECK_THROWS_AS(parse("1"), ParseError);                   // number without instruction

    bool threw = false;
    try {
        parse("new a\nset q");
    } catch (const ParseError& e) {
        threw = true;
        CHECK(e.line == 2);
        CHECK(e.column == 5);
    }
    CHECK(threw);
}

TEST_CASE(".dirs directive") {
    Program p = parse(".dirs a b c\nset ab c");
    CHECK(p.alphabet == "abc");
    CHECK(p.instructions[0] == Instruction{SetInstr{"a", 'b', "c"}});

    CHECK_THROWS_AS(parse(".dirs"), ParseError);
    CHECK_THROWS_AS(parse(".dirs a a"), ParseError);
    CHECK_THROWS_AS(parse(".dirs ab"), ParseError);      // multi-symbol direction
    CHECK_THROWS_AS(parse("new x\n.dirs a"), ParseError);  // after first instruction
    CHECK_THROWS_AS(parse(".dirs a\n.dirs b"), ParseError);
}

TEST_CASE("render produces canonical text that reparses identically") {
    Program listing2 = parse(corpus_listing2_text());
    Program again = parse(render(listing2));
    CHECK(again == listing2);

    CHECK(render_instruction(SetInstr{"", 'n', ""}) == "set n");
    CHECK(render_instruction(IfInstr{"s", "s", {JumpTarget::Kind::Absolute, 1}}) == "if s s 1");
    CHECK(render_instruction(IfInstr{"", "", {JumpTarget::Kind::RelativeBackward, 3}}) ==
          "if . . -3");

    Program custom = parse(".dirs x y\nset xy\nstop bye");
    CHECK(render(custom) == ".dirs x y\n1 set xy\n2 stop bye\n");
    CHECK(parse(render(custom)) == custom);
}

TEST_CASE("validate flags bad targets and unreachable code") {
    // Backward jump out of the program front.
    Program bad = parse("new a\nnew b\nif s s -9");
    auto diags = validate(bad);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].severity == Diagnostic::Severity::Error);
    CHECK(diags[0].line == 3);
    CHECK(diags[0].message.find("-6") != std::string::npos);

    // Target far past the end is legal but suspicious.
    auto warn = validate(parse("if s s 20\nstop"));
    REQUIRE(warn.size() == 1);
    CHECK(warn[0].severity == Diagnostic::Severity::Warning);

    // Exactly one past the end is the idiomatic exit.
    auto note = validate(parse("if s s +2\nstop"));
    REQUIRE(note.size() == 1);
    CHECK(note[0].severity == Diagnostic::Severity::Note);

    auto unreachable = validate(parse("stop\nnew a"));
    REQUIRE(unreachable.size() == 1);
    CHECK(unreachable[0].severity == Diagnostic::Severity::Warning);
    CHECK(unreachable[0].line == 2);
}

TEST_CASE("validate on the corpus") {
    CHECK(validate(corpus_listing1()).empty());

    auto diags = validate(parse(corpus_listing2_text()));
    REQUIRE(diags.size() == 2);
    for (const auto& d : diags) CHECK(d.severity == Diagnostic::Severity::Note);
    CHECK(diags[0].line == 9);
    CHECK(diags[1].line == 13);
}

namespace {

// Random but well-formed programs for the round-trip property.
Program random_program(std::mt19937& rng) {
    Program p;
    if (rng() % 4 == 0) p.alphabet = "abc";
    auto dir = [&] { return p.alphabet[rng() % p.alphabet.size()]; };
    auto path = [&](std::size_t max_len) {
        Path out;
        std::size_t len = rng() % (max_len + 1);
        for (std::size_t i = 0; i < len; ++i) out += dir();
        return out;
    };
    std::size_t count = 1 + rng() % 24;
    for (std::size_t i = 0; i < count; ++i) {
        switch (rng() % 5) {
            case 0: p.instructions.push_back(NewInstr{rng() % 2 ? "n" + std::to_string(rng() % 90) : ""}); break;
            case 1: p.instructions.push_back(SetInstr{path(3), dir(), path(3)}); break;
            case 2: p.instructions.push_back(CenterInstr{path(2) + dir()}); break;
            case 3: {
                JumpTarget t;
                switch (rng() % 3) {
                    case 0: t.kind = JumpTarget::Kind::Absolute; break;
                    case 1: t.kind = JumpTarget::Kind::RelativeForward; break;
                    default: t.kind = JumpTarget::Kind::RelativeBackward; break;
                }
                t.magnitude = 1 + static_cast<int>(rng() % (count + 2));
                p.instructions.push_back(IfInstr{path(3), path(3), t});
                break;
            }
            default:
                p.instructions.push_back(StopInstr{rng() % 2 ? "done at " + std::to_string(rng() % 90) : ""});
                break;
        }
    }
    return p;
}

}  // namespace

TEST_CASE("parse-render round trip on generated programs") {
    std::mt19937 rng(424242);
    for (int i = 0; i < 300; ++i) {
        Program p = random_program(rng);
        std::string text = render(p);
        Program reparsed = parse(text);
        CHECK(reparsed == p);
        CHECK(render(reparsed) == text);  // parse . render . parse == parse
    }
}
