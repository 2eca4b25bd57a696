#include "smm/assembly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace smm {

namespace {

struct Token {
    std::string text;
    int column = 0;  // 1-based
};

// Tokens of one line with the comment stripped. Also reports where the
// remainder of the line begins after each token (for stop's verbatim tail).
std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Program run() {
        Program program;
        bool alphabet_set = false;
        std::size_t pos = 0;
        int lineno = 0;
        while (pos <= text_.size()) {
            std::size_t nl = text_.find('\n', pos);
            std::string_view raw = text_.substr(pos, nl == std::string_view::npos ? text_.size() - pos : nl - pos);
            pos = nl == std::string_view::npos ? text_.size() + 1 : nl + 1;
            ++lineno;
            if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

            std::string_view line = raw.substr(0, std::min(raw.find('#'), raw.size()));
            std::vector<Token> tokens = tokenize(line);
            if (tokens.empty()) continue;

            if (tokens[0].text == ".dirs") {
                if (!program.instructions.empty())
                    throw ParseError(lineno, tokens[0].column,
                                     ".dirs must appear before the first instruction");
                if (alphabet_set)
                    throw ParseError(lineno, tokens[0].column, "duplicate .dirs directive");
                if (tokens.size() < 2)
                    throw ParseError(lineno, tokens[0].column, ".dirs needs at least one direction");
                std::string alphabet;
                for (std::size_t i = 1; i < tokens.size(); ++i) {
                    if (tokens[i].text.size() != 1)
                        throw ParseError(lineno, tokens[i].column,
                                         "directions are single symbols, got '" + tokens[i].text + "'");
                    char c = tokens[i].text[0];
                    if (alphabet.find(c) != std::string::npos)
                        throw ParseError(lineno, tokens[i].column,
                                         std::string("duplicate direction '") + c + "'");
                    alphabet += c;
                }
                program.alphabet = alphabet;
                alphabet_set = true;
                continue;
            }

            parse_instruction(program, tokens, line, lineno);
        }
        return program;
    }

private:
    void parse_instruction(Program& program, std::vector<Token>& tokens,
                           std::string_view line, int lineno) {
        std::size_t t = 0;
        int index = program.length() + 1;
        if (all_digits(tokens[0].text)) {
            int explicit_no = 0;
            auto& s = tokens[0].text;
            auto res = std::from_chars(s.data(), s.data() + s.size(), explicit_no);
            if (res.ec != std::errc{} || explicit_no != index)
                throw ParseError(lineno, tokens[0].column,
                                 "explicit line number " + s + " does not match instruction index " +
                                     std::to_string(index));
            t = 1;
            if (t >= tokens.size())
                throw ParseError(lineno, tokens[0].column, "line number without an instruction");
        }

        const Token& mnemonic = tokens[t];
        SourceSpan span{lineno, mnemonic.column};
        const std::string& op = mnemonic.text;
        ++t;

        auto remaining = [&]() { return tokens.size() - t; };
        auto no_trailing = [&]() {
            if (t < tokens.size())
                throw ParseError(lineno, tokens[t].column,
                                 "unexpected trailing token '" + tokens[t].text + "'");
        };

        if (op == "new") {
            NewInstr instr;
            if (remaining() >= 1) {
                instr.label = tokens[t].text;
                ++t;
            }
            no_trailing();
            push(program, instr, span);
        } else if (op == "set") {
            if (remaining() < 1)
                throw ParseError(lineno, mnemonic.column, "set needs a direction operand");
            const Token& first = tokens[t];
            check_path_chars(program.alphabet, first, lineno, /*allow_dot=*/false);
            SetInstr instr;
            instr.d = first.text.back();
            instr.x = first.text.substr(0, first.text.size() - 1);
            ++t;
            if (remaining() >= 1 && tokens[t].text == "to" && remaining() >= 2) ++t;  // noise word
            if (remaining() >= 1) {
                instr.y = parse_path(program.alphabet, tokens[t], lineno);
                ++t;
            }
            no_trailing();
            push(program, instr, span);
        } else if (op == "ctr" || op == "center") {
            if (remaining() < 1)
                throw ParseError(lineno, mnemonic.column, "center needs a path operand");
            Path x = parse_path(program.alphabet, tokens[t], lineno);
            ++t;
            if (x.empty())
                throw ParseError(lineno, tokens[t - 1].column,
                                 "centering on the empty path is a no-op and is rejected");
            no_trailing();
            push(program, CenterInstr{std::move(x)}, span);
        } else if (op == "if") {
            if (remaining() < 1)
                throw ParseError(lineno, mnemonic.column, "if needs two paths and a target");
            Path x = parse_path(program.alphabet, tokens[t], lineno);
            ++t;
            if (remaining() < 1)
                throw ParseError(lineno, mnemonic.column, "if needs a second path");
            Path y = parse_path(program.alphabet, tokens[t], lineno);
            ++t;
            if (remaining() >= 1 && tokens[t].text == "then" && remaining() >= 2) ++t;  // noise word
            if (remaining() < 1)
                throw ParseError(lineno, mnemonic.column, "if needs a jump target");
            JumpTarget target = parse_target(tokens[t], lineno);
            ++t;
            no_trailing();
            push(program, IfInstr{std::move(x), std::move(y), target}, span);
        } else if (op == "stop") {
            // Message: the remainder of the (comment-stripped) line.
            std::size_t after = static_cast<std::size_t>(mnemonic.column - 1) + op.size();
            std::string message = after < line.size() ? trim(line.substr(after)) : std::string();
            push(program, StopInstr{std::move(message)}, span);
        } else {
            throw ParseError(lineno, mnemonic.column, "unknown mnemonic '" + op + "'");
        }
    }

    static void check_path_chars(const std::string& alphabet, const Token& token, int lineno,
                                 bool allow_dot) {
        if (allow_dot && token.text == ".") return;
        for (std::size_t i = 0; i < token.text.size(); ++i) {
            char c = token.text[i];
            if (alphabet.find(c) == std::string::npos)
                throw ParseError(lineno, token.column + static_cast<int>(i),
                                 std::string("direction '") + c + "' is not in the alphabet");
        }
    }

    static Path parse_path(const std::string& alphabet, const Token& token, int lineno) {
        if (token.text == ".") return Path();
        check_path_chars(alphabet, token, lineno, /*allow_dot=*/false);
        return token.text;
    }

    static JumpTarget parse_target(const Token& token, int lineno) {
        const std::string& s = token.text;
        JumpTarget target;
        std::size_t digits_from = 0;
        if (s[0] == '+') {
            target.kind = JumpTarget::Kind::RelativeForward;
            digits_from = 1;
        } else if (s[0] == '-') {
            target.kind = JumpTarget::Kind::RelativeBackward;
            digits_from = 1;
        }
        std::string digits = s.substr(digits_from);
        if (!all_digits(digits))
            throw ParseError(lineno, token.column, "malformed jump target '" + s + "'");
        int magnitude = 0;
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), magnitude);
        if (res.ec != std::errc{} || magnitude < 1)
            throw ParseError(lineno, token.column,
                             "jump magnitude must be a positive line count, got '" + s + "'");
        target.magnitude = magnitude;
        return target;
    }

    void push(Program& program, Instruction instr, SourceSpan span) {
        program.instructions.push_back(std::move(instr));
        program.spans.push_back(span);
    }

    std::string_view text_;
};

std::string render_path(const Path& path) { return path.empty() ? "." : path; }

std::string render_target(const JumpTarget& target) {
    switch (target.kind) {
        case JumpTarget::Kind::Absolute: return std::to_string(target.magnitude);
        case JumpTarget::Kind::RelativeForward: return "+" + std::to_string(target.magnitude);
        case JumpTarget::Kind::RelativeBackward: return "-" + std::to_string(target.magnitude);
    }
    return std::to_string(target.magnitude);
}

}  // namespace

Program parse(std::string_view text) { return Parser(text).run(); }

std::string render_instruction(const Instruction& instr) {
    struct Visitor {
        std::string operator()(const NewInstr& i) const {
            return i.label.empty() ? "new" : "new " + i.label;
        }
        std::string operator()(const SetInstr& i) const {
            std::string out = "set " + i.x + std::string(1, i.d);
            if (!i.y.empty()) out += " " + i.y;
            return out;
        }
        std::string operator()(const CenterInstr& i) const { return "ctr " + i.x; }
        std::string operator()(const IfInstr& i) const {
            return "if " + render_path(i.x) + " " + render_path(i.y) + " " + render_target(i.target);
        }
        std::string operator()(const StopInstr& i) const {
            return i.message.empty() ? "stop" : "stop " + i.message;
        }
    };
    return std::visit(Visitor{}, instr);
}

std::string render(const Program& program) {
    std::string out;
    if (program.alphabet != "nsew") {
        out += ".dirs";
        for (char c : program.alphabet) out += std::string(" ") + c;
        out += "\n";
    }
    for (int i = 0; i < program.length(); ++i) {
        out += std::to_string(i + 1) + " " +
               render_instruction(program.instructions[static_cast<std::size_t>(i)]) + "\n";
    }
    return out;
}

std::vector<Diagnostic> validate(const Program& program) {
    std::vector<Diagnostic> out;
    const int len = program.length();

    for (int line = 1; line <= len; ++line) {
        const auto* jump = std::get_if<IfInstr>(&program.instructions[static_cast<std::size_t>(line - 1)]);
        if (!jump) continue;
        int target = jump->target.target_line(line);
        if (target < 1) {
            out.push_back({Diagnostic::Severity::Error, line,
                           "jump target line " + std::to_string(target) + " is before line 1 (runtime fault)"});
        } else if (target == len + 1) {
            out.push_back({Diagnostic::Severity::Note, line,
                           "jump exits one past the end (intentional halt)"});
        } else if (target > len + 1) {
            out.push_back({Diagnostic::Severity::Warning, line,
                           "jump target line " + std::to_string(target) +
                               " is beyond the end (halts at runtime)"});
        }
    }

    // Naive flow reachability: both branches of every if are assumed possible.
    std::vector<bool> reached(static_cast<std::size_t>(len) + 1, false);
    std::vector<int> work;
    if (len >= 1) {
        reached[1] = true;
        work.push_back(1);
    }
    while (!work.empty()) {
        int line = work.back();
        work.pop_back();
        const Instruction& instr = program.instructions[static_cast<std::size_t>(line - 1)];
        auto visit_next = [&](int next) {
            if (next >= 1 && next <= len && !reached[static_cast<std::size_t>(next)]) {
                reached[static_cast<std::size_t>(next)] = true;
                work.push_back(next);
            }
        };
        if (std::holds_alternative<StopInstr>(instr)) continue;
        if (const auto* jump = std::get_if<IfInstr>(&instr)) visit_next(jump->target.target_line(line));
        visit_next(line + 1);
    }
    for (int line = 1; line <= len; ++line) {
        if (!reached[static_cast<std::size_t>(line)])
            out.push_back({Diagnostic::Severity::Warning, line, "unreachable instruction"});
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
    return out;
}

const char* severity_name(Diagnostic::Severity severity) {
    switch (severity) {
        case Diagnostic::Severity::Note: return "note";
        case Diagnostic::Severity::Warning: return "warning";
        case Diagnostic::Severity::Error: return "error";
    }
    return "note";
}

}  // namespace smm
