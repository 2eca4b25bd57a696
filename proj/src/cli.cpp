#include "smm/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "smm/harness.hpp"

namespace smm {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    return static_cast<bool>(out);
}

struct RowSpec {
    int width = 0;
    std::string pattern;
    bool single_on = false;
};

// Resolves --width/--pattern/--single-on into a concrete initial row.
// Returns nullopt (usage error) on inconsistent flags.
std::optional<Row> resolve_row(const RowSpec& spec, std::ostream& err) {
    if (!spec.pattern.empty()) {
        if (spec.single_on) {
            err << "error: --pattern and --single-on are mutually exclusive\n";
            return std::nullopt;
        }
        Row row;
        try {
            row = row_from_string(spec.pattern);
        } catch (const std::exception&) {
            err << "error: --pattern must be a string of 0s and 1s\n";
            return std::nullopt;
        }
        if (row.empty()) {
            err << "error: --pattern must not be empty\n";
            return std::nullopt;
        }
        if (spec.width != 0 && spec.width != static_cast<int>(row.size())) {
            err << "error: --width " << spec.width << " contradicts --pattern of length "
                << row.size() << "\n";
            return std::nullopt;
        }
        return row;
    }
    if (spec.width < 1) {
        err << "error: --width must be at least 1 (or give --pattern)\n";
        return std::nullopt;
    }
    Row row(static_cast<std::size_t>(spec.width), 0);
    row[row.size() / 2] = 1;  // --single-on (the default): on-cell at floor(W/2)
    return row;
}

struct IntRange {
    int lo = 0;
    int hi = 0;
};

// "N" or "A..B", both inclusive.
std::optional<IntRange> parse_range(const std::string& text, int min, int max,
                                    std::ostream& err) {
    IntRange r;
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            r.lo = r.hi = std::stoi(text);
        } else {
            r.lo = std::stoi(text.substr(0, dots));
            r.hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        err << "error: malformed range '" << text << "' (expected N or A..B)\n";
        return std::nullopt;
    }
    if (r.lo < min || r.hi > max || r.lo > r.hi) {
        err << "error: range '" << text << "' outside [" << min << ", " << max << "]\n";
        return std::nullopt;
    }
    return r;
}

void print_metrics(std::ostream& out, const MachineState& m) {
    out << m.status.describe() << "\n";
    out << "steps: " << m.steps_executed << "  nodes created: " << m.nodes_created
        << "  reachable: " << m.graph.reachable_count() << "\n";
}

int cmd_run(const std::string& path, bool trace, const std::string& dot_path,
            const Limits& limits, std::ostream& out, std::ostream& err) {
    std::optional<std::string> text = read_file(path);
    if (!text) {
        err << "error: cannot read " << path << "\n";
        return kExitFile;
    }
    Program program;
    try {
        program = parse(*text);
    } catch (const ParseError& e) {
        err << path << ": " << e.what() << "\n";
        return kExitFile;
    }
    StorageGraph graph(program.alphabet);
    MachineState m = load(std::move(program), std::move(graph));
    TraceSink sink;
    if (trace) sink = [&out](const TraceEvent& ev) { out << ev.to_line() << "\n"; };
    run(m, limits, sink);
    print_metrics(out, m);
    if (!dot_path.empty() && !write_file(dot_path, m.graph.to_dot())) {
        err << "error: cannot write " << dot_path << "\n";
        return kExitFile;
    }
    return m.status.faulted() ? kExitFault : kExitOk;
}

int cmd_gen(const Row& row, int rule, int iters, const std::string& out_path, std::ostream& out,
            std::ostream& err) {
    GeneratedProgram gp =
        gen_program(row, static_cast<std::uint8_t>(rule), static_cast<std::size_t>(iters));
    std::string text = render(gp.program);
    if (out_path.empty()) {
        out << text;
        return kExitOk;
    }
    if (!write_file(out_path, text)) {
        err << "error: cannot write " << out_path << "\n";
        return kExitFile;
    }
    return kExitOk;
}

int cmd_eca(const Row& row, int rule, int iters, const std::string& diagram_path,
            const std::string& dot_path, const std::string& report_path, const Limits& limits,
            std::ostream& out, std::ostream& err) {
    GeneratedProgram gp =
        gen_program(row, static_cast<std::uint8_t>(rule), static_cast<std::size_t>(iters));
    std::vector<Row> oracle =
        evolve(row, static_cast<std::uint8_t>(rule), static_cast<std::size_t>(iters));
    std::string id = "eca-rule" + std::to_string(rule) + "-w" + std::to_string(row.size()) +
                     "-i" + std::to_string(iters);
    RunReport report = diff_run_program(gp, oracle, id, limits);

    out << report.program_id << ": " << verdict_name(report.verdict) << "\n";
    out << report.status.describe() << "\n";
    out << "steps: " << report.steps << "  nodes created: " << report.nodes_created;
    if (!report.reachable_per_generation.empty())
        out << "  reachable: " << report.reachable_per_generation.back();
    out << "\n";
    if (report.verdict == Verdict::Mismatch)
        out << "first mismatch: generation " << report.mismatch_generation << ", cell "
            << report.mismatch_cell << "\n";

    if (!diagram_path.empty()) {
        DiagramFormat format = diagram_path.size() >= 4 &&
                                       diagram_path.rfind(".pbm") == diagram_path.size() - 4
                                   ? DiagramFormat::Pbm
                                   : DiagramFormat::Text;
        if (!write_file(diagram_path, render_spacetime({report.generations}, format))) {
            err << "error: cannot write " << diagram_path << "\n";
            return kExitFile;
        }
    }
    if (!dot_path.empty()) {
        // Re-run to obtain the final graph; diff_run reports rows only.
        MachineState m = load(gp.program, StorageGraph("nsew"));
        run(m, limits);
        if (!write_file(dot_path, m.graph.to_dot())) {
            err << "error: cannot write " << dot_path << "\n";
            return kExitFile;
        }
    }
    if (!report_path.empty() &&
        !write_file(report_path, report_to_json(report).dump(2) + "\n")) {
        err << "error: cannot write " << report_path << "\n";
        return kExitFile;
    }

    switch (report.verdict) {
        case Verdict::Match: return kExitOk;
        case Verdict::Mismatch: return kExitMismatch;
        case Verdict::Fault: return kExitFault;
    }
    return kExitFault;
}

Row random_row(std::uint64_t seed, int rule, int width, int sample) {
    std::string key = std::to_string(seed) + ":" + std::to_string(rule) + ":" +
                      std::to_string(width) + ":" + std::to_string(sample);
    std::mt19937_64 engine(fnv1a64(key));
    std::bernoulli_distribution bit(0.5);
    Row row(static_cast<std::size_t>(width));
    for (auto& cell : row) cell = bit(engine) ? 1 : 0;
    return row;
}

int cmd_check(const IntRange& rules, const IntRange& widths, int iters, std::uint64_t seed,
              std::ostream& out) {
    constexpr int kRowsPerCase = 4;
    struct Failure {
        int rule, width, sample;
        Verdict verdict;
    };
    std::vector<Failure> failures;
    std::vector<bool> rule_ok(256, true);
    long cases = 0;

    for (int rule = rules.lo; rule <= rules.hi; ++rule) {
        for (int width = widths.lo; width <= widths.hi; ++width) {
            for (int sample = 0; sample < kRowsPerCase; ++sample) {
                Row row = random_row(seed, rule, width, sample);
                RunReport report = diff_run(row, static_cast<std::uint8_t>(rule),
                                            static_cast<std::size_t>(iters));
                ++cases;
                if (report.verdict != Verdict::Match) {
                    failures.push_back({rule, width, sample, report.verdict});
                    rule_ok[static_cast<std::size_t>(rule)] = false;
                }
            }
        }
    }

    out << "rules " << rules.lo << ".." << rules.hi << "  widths " << widths.lo << ".."
        << widths.hi << "  iters " << iters << "  rows/case " << kRowsPerCase << "  seed "
        << seed << "\n";
    for (int base = rules.lo; base <= rules.hi; base += 16) {
        int end = std::min(base + 15, rules.hi);
        char head[32];
        std::snprintf(head, sizeof head, "rule %3d-%3d: ", base, end);
        out << head;
        for (int rule = base; rule <= end; ++rule)
            out << (rule_ok[static_cast<std::size_t>(rule)] ? '.' : 'X');
        out << "\n";
    }
    for (const Failure& f : failures)
        out << "FAIL rule " << f.rule << " width " << f.width << " sample " << f.sample << ": "
            << verdict_name(f.verdict) << "\n";
    out << cases - static_cast<long>(failures.size()) << "/" << cases << " cases match\n";
    return failures.empty() ? kExitOk : kExitMismatch;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"storage modification machine toolkit"};
    app.require_subcommand(1);

    std::string run_file, run_dot;
    bool run_trace = false;
    Limits limits;
    auto* run_cmd = app.add_subcommand("run", "execute an .smm program on a fresh graph");
    run_cmd->add_option("file", run_file, "program file")->required();
    run_cmd->add_flag("--trace", run_trace, "print one line per executed instruction");
    run_cmd->add_option("--dot", run_dot, "write the final graph as DOT");
    run_cmd->add_option("--max-steps", limits.max_steps, "step limit")->check(CLI::PositiveNumber);
    run_cmd->add_option("--max-nodes", limits.max_nodes, "node limit")->check(CLI::PositiveNumber);

    RowSpec gen_row;
    int gen_rule = 0, gen_iters = 0;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("gen", "compile a cellular automaton run to .smm");
    gen_cmd->add_option("--rule", gen_rule, "rule number")->required()->check(CLI::Range(0, 255));
    gen_cmd->add_option("--width", gen_row.width, "row width")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--pattern", gen_row.pattern, "initial row bits");
    gen_cmd->add_flag("--single-on", gen_row.single_on, "single centered on-cell (default)");
    gen_cmd->add_option("--iters", gen_iters, "iterations")->required()->check(CLI::NonNegativeNumber);
    gen_cmd->add_option("-o,--output", gen_out, "output file (stdout when omitted)");

    RowSpec eca_row;
    int eca_rule = 0, eca_iters = 0;
    std::string eca_diagram, eca_dot, eca_report;
    auto* eca_cmd = app.add_subcommand("eca", "simulate on the machine and verify against the oracle");
    eca_cmd->add_option("--rule", eca_rule, "rule number")->required()->check(CLI::Range(0, 255));
    eca_cmd->add_option("--width", eca_row.width, "row width")->check(CLI::PositiveNumber);
    eca_cmd->add_option("--pattern", eca_row.pattern, "initial row bits");
    eca_cmd->add_flag("--single-on", eca_row.single_on, "single centered on-cell (default)");
    eca_cmd->add_option("--iters", eca_iters, "iterations")->required()->check(CLI::NonNegativeNumber);
    eca_cmd->add_option("--diagram", eca_diagram, "spacetime diagram file (.pbm for PBM, else text)");
    eca_cmd->add_option("--dot", eca_dot, "write the final graph as DOT");
    eca_cmd->add_option("--report", eca_report, "write the run report as JSON");
    eca_cmd->add_option("--max-steps", limits.max_steps, "step limit")->check(CLI::PositiveNumber);
    eca_cmd->add_option("--max-nodes", limits.max_nodes, "node limit")->check(CLI::PositiveNumber);

    std::string check_rules = "0..255", check_widths = "11";
    int check_iters = 16;
    std::string check_seed;
    auto* check_cmd = app.add_subcommand("check", "sweep rules against the oracle");
    check_cmd->add_option("--rules", check_rules, "rule range, N or A..B (default 0..255)");
    check_cmd->add_option("--widths", check_widths, "width range, N or A..B (default 11)");
    check_cmd->add_option("--iters", check_iters, "iterations per case")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", check_seed, "sweep seed (default $SMM110_SEED, else 0)");

    std::vector<const char*> argv;
    argv.push_back("smm110");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run_file, run_trace, run_dot, limits, out, err);

        if (gen_cmd->parsed()) {
            std::optional<Row> row = resolve_row(gen_row, err);
            if (!row) return kExitUsage;
            return cmd_gen(*row, gen_rule, gen_iters, gen_out, out, err);
        }

        if (eca_cmd->parsed()) {
            std::optional<Row> row = resolve_row(eca_row, err);
            if (!row) return kExitUsage;
            return cmd_eca(*row, eca_rule, eca_iters, eca_diagram, eca_dot, eca_report, limits,
                           out, err);
        }

        if (check_cmd->parsed()) {
            std::uint64_t seed = 0;
            std::string seed_text = check_seed;
            if (seed_text.empty()) {
                if (const char* env = std::getenv("SMM110_SEED")) seed_text = env;
            }
            if (!seed_text.empty()) {
                try {
                    seed = std::stoull(seed_text);
                } catch (const std::exception&) {
                    err << "error: seed '" << seed_text << "' is not a number\n";
                    return kExitUsage;
                }
            }
            std::optional<IntRange> rules = parse_range(check_rules, 0, 255, err);
            if (!rules) return kExitUsage;
            std::optional<IntRange> widths = parse_range(check_widths, 1, 4096, err);
            if (!widths) return kExitUsage;
            return cmd_check(*rules, *widths, check_iters, seed, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFault;
    }
    return kExitUsage;
}

}  // namespace smm
