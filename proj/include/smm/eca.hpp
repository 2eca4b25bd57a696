#pragma once
// Direct array-based elementary cellular automaton on a circular row.
// Ground truth for differential testing of the compiled machine programs.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace smm {

// One bit per cell, 0 = off/white, 1 = on/black. Topology is circular.
using Row = std::vector<std::uint8_t>;

// outcome[4L + 2C + R] for the neighborhood (L, C, R); Wolfram numbering.
using RuleTable = std::array<std::uint8_t, 8>;

RuleTable rule_table(std::uint8_t rule);
std::uint8_t rule_from_table(const RuleTable& table);

// The rule with left and right neighbors swapped.
std::uint8_t mirror_rule(std::uint8_t rule);

Row step_row(const Row& row, std::uint8_t rule);

// rows[0] = input, rows[k + 1] = step_row(rows[k]); t + 1 rows in total.
std::vector<Row> evolve(Row row, std::uint8_t rule, std::size_t iterations);

Row row_from_string(std::string_view bits);  // '0' / '1'
std::string row_to_string(const Row& row);

}  // namespace smm
