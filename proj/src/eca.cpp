#include "smm/eca.hpp"

#include <stdexcept>

namespace smm {

RuleTable rule_table(std::uint8_t rule) {
    RuleTable table{};
    for (int i = 0; i < 8; ++i) table[static_cast<std::size_t>(i)] = (rule >> i) & 1u;
    return table;
}

std::uint8_t rule_from_table(const RuleTable& table) {
    unsigned rule = 0;
    for (int i = 0; i < 8; ++i) rule |= (table[static_cast<std::size_t>(i)] & 1u) << i;
    return static_cast<std::uint8_t>(rule);
}

std::uint8_t mirror_rule(std::uint8_t rule) {
    RuleTable table = rule_table(rule);
    RuleTable mirrored{};
    for (int l = 0; l < 2; ++l)
        for (int c = 0; c < 2; ++c)
            for (int r = 0; r < 2; ++r)
                mirrored[static_cast<std::size_t>(4 * l + 2 * c + r)] =
                    table[static_cast<std::size_t>(4 * r + 2 * c + l)];
    return rule_from_table(mirrored);
}

Row step_row(const Row& row, std::uint8_t rule) {
    if (row.empty()) throw std::invalid_argument("row width must be at least 1");
    RuleTable table = rule_table(rule);
    std::size_t width = row.size();
    Row next(width);
    for (std::size_t i = 0; i < width; ++i) {
        std::uint8_t l = row[(i + width - 1) % width];
        std::uint8_t c = row[i];
        std::uint8_t r = row[(i + 1) % width];
        next[i] = table[static_cast<std::size_t>(4 * l + 2 * c + r)];
    }
    return next;
}

std::vector<Row> evolve(Row row, std::uint8_t rule, std::size_t iterations) {
    std::vector<Row> rows;
    rows.reserve(iterations + 1);
    rows.push_back(std::move(row));
    for (std::size_t t = 0; t < iterations; ++t) rows.push_back(step_row(rows.back(), rule));
    return rows;
}

Row row_from_string(std::string_view bits) {
    Row row;
    row.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("row bits must be '0' or '1'");
        row.push_back(c == '1' ? 1 : 0);
    }
    return row;
}

std::string row_to_string(const Row& row) {
    std::string out;
    out.reserve(row.size());
    for (std::uint8_t b : row) out += b ? '1' : '0';
    return out;
}

}  // namespace smm
