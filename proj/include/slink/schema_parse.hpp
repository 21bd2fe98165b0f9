#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace slink {

struct ParsedTable {
    std::string name;
    std::vector<std::string> columns;

    friend bool operator==(const ParsedTable&, const ParsedTable&) = default;
};

struct ParsedSchema {
    std::vector<ParsedTable> tables;
    std::vector<std::string> skipped; // malformed spans, in input order
};

/// Parses "Table(col, col), Other(col)" style schema strings. Entries are
/// NAME '(' NAME (',' NAME)* ')' separated by commas or newlines. Names keep
/// internal spaces; surrounding whitespace and trailing punctuation are
/// trimmed. Malformed fragments are skipped and reported, not fatal.
/// Tolerates bullets, code fences, and trailing periods.
ParsedSchema parse_schema(std::string_view text);

/// Canonical form: "A(x, y), B(z)". parse_schema(serialize_schema(t)).tables == t.
std::string serialize_schema(const std::vector<ParsedTable>& tables);

} // namespace slink
