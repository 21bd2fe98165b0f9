#include "slink/schema_parse.hpp"

#include "slink/util.hpp"

#include <cctype>

namespace slink {

namespace {

constexpr std::string_view kTrailingPunct = ".,;:!?`'\"";

std::string clean_name(std::string_view raw) {
    std::string s = collapse_ws(raw);
    while (!s.empty() && kTrailingPunct.find(s.back()) != std::string_view::npos) {
        s.pop_back();
    }
    std::size_t b = 0;
    while (b < s.size() && (s[b] == '`' || s[b] == '\'' || s[b] == '"')) ++b;
    s.erase(0, b);
    return collapse_ws(s);
}

// Drops code-fence lines and strips bullet markers and leading "K:" labels.
std::string preprocess(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::string_view line : split_any(text, "\n")) {
        std::string_view t = trim_ws(line);
        if (t.starts_with("```")) continue;
        if (t.starts_with("- ") || t.starts_with("* ")) t = trim_ws(t.substr(2));
        if (t.starts_with("K:")) t = trim_ws(t.substr(2));
        out.append(t);
        out.push_back('\n');
    }
    return out;
}

// Splits inter-entry text on ',' and '\n'; cleaned non-empty fragments are
// reported as skipped spans unless one is consumed as the next table name.
void flush_fragments(std::string_view between, std::vector<std::string>& skipped) {
    for (std::string_view frag : split_any(between, ",\n")) {
        const std::string cleaned = clean_name(frag);
        if (!cleaned.empty()) skipped.push_back(cleaned);
    }
}

} // namespace

ParsedSchema parse_schema(std::string_view raw_text) {
    ParsedSchema result;
    const std::string text = preprocess(raw_text);

    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t open = text.find('(', pos);
        if (open == std::string_view::npos) {
            flush_fragments(std::string_view(text).substr(pos), result.skipped);
            break;
        }
        // The last fragment before '(' is the table name; earlier fragments
        // are stray text.
        std::string table_name;
        {
            std::string_view head = std::string_view(text).substr(pos, open - pos);
            std::vector<std::string> fragments;
            for (std::string_view frag : split_any(head, ",\n")) {
                const std::string cleaned = clean_name(frag);
                if (!cleaned.empty()) fragments.push_back(cleaned);
            }
            if (!fragments.empty()) {
                table_name = fragments.back();
                fragments.pop_back();
            }
            for (auto& f : fragments) result.skipped.push_back(std::move(f));
        }

        const std::size_t close = text.find(')', open + 1);
        if (close == std::string_view::npos) {
            const std::string tail = clean_name(std::string_view(text).substr(pos));
            if (!tail.empty()) result.skipped.push_back(tail);
            break;
        }

        std::vector<std::string> columns;
        for (std::string_view piece :
             split_any(std::string_view(text).substr(open + 1, close - open - 1), ",")) {
            std::string col = clean_name(piece);
            if (!col.empty()) columns.push_back(std::move(col));
        }

        if (table_name.empty() || columns.empty()) {
            const std::string span =
                clean_name(std::string_view(text).substr(pos, close + 1 - pos));
            if (!span.empty()) result.skipped.push_back(span);
        } else {
            result.tables.push_back({std::move(table_name), std::move(columns)});
        }
        pos = close + 1;
    }
    return result;
}

std::string serialize_schema(const std::vector<ParsedTable>& tables) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i > 0) out += ", ";
        out += tables[i].name + "(";
        for (std::size_t j = 0; j < tables[i].columns.size(); ++j) {
            if (j > 0) out += ", ";
            out += tables[i].columns[j];
        }
        out += ")";
    }
    return out;
}

} // namespace slink
