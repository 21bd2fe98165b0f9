#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace slink {

struct Column {
    std::string name;
    std::string description; // optional free text, empty when absent
};

struct ForeignKey {
    std::string column;     // local column name
    std::string ref_table;  // target table (within the same database)
    std::string ref_column; // target column
};

struct Table {
    std::string name;
    std::vector<Column> columns;
    std::vector<std::string> primary_key;
    std::vector<ForeignKey> foreign_keys;

    const Column* find_column(std::string_view column_name) const;
};

struct Database {
    std::string name;
    std::vector<Table> tables;

    const Table* find_table(std::string_view table_name) const;
};

struct SchemaCatalog {
    std::vector<Database> databases;

    std::size_t table_count() const;
    std::size_t column_count() const;
};

/// Loads and validates a catalog file (see docs/formats in README).
/// Throws ParseError on malformed JSON, ValidationError on invariant
/// violations naming the offending entity.
SchemaCatalog load_catalog(const std::filesystem::path& path);

/// Builds a catalog from an already-parsed JSON document.
/// `allow_dotted_names` admits '.' inside table names, for files whose names
/// were qualified upstream (exported subsets). Raw catalogs reject dots so
/// qualified names stay unambiguous.
SchemaCatalog catalog_from_json(const nlohmann::json& doc, bool allow_dotted_names = false);

nlohmann::json catalog_to_json(const SchemaCatalog& catalog);
void save_catalog(const SchemaCatalog& catalog, const std::filesystem::path& path);

/// Checks all catalog invariants: unique (db, table) pairs, unique column
/// names per table, resolvable primary/foreign keys, no '.' in raw names.
void validate_catalog(const SchemaCatalog& catalog, bool allow_dotted_names = false);

} // namespace slink
