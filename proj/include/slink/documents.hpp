#pragma once

#include "slink/catalog.hpp"

#include <string>
#include <vector>

namespace slink {

/// One retrievable unit: a column qualified by its table (and database).
struct SchemaDocument {
    int doc_id = -1;            // dense 0..N-1 in catalog iteration order
    std::string qualified_name; // db.table.column, or table.column when db is unnamed
    std::string display_text;   // the text that gets embedded
    int database_index = -1;    // back-reference into the owning catalog
    int table_index = -1;
    int column_index = -1;
};

struct ExplodeOptions {
    /// Prefix the table text with the database name (the union-benchmark
    /// convention). Affects display_text only; qualified names always carry
    /// the database name when one is present.
    bool prefix_db = true;
    /// Append a column's description to its display text, separated by a
    /// single space.
    bool append_descriptions = true;
};

/// Explodes a catalog into one document per column, ordering fixed by
/// (database, table, column) file position.
std::vector<SchemaDocument> explode(const SchemaCatalog& catalog, const ExplodeOptions& options = {});

/// The qualified name of a document's owning table ("db.table" or "table").
std::string table_qualified_name(const SchemaCatalog& catalog, const SchemaDocument& doc);

} // namespace slink
