#include "slink/documents.hpp"

namespace slink {

std::vector<SchemaDocument> explode(const SchemaCatalog& catalog, const ExplodeOptions& options) {
    std::vector<SchemaDocument> docs;
    docs.reserve(catalog.column_count());
    int next_id = 0;
    for (std::size_t di = 0; di < catalog.databases.size(); ++di) {
        const Database& db = catalog.databases[di];
        for (std::size_t ti = 0; ti < db.tables.size(); ++ti) {
            const Table& table = db.tables[ti];
            const std::string table_text =
                (options.prefix_db && !db.name.empty()) ? db.name + "." + table.name : table.name;
            const std::string qualified_table =
                db.name.empty() ? table.name : db.name + "." + table.name;
            for (std::size_t ci = 0; ci < table.columns.size(); ++ci) {
                const Column& col = table.columns[ci];
                SchemaDocument doc;
                doc.doc_id = next_id++;
                doc.qualified_name = qualified_table + "." + col.name;
                doc.display_text = table_text + "." + col.name;
                if (options.append_descriptions && !col.description.empty()) {
                    doc.display_text += " " + col.description;
                }
                doc.database_index = static_cast<int>(di);
                doc.table_index = static_cast<int>(ti);
                doc.column_index = static_cast<int>(ci);
                docs.push_back(std::move(doc));
            }
        }
    }
    return docs;
}

std::string table_qualified_name(const SchemaCatalog& catalog, const SchemaDocument& doc) {
    const Database& db = catalog.databases.at(static_cast<std::size_t>(doc.database_index));
    const Table& table = db.tables.at(static_cast<std::size_t>(doc.table_index));
    return db.name.empty() ? table.name : db.name + "." + table.name;
}

} // namespace slink
