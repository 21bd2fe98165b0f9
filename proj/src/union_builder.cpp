#include "slink/union_builder.hpp"

#include "slink/errors.hpp"

#include <set>
#include <string>

namespace slink {

SchemaCatalog build_union(const std::vector<SchemaCatalog>& inputs) {
    SchemaCatalog out;
    std::set<std::string> names;
    for (const SchemaCatalog& cat : inputs) {
        for (const Database& db : cat.databases) {
            if (!names.insert(db.name).second) {
                throw ValidationError("build_union: duplicate database name '" + db.name + "'");
            }
            out.databases.push_back(db);
        }
    }
    validate_catalog(out);
    return out;
}

SchemaCatalog catalog_from_spider_tables(const nlohmann::json& tables_doc) {
    if (!tables_doc.is_array()) {
        throw ParseError("tables file: expected a JSON array of database entries");
    }
    std::vector<SchemaCatalog> singletons;
    for (const auto& entry : tables_doc) {
        const std::string db_id = entry.at("db_id").get<std::string>();
        Database db;
        db.name = db_id;
        for (const auto& t : entry.at("table_names_original")) {
            db.tables.push_back(Table{t.get<std::string>(), {}, {}, {}});
        }
        const auto& columns = entry.at("column_names_original");
        auto table_of_column = [&](std::size_t col_index) -> Table& {
            const int ti = columns.at(col_index).at(0).get<int>();
            if (ti < 0 || static_cast<std::size_t>(ti) >= db.tables.size()) {
                throw ParseError("tables file: column " + std::to_string(col_index) + " of '" +
                                 db_id + "' references table index " + std::to_string(ti));
            }
            return db.tables[static_cast<std::size_t>(ti)];
        };
        auto column_name = [&](std::size_t col_index) {
            return columns.at(col_index).at(1).get<std::string>();
        };
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (columns.at(i).at(0).get<int>() < 0) continue; // the "*" pseudo-column
            table_of_column(i).columns.push_back(Column{column_name(i), ""});
        }
        if (entry.contains("primary_keys")) {
            for (const auto& pk : entry.at("primary_keys")) {
                // entries are column indices, possibly nested for composite keys
                if (pk.is_array()) {
                    for (const auto& part : pk) {
                        const auto idx = part.get<std::size_t>();
                        table_of_column(idx).primary_key.push_back(column_name(idx));
                    }
                } else {
                    const auto idx = pk.get<std::size_t>();
                    table_of_column(idx).primary_key.push_back(column_name(idx));
                }
            }
        }
        if (entry.contains("foreign_keys")) {
            for (const auto& fk : entry.at("foreign_keys")) {
                const auto from = fk.at(0).get<std::size_t>();
                const auto to = fk.at(1).get<std::size_t>();
                const int to_table = columns.at(to).at(0).get<int>();
                table_of_column(from).foreign_keys.push_back(
                    ForeignKey{column_name(from),
                               db.tables.at(static_cast<std::size_t>(to_table)).name,
                               column_name(to)});
            }
        }
        SchemaCatalog single;
        single.databases.push_back(std::move(db));
        singletons.push_back(std::move(single));
    }
    return build_union(singletons);
}

} // namespace slink
