#include "slink/catalog.hpp"

#include "slink/errors.hpp"
#include "slink/util.hpp"

#include <set>
#include <string>

namespace slink {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing key '" + std::string(key) + "' in " + where);
    }
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) {
        throw ParseError("key '" + std::string(key) + "' in " + where + " must be a string");
    }
    return v.get<std::string>();
}

void check_name(const std::string& name, const std::string& what, bool allow_dots) {
    if (name.empty()) {
        throw ValidationError(what + ": name must be non-empty");
    }
    if (!allow_dots && name.find('.') != std::string::npos) {
        throw ValidationError(what + " '" + name +
                              "': '.' is reserved as the qualified-name separator");
    }
}

} // namespace

const Column* Table::find_column(std::string_view column_name) const {
    for (const Column& c : columns) {
        if (c.name == column_name) return &c;
    }
    return nullptr;
}

const Table* Database::find_table(std::string_view table_name) const {
    for (const Table& t : tables) {
        if (t.name == table_name) return &t;
    }
    return nullptr;
}

std::size_t SchemaCatalog::table_count() const {
    std::size_t n = 0;
    for (const Database& db : databases) n += db.tables.size();
    return n;
}

std::size_t SchemaCatalog::column_count() const {
    std::size_t n = 0;
    for (const Database& db : databases) {
        for (const Table& t : db.tables) n += t.columns.size();
    }
    return n;
}

SchemaCatalog catalog_from_json(const json& doc, bool allow_dotted_names) {
    if (!doc.is_object()) {
        throw ParseError("catalog root must be a JSON object");
    }
    const json& dbs = require(doc, "databases", "catalog root");
    if (!dbs.is_array()) {
        throw ParseError("'databases' must be an array");
    }

    SchemaCatalog catalog;
    for (const json& jdb : dbs) {
        Database db;
        db.name = require_string(jdb, "name", "database entry");
        const json& tables = require(jdb, "tables", "database '" + db.name + "'");
        for (const json& jt : tables) {
            Table table;
            table.name = require_string(jt, "name", "table entry in database '" + db.name + "'");
            const std::string where = "table '" + db.name + "." + table.name + "'";
            const json& cols = require(jt, "columns", where);
            for (const json& jc : cols) {
                Column col;
                col.name = require_string(jc, "name", "column entry in " + where);
                if (jc.contains("description")) {
                    col.description = jc.at("description").get<std::string>();
                }
                table.columns.push_back(std::move(col));
            }
            if (jt.contains("primary_key") && !jt.at("primary_key").is_null()) {
                for (const json& pk : jt.at("primary_key")) {
                    table.primary_key.push_back(pk.get<std::string>());
                }
            }
            if (jt.contains("foreign_keys") && !jt.at("foreign_keys").is_null()) {
                for (const json& jfk : jt.at("foreign_keys")) {
                    ForeignKey fk;
                    fk.column = require_string(jfk, "column", "foreign key in " + where);
                    fk.ref_table = require_string(jfk, "ref_table", "foreign key in " + where);
                    fk.ref_column = require_string(jfk, "ref_column", "foreign key in " + where);
                    table.foreign_keys.push_back(std::move(fk));
                }
            }
            db.tables.push_back(std::move(table));
        }
        catalog.databases.push_back(std::move(db));
    }
    validate_catalog(catalog, allow_dotted_names);
    return catalog;
}

SchemaCatalog load_catalog(const std::filesystem::path& path) {
    return catalog_from_json(read_json_file(path));
}

json catalog_to_json(const SchemaCatalog& catalog) {
    json dbs = json::array();
    for (const Database& db : catalog.databases) {
        json tables = json::array();
        for (const Table& t : db.tables) {
            json cols = json::array();
            for (const Column& c : t.columns) {
                json jc = {{"name", c.name}};
                if (!c.description.empty()) jc["description"] = c.description;
                cols.push_back(std::move(jc));
            }
            json jt = {{"name", t.name}, {"columns", std::move(cols)}};
            if (!t.primary_key.empty()) jt["primary_key"] = t.primary_key;
            if (!t.foreign_keys.empty()) {
                json fks = json::array();
                for (const ForeignKey& fk : t.foreign_keys) {
                    fks.push_back({{"column", fk.column},
                                   {"ref_table", fk.ref_table},
                                   {"ref_column", fk.ref_column}});
                }
                jt["foreign_keys"] = std::move(fks);
            }
            tables.push_back(std::move(jt));
        }
        dbs.push_back(json{{"name", db.name}, {"tables", std::move(tables)}});
    }
    return json{{"databases", std::move(dbs)}};
}

void save_catalog(const SchemaCatalog& catalog, const std::filesystem::path& path) {
    write_json_file(path, catalog_to_json(catalog));
}

void validate_catalog(const SchemaCatalog& catalog, bool allow_dotted_names) {
    std::set<std::pair<std::string, std::string>> seen_tables;
    std::set<std::string> seen_dbs;
    for (const Database& db : catalog.databases) {
        if (!db.name.empty()) {
            check_name(db.name, "database", /*allow_dots=*/false);
        }
        if (!seen_dbs.insert(db.name).second) {
            throw ValidationError("duplicate database name '" + db.name + "'");
        }
        for (const Table& table : db.tables) {
            check_name(table.name, "table in database '" + db.name + "'", allow_dotted_names);
            if (!seen_tables.insert({db.name, table.name}).second) {
                throw ValidationError("duplicate table '" + db.name + "." + table.name + "'");
            }
            const std::string where = "table '" + db.name + "." + table.name + "'";
            std::set<std::string> cols;
            for (const Column& c : table.columns) {
                check_name(c.name, "column in " + where, /*allow_dots=*/false);
                if (!cols.insert(c.name).second) {
                    throw ValidationError("duplicate column '" + c.name + "' in " + where);
                }
            }
            for (const std::string& pk : table.primary_key) {
                if (!cols.contains(pk)) {
                    throw ValidationError("primary key column '" + pk + "' not found in " + where);
                }
            }
            for (const ForeignKey& fk : table.foreign_keys) {
                const std::string fk_desc = "foreign key " + db.name + "." + table.name + "." +
                                            fk.column + " -> " + fk.ref_table + "." + fk.ref_column;
                if (!cols.contains(fk.column)) {
                    throw ValidationError(fk_desc + ": local column not found");
                }
                const Table* target = db.find_table(fk.ref_table);
                if (target == nullptr) {
                    throw ValidationError(fk_desc + ": target table not found");
                }
                if (target->find_column(fk.ref_column) == nullptr) {
                    throw ValidationError(fk_desc + ": target column not found");
                }
            }
        }
    }
}

} // namespace slink
