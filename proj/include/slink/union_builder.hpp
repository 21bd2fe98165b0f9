#pragma once

#include "slink/catalog.hpp"

#include <vector>

#include <json.hpp>

namespace slink {

/// Merges per-database catalogs into one. Database names must be unique
/// across inputs; table names are left untouched (union-style "db.table"
/// prefixing happens at explode time via prefix_db).
SchemaCatalog build_union(const std::vector<SchemaCatalog>& inputs);

/// Converts a SPIDER/BIRD `tables.json` array (entries with db_id,
/// table_names_original, column_names_original, primary_keys, foreign_keys)
/// into a multi-database catalog. The "*" pseudo-column is dropped.
SchemaCatalog catalog_from_spider_tables(const nlohmann::json& tables_doc);

} // namespace slink
