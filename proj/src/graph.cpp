#include "slink/graph.hpp"

#include "slink/errors.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace slink {

double SchemaGraph::weight(int a, int b) const {
    if (a < 0 || static_cast<std::size_t>(a) >= adjacency_.size()) return 0.0;
    const auto& nbrs = adjacency_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b,
                               [](const std::pair<int, double>& e, int id) { return e.first < id; });
    if (it != nbrs.end() && it->first == b) return it->second;
    return 0.0;
}

std::span<const std::pair<int, double>> SchemaGraph::neighbors(int doc_id) const {
    if (doc_id < 0 || static_cast<std::size_t>(doc_id) >= adjacency_.size()) return {};
    return adjacency_[static_cast<std::size_t>(doc_id)];
}

void SchemaGraph::add_edge(int a, int b, double w) {
    if (w < 0.0) throw ArgumentError("edge weight must be >= 0, got " + std::to_string(w));
    if (w == 0.0 || a == b) return;
    const std::size_t need = static_cast<std::size_t>(std::max(a, b)) + 1;
    if (adjacency_.size() < need) adjacency_.resize(need);
    auto insert_half = [&](int from, int to) -> bool {
        auto& nbrs = adjacency_[static_cast<std::size_t>(from)];
        auto it = std::lower_bound(
            nbrs.begin(), nbrs.end(), to,
            [](const std::pair<int, double>& e, int id) { return e.first < id; });
        if (it != nbrs.end() && it->first == to) {
            it->second = std::max(it->second, w);
            return false;
        }
        nbrs.insert(it, {to, w});
        return true;
    };
    const bool fresh = insert_half(a, b);
    insert_half(b, a);
    if (fresh) ++edge_count_;
}

SchemaGraph build_graph(const SchemaCatalog& catalog, double same_table_weight, double fk_weight) {
    if (same_table_weight < 0.0 || fk_weight < 0.0) {
        throw ArgumentError("graph weights must be >= 0");
    }
    SchemaGraph graph;
    graph.set_defaults(same_table_weight, fk_weight);

    // Column doc ids in catalog iteration order, same arithmetic as explode().
    // Keyed as (db index, table name, column name) for FK resolution.
    std::map<std::pair<std::size_t, std::string>, std::map<std::string, int, std::less<>>> ids;
    int next_id = 0;
    for (std::size_t di = 0; di < catalog.databases.size(); ++di) {
        const Database& db = catalog.databases[di];
        for (const Table& table : db.tables) {
            auto& table_ids = ids[{di, table.name}];
            for (const Column& col : table.columns) {
                table_ids[col.name] = next_id++;
            }
        }
    }

    for (std::size_t di = 0; di < catalog.databases.size(); ++di) {
        const Database& db = catalog.databases[di];
        for (const Table& table : db.tables) {
            const auto& table_ids = ids[{di, table.name}];
            // same-table clique
            if (same_table_weight > 0.0) {
                std::vector<int> members;
                members.reserve(table.columns.size());
                for (const Column& col : table.columns) members.push_back(table_ids.at(col.name));
                for (std::size_t i = 0; i < members.size(); ++i) {
                    for (std::size_t j = i + 1; j < members.size(); ++j) {
                        graph.add_edge(members[i], members[j], same_table_weight);
                    }
                }
            }
            // FK column <-> referenced column, only the linked pair
            if (fk_weight > 0.0) {
                for (const ForeignKey& fk : table.foreign_keys) {
                    const int local = table_ids.at(fk.column);
                    const int remote = ids.at({di, fk.ref_table}).at(fk.ref_column);
                    graph.add_edge(local, remote, fk_weight);
                }
            }
        }
    }
    return graph;
}

} // namespace slink
