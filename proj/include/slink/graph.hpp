#pragma once

#include "slink/catalog.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace slink {

/// Sparse symmetric connectivity over documents. Weights are >= 0; zero
/// weights and self-edges are never stored.
class SchemaGraph {
public:
    SchemaGraph() = default;

    double weight(int a, int b) const;
    std::span<const std::pair<int, double>> neighbors(int doc_id) const;
    std::size_t edge_count() const { return edge_count_; }

    double default_same_table_weight() const { return same_table_weight_; }
    double default_fk_weight() const { return fk_weight_; }

    /// Undirected edge; keeps the max weight on duplicates; ignores w == 0
    /// and self-pairs.
    void add_edge(int a, int b, double w);

    void set_defaults(double same_table_weight, double fk_weight) {
        same_table_weight_ = same_table_weight;
        fk_weight_ = fk_weight;
    }

private:
    // adjacency[doc_id] -> (neighbor, weight), sorted by neighbor id
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::size_t edge_count_ = 0;
    double same_table_weight_ = 0.0;
    double fk_weight_ = 0.0;
};

/// Connects all column pairs within a table with `same_table_weight` and each
/// FK column to its referenced column with `fk_weight`. Doc ids follow the
/// same (db, table, column) iteration order as explode(). Negative weights
/// raise ArgumentError.
SchemaGraph build_graph(const SchemaCatalog& catalog, double same_table_weight, double fk_weight);

} // namespace slink
