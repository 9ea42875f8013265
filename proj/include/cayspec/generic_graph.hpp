#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cayspec/vertex_set.hpp"

namespace cayspec {

// Plain undirected graph on [0, n), kept as adjacency bit rows.  Used for
// the non-Cayley constructions; the discrepancy checkers accept it through
// the same edge-counting interface the Cayley graph provides.
class GenericGraph {
public:
    explicit GenericGraph(u64 n) : n_(n), edges_(0), rows_(n, VertexSet(n)) {}

    u64 order() const { return n_; }
    u64 edge_count() const { return edges_; }
    double average_degree() const { return n_ == 0 ? 0.0 : 2.0 * double(edges_) / double(n_); }

    bool adjacent(u64 u, u64 v) const { return rows_[u].contains(v); }
    const VertexSet& neighbors(u64 u) const { return rows_[u]; }

    void add_edge(u64 u, u64 v) {
        if (u >= n_ || v >= n_) throw std::invalid_argument("GenericGraph: vertex out of range");
        if (u == v) throw std::invalid_argument("GenericGraph: loops are not allowed");
        if (rows_[u].contains(v)) return;
        rows_[u].insert(v);
        rows_[v].insert(u);
        ++edges_;
    }

    u64 degree(u64 u) const { return rows_[u].count(); }

    u64 edge_count_within(const VertexSet& U) const {
        require_vertex_set(U);
        u64 ordered = 0;
        U.for_each([&](u64 u) { ordered += rows_[u].intersection_count(U); });
        return ordered / 2;
    }

    u64 edge_count_between(const VertexSet& U, const VertexSet& W) const {
        require_vertex_set(U);
        require_vertex_set(W);
        if (!U.disjoint_with(W))
            throw std::invalid_argument("edge_count_between: sets overlap");
        u64 cnt = 0;
        U.for_each([&](u64 u) { cnt += rows_[u].intersection_count(W); });
        return cnt;
    }

    std::vector<std::pair<u64, u64>> edges() const {
        std::vector<std::pair<u64, u64>> out;
        out.reserve(edges_);
        for (u64 u = 0; u < n_; ++u)
            rows_[u].for_each([&](u64 v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

private:
    void require_vertex_set(const VertexSet& S) const {
        if (S.universe() != n_)
            throw std::invalid_argument("GenericGraph: vertex set universe mismatch");
    }

    u64 n_;
    u64 edges_;
    std::vector<VertexSet> rows_;
};

}  // namespace cayspec
