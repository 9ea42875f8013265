#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayspec/errors.hpp"
#include "cayspec/group.hpp"
#include "cayspec/vertex_set.hpp"

namespace cayspec {

// Symmetric, zero-free subset of a group, canonically sorted in
// enumeration order and deduplicated.
struct ConnectionSet {
    std::vector<Element> elements;

    std::size_t size() const { return elements.size(); }
};

inline std::string describe(const Element& e) {
    std::string s = "(";
    for (std::size_t j = 0; j < e.residues.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(e.residues[j]);
    }
    return s + ")";
}

inline ConnectionSet make_connection_set(const Group& g, std::vector<Element> elems) {
    for (const Element& e : elems) {
        g.require_member(e);
        if (e == g.zero())
            throw InvalidConnectionSetError("connection set contains the zero element");
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (const Element& e : elems) {
        Element neg = g.negate(e);
        if (!std::binary_search(elems.begin(), elems.end(), neg))
            throw InvalidConnectionSetError("connection set is not symmetric: missing -" +
                                            describe(e) + " = " + describe(neg));
    }
    return ConnectionSet{std::move(elems)};
}

// Cayley graph G(Gamma, A): vertices are the group elements (in
// enumeration order), u ~ v iff v - u lies in the connection set.  The
// graph is |A|-regular with e(G) = n|A|/2.
class CayleyGraph {
public:
    CayleyGraph(Group group, ConnectionSet conn)
        : group_(std::move(group)), conn_(std::move(conn)), membership_(group_.order()) {
        conn_indices_.reserve(conn_.size());
        for (const Element& e : conn_.elements) {
            u64 idx = group_.index_of(e);
            conn_indices_.push_back(idx);
            membership_.insert(idx);
        }
    }

    const Group& group() const { return group_; }
    const ConnectionSet& connection_set() const { return conn_; }
    const std::vector<u64>& connection_indices() const { return conn_indices_; }

    u64 order() const { return group_.order(); }
    u64 degree() const { return conn_.size(); }
    u64 edge_count() const { return order() * degree() / 2; }
    double average_degree() const { return double(degree()); }

    bool in_connection_set(u64 index) const { return membership_.contains(index); }

    bool adjacent(const Element& u, const Element& v) const {
        return in_connection_set(group_.index_of(group_.sub(v, u)));
    }

    bool adjacent(u64 u, u64 v) const {
        return adjacent(group_.element_at(u), group_.element_at(v));
    }

    // Calls f(v) for every neighbor v = u + a, a in A.
    template <class F>
    void for_each_neighbor(u64 u, F&& f) const {
        Element base = group_.element_at(u);
        const auto& moduli = group_.moduli();
        for (const Element& a : conn_.elements) {
            u64 idx = 0;
            u64 stride = 1;
            for (std::size_t j = moduli.size(); j-- > 0;) {
                std::uint32_t s = base.residues[j] + a.residues[j];
                if (s >= moduli[j]) s -= moduli[j];
                idx += stride * s;
                stride *= moduli[j];
            }
            f(idx);
        }
    }

    // e_G(U): unordered adjacent pairs inside U.  O(|U| |A|).
    u64 edge_count_within(const VertexSet& U) const {
        require_vertex_set(U);
        u64 ordered = 0;
        U.for_each([&](u64 u) {
            for_each_neighbor(u, [&](u64 v) { ordered += U.contains(v); });
        });
        return ordered / 2;
    }

    // e_G(U, W) for disjoint U and W: each cross edge counted once.
    u64 edge_count_between(const VertexSet& U, const VertexSet& W) const {
        require_vertex_set(U);
        require_vertex_set(W);
        if (!U.disjoint_with(W))
            throw std::invalid_argument("edge_count_between: sets overlap");
        u64 cnt = 0;
        U.for_each([&](u64 u) {
            for_each_neighbor(u, [&](u64 v) { cnt += W.contains(v); });
        });
        return cnt;
    }

    // |{(x, y) in X x Y : y - x in A}|.  X and Y may overlap; edges inside
    // X cap Y contribute twice.  Equals
    // e(XuY) + e(XnY) - e(X\Y) - e(Y\X).
    u64 pair_edge_count(const VertexSet& X, const VertexSet& Y) const {
        require_vertex_set(X);
        require_vertex_set(Y);
        u64 cnt = 0;
        X.for_each([&](u64 x) {
            for_each_neighbor(x, [&](u64 y) { cnt += Y.contains(y); });
        });
        return cnt;
    }

private:
    void require_vertex_set(const VertexSet& S) const {
        if (S.universe() != order())
            throw std::invalid_argument("CayleyGraph: vertex set universe mismatch");
    }

    Group group_;
    ConnectionSet conn_;
    std::vector<u64> conn_indices_;
    VertexSet membership_;
};

}  // namespace cayspec
