#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cayspec/cayley.hpp"
#include "cayspec/generic_graph.hpp"
#include "cayspec/rational.hpp"
#include "cayspec/rng.hpp"

namespace cayspec {

// Random cyclic Cayley graph on Z/nZ: every nonzero a gets an independent
// Bernoulli(p/2) trial, drawn in ascending order of a; the pair {a, -a}
// joins the connection set iff the trial for a or for -a succeeds.  Each
// pair is therefore present with probability 1 - (1 - p/2)^2 ~ p, matching
// an average degree of about p(n-1).
inline CayleyGraph random_cyclic_cayley(u64 n, const Rational& p, u64 seed) {
    if (n < 3) throw std::invalid_argument("random_cyclic_cayley: n must be >= 3");
    if (p <= Rational(0) || p >= Rational(1))
        throw std::invalid_argument("random_cyclic_cayley: p must lie in (0, 1)");
    Group g({std::uint32_t(n)});
    SplitMix64 rng(seed);
    Rational p_half = p / Rational(2);
    std::vector<bool> hit(n, false);
    for (u64 a = 1; a < n; ++a) hit[a] = rng.bernoulli(p_half);
    std::vector<Element> elems;
    for (u64 a = 1; a < n; ++a)
        if (hit[a] || hit[n - a]) elems.push_back(g.element({i64(a)}));
    return CayleyGraph(g, make_connection_set(g, std::move(elems)));
}

// Blowup by k: each vertex becomes k clones, realized as the Cayley graph
// on Gamma x Z/kZ with connection set A x Z/kZ.  Every eigenvalue scales
// by k and n(k-1) zeros join the spectrum.
inline CayleyGraph blowup(const CayleyGraph& G, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("blowup: k must be >= 1");
    std::vector<std::uint32_t> moduli = G.group().moduli();
    moduli.push_back(k);
    Group g2(moduli);
    std::vector<Element> elems;
    elems.reserve(G.degree() * k);
    for (const Element& a : G.connection_set().elements) {
        for (std::uint32_t j = 0; j < k; ++j) {
            Element e = a;
            e.residues.push_back(j);
            elems.push_back(std::move(e));
        }
    }
    return CayleyGraph(g2, make_connection_set(g2, std::move(elems)));
}

// Z/n with A = +-{1..k}; the canonical family with a large nontrivial
// eigenvalue (mass concentrated on short arcs).
inline CayleyGraph interval_cayley(u64 n, u64 k) {
    if (k < 1 || 2 * k >= n)
        throw std::invalid_argument("interval_cayley: need 1 <= k < n/2");
    Group g({std::uint32_t(n)});
    std::vector<Element> elems;
    for (u64 a = 1; a <= k; ++a) {
        elems.push_back(g.element({i64(a)}));
        elems.push_back(g.element({i64(n - a)}));
    }
    return CayleyGraph(g, make_connection_set(g, std::move(elems)));
}

// Union of G(n, p) and a disjoint clique on floor(alpha p n) fresh
// vertices, no cross edges.  Pairs are drawn in lexicographic order.
inline GenericGraph gnp_plus_clique(u64 n, const Rational& p, const Rational& alpha, u64 seed) {
    if (p <= Rational(0) || p >= Rational(1))
        throw std::invalid_argument("gnp_plus_clique: p must lie in (0, 1)");
    if (alpha < Rational(0)) throw std::invalid_argument("gnp_plus_clique: alpha must be >= 0");
    Rational size = alpha * p * Rational(i64(n));
    u64 clique = u64(size.num() / size.den());
    if (n + clique > 4096) throw std::invalid_argument("gnp_plus_clique: total order above 4096");
    GenericGraph G(n + clique);
    SplitMix64 rng(seed);
    for (u64 u = 0; u < n; ++u)
        for (u64 v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) G.add_edge(u, v);
    for (u64 u = n; u < n + clique; ++u)
        for (u64 v = u + 1; v < n + clique; ++v) G.add_edge(u, v);
    return G;
}

// Complete Cayley graph on Z/n (A = everything nonzero).
inline CayleyGraph complete_cayley(u64 n) {
    if (n < 2) throw std::invalid_argument("complete_cayley: n must be >= 2");
    Group g({std::uint32_t(n)});
    std::vector<Element> elems;
    for (u64 a = 1; a < n; ++a) elems.push_back(g.element({i64(a)}));
    return CayleyGraph(g, make_connection_set(g, std::move(elems)));
}

}  // namespace cayspec
