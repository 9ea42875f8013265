#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cayspec/errors.hpp"
#include "cayspec/int128.hpp"
#include "cayspec/rational.hpp"
#include "cayspec/rng.hpp"
#include "cayspec/vertex_set.hpp"

namespace cayspec {

// Verdict of a discrepancy check.  "NoViolationFound" is a sampling
// statement, not a verification; only exhaustive mode can verify.
struct DiscReport {
    enum class Verdict { VerifiedExhaustive, NoViolationFound, Violated };

    Rational delta;
    Verdict verdict = Verdict::NoViolationFound;
    u64 samples = 0;
    u64 seed = 0;
    std::vector<VertexSet> sets;  // one set (uniform case) or a pair (bipartite case)
    Rational deviation;           // |e - E| / E, exact

    bool violated() const { return verdict == Verdict::Violated; }
};

struct ExhaustiveStrategy {};
struct SampledStrategy {
    u64 count = 0;
    u64 seed = 0;
};
struct GuidedSets {
    std::vector<VertexSet> sets;
};
struct GuidedPairs {
    std::vector<std::pair<VertexSet, VertexSet>> pairs;
};

namespace detail {

// value ~_delta (num / den), all inputs exact nonnegative integers.
inline bool sim_holds(u64 value, i128 num, i128 den, const Rational& delta) {
    i128 mid = i128(value) * den * delta.den();
    i128 lo = num * (i128(delta.den()) - delta.num());
    i128 hi = num * (i128(delta.den()) + delta.num());
    return lo <= mid && mid <= hi;
}

// |value - num/den| / (num/den) as an exact rational; num > 0 expected.
inline Rational sim_deviation(u64 value, i128 num, i128 den) {
    i128 diff = i128(value) * den - num;
    if (diff < 0) diff = -diff;
    u128 g = gcd128(u128(diff), u128(num));
    if (g > 1) {
        diff /= i128(g);
        num /= i128(g);
    }
    if (diff > INT64_MAX || num > INT64_MAX)
        throw std::overflow_error("sim_deviation: out of range");
    return Rational(i64(diff), i64(num));
}

// ceil(delta * n) as the minimum admissible set size.
inline u64 size_threshold(const Rational& delta, u64 n) {
    i128 p = i128(delta.num()) * n;
    return u64((p + delta.den() - 1) / delta.den());
}

template <class G>
void require_checkable(const G& graph, const Rational& delta) {
    if (delta <= Rational(0) || delta > Rational(1))
        throw std::invalid_argument("discrepancy: delta must lie in (0, 1]");
    if (graph.order() < 2) throw std::invalid_argument("discrepancy: graph needs >= 2 vertices");
    if (graph.edge_count() == 0)
        throw std::invalid_argument("discrepancy: graph has no edges, expectation undefined");
}

// Neighbor bitmasks for the word-sized exhaustive paths (n <= 22 or 14).
template <class G>
std::vector<u64> adjacency_masks(const G& graph) {
    std::vector<u64> masks(graph.order(), 0);
    for (u64 u = 0; u < graph.order(); ++u)
        for (u64 v = 0; v < graph.order(); ++v)
            if (u != v && graph.adjacent(u, v)) masks[u] |= u64(1) << v;
    return masks;
}

inline u64 mask_edge_count(const std::vector<u64>& adj, u64 mask) {
    u64 ordered = 0;
    u64 rest = mask;
    while (rest) {
        u64 u = u64(std::countr_zero(rest));
        rest &= rest - 1;
        ordered += u64(std::popcount(adj[u] & mask));
    }
    return ordered / 2;
}

inline u64 mask_edge_count_between(const std::vector<u64>& adj, u64 a, u64 b) {
    u64 cnt = 0;
    u64 rest = a;
    while (rest) {
        u64 u = u64(std::countr_zero(rest));
        rest &= rest - 1;
        cnt += u64(std::popcount(adj[u] & b));
    }
    return cnt;
}

inline VertexSet mask_to_set(u64 n, u64 mask) {
    VertexSet s(n);
    while (mask) {
        s.insert(u64(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return s;
}

// Uniform random subset of the given size, one derived RNG per sample.
inline VertexSet random_subset(u64 n, u64 size, SplitMix64& rng) {
    std::vector<u64> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (u64 i = 0; i < size; ++i) {
        u64 j = i + rng.below(n - i);
        std::swap(perm[i], perm[j]);
    }
    VertexSet s(n);
    for (u64 i = 0; i < size; ++i) s.insert(perm[i]);
    return s;
}

}  // namespace detail

// Single-instance test of the uniform discrepancy relation
//   e(U) ~_delta e(G) C(|U|,2) / C(n,2)
// for one concrete U (no size threshold applied).
template <class G>
bool disc_instance_holds(const G& graph, const VertexSet& U, const Rational& delta) {
    u64 n = graph.order();
    u64 u = U.count();
    i128 num = u < 2 ? 0 : i128(graph.edge_count()) * u * (u - 1);
    i128 den = i128(n) * (n - 1);
    return detail::sim_holds(graph.edge_count_within(U), num, den, delta);
}

template <class G>
Rational disc_instance_deviation(const G& graph, const VertexSet& U) {
    u64 n = graph.order();
    u64 u = U.count();
    i128 num = i128(graph.edge_count()) * u * (u - 1);
    i128 den = i128(n) * (n - 1);
    return detail::sim_deviation(graph.edge_count_within(U), num, den);
}

// Bipartite analogue for one disjoint pair:
//   e(U, W) ~_delta e(G) |U||W| / C(n,2).
template <class G>
bool disc2_instance_holds(const G& graph, const VertexSet& U, const VertexSet& W,
                          const Rational& delta) {
    u64 n = graph.order();
    i128 num = i128(2) * graph.edge_count() * U.count() * W.count();
    i128 den = i128(n) * (n - 1);
    return detail::sim_holds(graph.edge_count_between(U, W), num, den, delta);
}

template <class G>
Rational disc2_instance_deviation(const G& graph, const VertexSet& U, const VertexSet& W) {
    u64 n = graph.order();
    i128 num = i128(2) * graph.edge_count() * U.count() * W.count();
    i128 den = i128(n) * (n - 1);
    return detail::sim_deviation(graph.edge_count_between(U, W), num, den);
}

// Exhaustive DISC(delta): every U with |U| >= delta n, in increasing
// bitmask order (bit i = vertex i); the first violation is reported.
template <class G>
DiscReport check_disc(const G& graph, const Rational& delta, ExhaustiveStrategy) {
    detail::require_checkable(graph, delta);
    const u64 n = graph.order();
    if (n > 22) throw SizeLimitError("check_disc: exhaustive mode requires n <= 22");
    DiscReport rep;
    rep.delta = delta;
    const u64 kmin = detail::size_threshold(delta, n);
    const std::vector<u64> adj = detail::adjacency_masks(graph);
    const i128 den = i128(n) * (n - 1);
    const u64 eg = graph.edge_count();
    for (u64 mask = 0; mask < (u64(1) << n); ++mask) {
        u64 u = u64(std::popcount(mask));
        if (u < kmin || u < 2) continue;
        u64 e = detail::mask_edge_count(adj, mask);
        i128 num = i128(eg) * u * (u - 1);
        if (!detail::sim_holds(e, num, den, delta)) {
            rep.verdict = DiscReport::Verdict::Violated;
            rep.sets = {detail::mask_to_set(n, mask)};
            rep.deviation = detail::sim_deviation(e, num, den);
            return rep;
        }
        ++rep.samples;
    }
    rep.verdict = DiscReport::Verdict::VerifiedExhaustive;
    return rep;
}

template <class G>
DiscReport check_disc(const G& graph, const Rational& delta, const SampledStrategy& strat) {
    detail::require_checkable(graph, delta);
    const u64 n = graph.order();
    DiscReport rep;
    rep.delta = delta;
    rep.seed = strat.seed;
    const u64 kmin = std::max<u64>(2, detail::size_threshold(delta, n));
    if (kmin > n) {
        rep.verdict = DiscReport::Verdict::NoViolationFound;
        return rep;
    }
    for (u64 i = 0; i < strat.count; ++i) {
        SplitMix64 rng(derive_seed(strat.seed, i));
        u64 size = kmin + rng.below(n - kmin + 1);
        VertexSet U = detail::random_subset(n, size, rng);
        ++rep.samples;
        if (!disc_instance_holds(graph, U, delta)) {
            rep.verdict = DiscReport::Verdict::Violated;
            rep.sets = {U};
            rep.deviation = disc_instance_deviation(graph, U);
            return rep;
        }
    }
    rep.verdict = DiscReport::Verdict::NoViolationFound;
    return rep;
}

template <class G>
DiscReport check_disc(const G& graph, const Rational& delta, const GuidedSets& strat) {
    detail::require_checkable(graph, delta);
    DiscReport rep;
    rep.delta = delta;
    const u64 kmin = detail::size_threshold(delta, graph.order());
    for (const VertexSet& U : strat.sets) {
        if (U.count() < kmin) continue;  // below threshold: skipped, never reported
        ++rep.samples;
        if (!disc_instance_holds(graph, U, delta)) {
            rep.verdict = DiscReport::Verdict::Violated;
            rep.sets = {U};
            rep.deviation = disc_instance_deviation(graph, U);
            return rep;
        }
    }
    rep.verdict = DiscReport::Verdict::NoViolationFound;
    return rep;
}

// Exhaustive DISC_2(delta'): ordered disjoint pairs (U, W), U in increasing
// bitmask order, W running over submasks of the complement.
template <class G>
DiscReport check_disc2(const G& graph, const Rational& delta, ExhaustiveStrategy) {
    detail::require_checkable(graph, delta);
    const u64 n = graph.order();
    if (n > 14) throw SizeLimitError("check_disc2: exhaustive mode requires n <= 14");
    DiscReport rep;
    rep.delta = delta;
    const u64 kmin = std::max<u64>(1, detail::size_threshold(delta, n));
    const std::vector<u64> adj = detail::adjacency_masks(graph);
    const i128 den = i128(n) * (n - 1);
    const u64 eg = graph.edge_count();
    const u64 all = (u64(1) << n) - 1;
    for (u64 umask = 0; umask <= all; ++umask) {
        u64 usz = u64(std::popcount(umask));
        if (usz < kmin) continue;
        u64 comp = all & ~umask;
        // enumerate submasks of comp in increasing order
        std::vector<u64> subs;
        for (u64 w = comp;; w = (w - 1) & comp) {
            subs.push_back(w);
            if (w == 0) break;
        }
        std::sort(subs.begin(), subs.end());
        for (u64 wmask : subs) {
            u64 wsz = u64(std::popcount(wmask));
            if (wsz < kmin) continue;
            u64 e = detail::mask_edge_count_between(adj, umask, wmask);
            i128 num = i128(2) * eg * usz * wsz;
            if (!detail::sim_holds(e, num, den, delta)) {
                rep.verdict = DiscReport::Verdict::Violated;
                rep.sets = {detail::mask_to_set(n, umask), detail::mask_to_set(n, wmask)};
                rep.deviation = detail::sim_deviation(e, num, den);
                return rep;
            }
            ++rep.samples;
        }
    }
    rep.verdict = DiscReport::Verdict::VerifiedExhaustive;
    return rep;
}

template <class G>
DiscReport check_disc2(const G& graph, const Rational& delta, const SampledStrategy& strat) {
    detail::require_checkable(graph, delta);
    const u64 n = graph.order();
    DiscReport rep;
    rep.delta = delta;
    rep.seed = strat.seed;
    const u64 kmin = std::max<u64>(1, detail::size_threshold(delta, n));
    if (2 * kmin > n) {
        rep.verdict = DiscReport::Verdict::NoViolationFound;
        return rep;
    }
    for (u64 i = 0; i < strat.count; ++i) {
        SplitMix64 rng(derive_seed(strat.seed, i));
        u64 usz = kmin + rng.below(n - 2 * kmin + 1);
        u64 wsz = kmin + rng.below(n - usz - kmin + 1);
        std::vector<u64> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (u64 k = 0; k < usz + wsz; ++k) {
            u64 j = k + rng.below(n - k);
            std::swap(perm[k], perm[j]);
        }
        VertexSet U(n), W(n);
        for (u64 k = 0; k < usz; ++k) U.insert(perm[k]);
        for (u64 k = usz; k < usz + wsz; ++k) W.insert(perm[k]);
        ++rep.samples;
        if (!disc2_instance_holds(graph, U, W, delta)) {
            rep.verdict = DiscReport::Verdict::Violated;
            rep.sets = {U, W};
            rep.deviation = disc2_instance_deviation(graph, U, W);
            return rep;
        }
    }
    rep.verdict = DiscReport::Verdict::NoViolationFound;
    return rep;
}

template <class G>
DiscReport check_disc2(const G& graph, const Rational& delta, const GuidedPairs& strat) {
    detail::require_checkable(graph, delta);
    DiscReport rep;
    rep.delta = delta;
    const u64 kmin = std::max<u64>(1, detail::size_threshold(delta, graph.order()));
    for (const auto& [U, W] : strat.pairs) {
        if (U.count() < kmin || W.count() < kmin) continue;
        ++rep.samples;
        if (!disc2_instance_holds(graph, U, W, delta)) {
            rep.verdict = DiscReport::Verdict::Violated;
            rep.sets = {U, W};
            rep.deviation = disc2_instance_deviation(graph, U, W);
            return rep;
        }
    }
    rep.verdict = DiscReport::Verdict::NoViolationFound;
    return rep;
}

}  // namespace cayspec
