#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayspec/cayley.hpp"
#include "cayspec/discrepancy.hpp"
#include "cayspec/rational.hpp"
#include "cayspec/rng.hpp"
#include "cayspec/spectrum.hpp"

namespace cayspec {

// Real- or complex-component function on the group, indexed by the
// enumeration order.
struct GroupFunction {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

// c = Re chi_t and s = Im chi_t as dense arrays; both sum to zero for
// nontrivial t.
inline std::pair<GroupFunction, GroupFunction> components(const CayleyGraph& G,
                                                          const CharacterIndex& t) {
    const Group& g = G.group();
    const u64 n = g.order();
    GroupFunction c, s;
    c.values.resize(n);
    s.values.resize(n);
    if (g.is_trivial(t)) {
        for (u64 v = 0; v < n; ++v) {
            c.values[v] = 1.0;
            s.values[v] = 0.0;
        }
        return {std::move(c), std::move(s)};
    }
    Group::RhoMap rho = g.rho_map(t);
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<double> cos_m(rho.m), sin_m(rho.m);
    for (u64 f = 0; f < rho.m; ++f) {
        cos_m[f] = std::cos(two_pi * double(f) / double(rho.m));
        sin_m[f] = std::sin(two_pi * double(f) / double(rho.m));
    }
    for (u64 v = 0; v < n; ++v) {
        u64 f = rho(g.element_at(v));
        c.values[v] = cos_m[f];
        s.values[v] = sin_m[f];
    }
    return {std::move(c), std::move(s)};
}

// (f * h)(a) = sum_g f(a - g) h(g), direct O(n^2) on decoded residues.
inline GroupFunction convolve(const Group& g, const GroupFunction& f, const GroupFunction& h) {
    const u64 n = g.order();
    if (f.size() != n || h.size() != n)
        throw std::invalid_argument("convolve: function length does not match group order");
    const auto& moduli = g.moduli();
    const std::size_t k = moduli.size();
    std::vector<std::uint32_t> residues(n * k);
    for (u64 v = 0; v < n; ++v) {
        Element e = g.element_at(v);
        for (std::size_t j = 0; j < k; ++j) residues[v * k + j] = e.residues[j];
    }
    std::vector<u64> strides(k, 1);
    for (std::size_t j = k; j-- > 1;) strides[j - 1] = strides[j] * moduli[j];
    GroupFunction out;
    out.values.assign(n, 0.0);
    for (u64 a = 0; a < n; ++a) {
        double acc = 0.0;
        for (u64 v = 0; v < n; ++v) {
            u64 diff = 0;
            for (std::size_t j = 0; j < k; ++j) {
                std::uint32_t r = residues[a * k + j] + moduli[j] - residues[v * k + j];
                if (r >= moduli[j]) r -= moduli[j];
                diff += strides[j] * r;
            }
            acc += f.values[diff] * h.values[v];
        }
        out.values[a] = acc;
    }
    return out;
}

// <A, f> = sum_{a in A} f(a).
inline double inner_with_connection_set(const CayleyGraph& G, const GroupFunction& f) {
    double acc = 0.0;
    for (u64 a : G.connection_indices()) acc += f.values[a];
    return acc;
}

// Numerical audit of the component identities for one nontrivial
// character; residuals are normalized as stated per field.
struct IdentityReport {
    u64 m = 0;
    double sum_c2 = 0.0;         // n (m = 2) or n/2 (m > 2)
    double resid_sum_c2 = 0.0;   // relative to n
    double resid_sum_sc = 0.0;   // |sum s c| / n
    double resid_conv = 0.0;     // max_a |(c*c)(a) - kappa c(a)| / n
    double inner_lhs = 0.0;      // <A, (1+c)/2 * (1+c)/2>
    double inner_rhs = 0.0;      // n|A|/4 + kappa' <A, c>
    double resid_inner = 0.0;    // relative to n |A|
    bool pass = false;
};

inline IdentityReport verify_ident(const CayleyGraph& G, const CharacterIndex& t) {
    const Group& g = G.group();
    if (g.is_trivial(t)) throw std::invalid_argument("verify_ident: character must be nontrivial");
    const u64 n = g.order();
    const double dn = double(n);
    IdentityReport rep;
    rep.m = g.character_image_order(t);

    auto [c, s] = components(G, t);
    double sum_c2 = 0.0, sum_sc = 0.0;
    for (u64 v = 0; v < n; ++v) {
        sum_c2 += c.values[v] * c.values[v];
        sum_sc += s.values[v] * c.values[v];
    }
    rep.sum_c2 = sum_c2;
    rep.resid_sum_c2 = std::abs(sum_c2 - (rep.m == 2 ? dn : dn / 2)) / dn;
    rep.resid_sum_sc = std::abs(sum_sc) / dn;

    GroupFunction cc = convolve(g, c, c);
    double kappa = rep.m == 2 ? dn : dn / 2;
    for (u64 v = 0; v < n; ++v)
        rep.resid_conv = std::max(rep.resid_conv, std::abs(cc.values[v] - kappa * c.values[v]) / dn);

    GroupFunction q;
    q.values.resize(n);
    for (u64 v = 0; v < n; ++v) q.values[v] = 0.5 * (1.0 + c.values[v]);
    GroupFunction qq = convolve(g, q, q);
    rep.inner_lhs = inner_with_connection_set(G, qq);
    double inner_c = inner_with_connection_set(G, c);
    double kappa2 = rep.m == 2 ? dn / 4 : dn / 8;
    rep.inner_rhs = 0.25 * dn * double(G.degree()) + kappa2 * inner_c;
    double scale = std::max(1.0, dn * double(G.degree()));
    rep.resid_inner = std::abs(rep.inner_lhs - rep.inner_rhs) / scale;

    rep.pass = rep.resid_sum_c2 <= 1e-7 && rep.resid_sum_sc <= 1e-7 && rep.resid_conv <= 1e-7 &&
               rep.resid_inner <= 1e-7;
    return rep;
}

// Draws the witness pair: S with P(v in S) = p(v) = (1 + c(v))/2, one
// 53-bit draw per element in enumeration order, then X = -S; then Y with
// the next n draws of the same stream.
inline std::pair<VertexSet, VertexSet> sample_witness_sets(const CayleyGraph& G,
                                                           const CharacterIndex& t, u64 seed) {
    const Group& g = G.group();
    if (g.is_trivial(t))
        throw std::invalid_argument("sample_witness_sets: character must be nontrivial");
    const u64 n = g.order();
    auto [c, s_unused] = components(G, t);
    (void)s_unused;
    SplitMix64 rng(seed);
    VertexSet S(n), Y(n);
    for (u64 v = 0; v < n; ++v)
        if (rng.bernoulli(0.5 * (1.0 + c.values[v]))) S.insert(v);
    for (u64 v = 0; v < n; ++v)
        if (rng.bernoulli(0.5 * (1.0 + c.values[v]))) Y.insert(v);
    VertexSet X(n);
    S.for_each([&](u64 v) { X.insert(g.index_of(g.negate(g.element_at(v)))); });
    return {std::move(X), std::move(Y)};
}

// eta(X, Y) = |{(x, y) in X x Y : y - x in A}| - n |A| / 4, exact.
inline Rational eta_statistic(const CayleyGraph& G, const VertexSet& X, const VertexSet& Y) {
    i64 pairs = i64(G.pair_edge_count(X, Y));
    return Rational(pairs) - Rational(i64(G.order() * G.degree()), 4);
}

enum class ViolatorKind { XminusY, YminusX, XcapY, XcupY };

inline const char* violator_name(ViolatorKind k) {
    switch (k) {
        case ViolatorKind::XminusY: return "X\\Y";
        case ViolatorKind::YminusX: return "Y\\X";
        case ViolatorKind::XcapY: return "X&Y";
        case ViolatorKind::XcupY: return "X|Y";
    }
    return "?";
}

struct WitnessOutcome {
    u64 character = 0;  // enumeration index of the chosen t
    Rational eps;
    VertexSet X, Y;
    Rational eta;
    unsigned tries_used = 0;
    ViolatorKind violator = ViolatorKind::XminusY;
    VertexSet violator_set;
    Rational deviation;   // exact |e - E| / E of the violator
    Rational delta_used;  // eps/5 (m > 2) or eps/10 (m = 2) unless overridden
};

struct ExtractResult {
    enum class Status { Found, NoLargeEigenvalue, Exhausted };

    Status status = Status::NoLargeEigenvalue;
    std::optional<WitnessOutcome> outcome;
    // diagnostics for Exhausted
    u64 character = 0;
    unsigned trials = 0;
    Rational best_eta;

    bool found() const { return status == Status::Found; }
};

// From a failed eigenvalue gap to an explicit discrepancy violator: picks
// the largest nontrivial |lambda| with |lambda| >= eps |A|, samples (X, Y)
// until |eta| >= eps n |A| / 16 and all four derived sets sit within
// `slack` of their target densities, then returns the first of
// X\Y, Y\X, X&Y, X|Y that violates the uniform discrepancy relation at
// delta = eps/5 (m > 2) or eps/10 (m = 2).
inline ExtractResult extract_disc_violator(const CayleyGraph& G, const Rational& eps, u64 seed,
                                           unsigned max_tries, const Rational& slack = Rational(1, 20),
                                           std::optional<Rational> delta_override = std::nullopt) {
    if (eps <= Rational(0) || eps > Rational(1))
        throw std::invalid_argument("extract_disc_violator: eps must lie in (0, 1]");
    const Group& g = G.group();
    const u64 n = g.order();
    ExtractResult res;

    Spectrum spec = eigenvalues_character(G);
    double best_abs = -1.0;
    u64 best_char = 0;
    for (const SpectrumEntry& e : spec.entries) {
        if (e.character == 0) continue;
        if (std::abs(e.lambda) > best_abs ||
            (std::abs(e.lambda) == best_abs && e.character < best_char)) {
            best_abs = std::abs(e.lambda);
            best_char = e.character;
        }
    }
    double threshold = eps.to_double() * double(G.degree());
    if (n < 2 || G.degree() == 0 || best_abs < threshold) {
        res.status = ExtractResult::Status::NoLargeEigenvalue;
        return res;
    }

    CharacterIndex t{g.element_at(best_char)};
    const u64 m = g.character_image_order(t);
    Rational delta = delta_override.value_or(m > 2 ? eps / Rational(5) : eps / Rational(10));
    res.character = best_char;

    // |eta| acceptance bar and the size windows around the target
    // densities (1/2, 1/2, 3/8, 5/8 for m > 2; all 1/2 for m = 2).
    Rational eta_bar = eps * Rational(i64(n * G.degree()), 16);
    Rational half(1, 2);
    Rational cap_target = m > 2 ? Rational(3, 8) : half;
    Rational cup_target = m > 2 ? Rational(5, 8) : half;

    auto size_ok = [&](u64 size, const Rational& target) {
        Rational lo = (target - slack) * Rational(i64(n));
        Rational hi = (target + slack) * Rational(i64(n));
        Rational sz{i64(size)};
        return lo <= sz && sz <= hi;
    };

    res.best_eta = Rational(0);
    for (unsigned trial = 0; trial < max_tries; ++trial) {
        auto [X, Y] = sample_witness_sets(G, t, derive_seed(seed, trial));
        Rational eta = eta_statistic(G, X, Y);
        ++res.trials;
        if (eta.abs() > res.best_eta.abs()) res.best_eta = eta;
        if (eta.abs() < eta_bar) continue;

        VertexSet cap = X & Y;
        VertexSet cup = X | Y;
        VertexSet xy = X.minus(Y);
        VertexSet yx = Y.minus(X);
        if (!size_ok(X.count(), half) || !size_ok(Y.count(), half) ||
            !size_ok(cap.count(), cap_target) || !size_ok(cup.count(), cup_target))
            continue;

        const std::pair<ViolatorKind, const VertexSet*> candidates[4] = {
            {ViolatorKind::XminusY, &xy},
            {ViolatorKind::YminusX, &yx},
            {ViolatorKind::XcapY, &cap},
            {ViolatorKind::XcupY, &cup}};
        u64 kmin = detail::size_threshold(delta, n);
        for (const auto& [kind, set] : candidates) {
            if (set->count() < std::max<u64>(kmin, 2)) continue;
            if (disc_instance_holds(G, *set, delta)) continue;
            WitnessOutcome w;
            w.character = best_char;
            w.eps = eps;
            w.X = X;
            w.Y = Y;
            w.eta = eta;
            w.tries_used = trial + 1;
            w.violator = kind;
            w.violator_set = *set;
            w.deviation = disc_instance_deviation(G, *set);
            w.delta_used = delta;
            res.status = ExtractResult::Status::Found;
            res.outcome = std::move(w);
            return res;
        }
    }
    res.status = ExtractResult::Status::Exhausted;
    return res;
}

}  // namespace cayspec
