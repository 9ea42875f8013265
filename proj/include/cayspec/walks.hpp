#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cayspec/cayley.hpp"
#include "cayspec/errors.hpp"
#include "cayspec/generic_graph.hpp"
#include "cayspec/rational.hpp"
#include "cayspec/spectrum.hpp"

namespace cayspec {

enum class WalkMethod { Spectral, Matrix, Both };

// Closed-walk count of one length: spectral route sums lambda_i^ell, the
// matrix route takes the exact integer trace of the ell-th adjacency
// power (n <= 256 only).
struct WalkReport {
    unsigned length = 0;
    std::optional<double> count_spectral;
    std::optional<i128> count_matrix;
    double dbar_power = 0.0;
    double deviation = 0.0;  // count / dbar^ell

    double count() const {
        if (count_matrix) return double(*count_matrix);
        return *count_spectral;
    }
};

namespace detail {

// Trace of the ell-th power of a 0/1 adjacency matrix, exact integers with
// 128-bit accumulation.
template <class G>
i128 adjacency_power_trace(const G& graph, unsigned ell) {
    const u64 n = graph.order();
    if (n > 256) throw SizeLimitError("closed_walk_count: matrix method requires n <= 256");
    std::vector<i128> adj(n * n, 0), power;
    for (u64 u = 0; u < n; ++u)
        for (u64 v = 0; v < n; ++v)
            adj[u * n + v] = graph.adjacent(u, v) ? 1 : 0;
    power = adj;
    for (unsigned k = 1; k < ell; ++k) {
        std::vector<i128> next(n * n, 0);
        for (u64 i = 0; i < n; ++i)
            for (u64 j = 0; j < n; ++j) {
                if (power[i * n + j] == 0) continue;
                i128 pij = power[i * n + j];
                for (u64 l = 0; l < n; ++l) next[i * n + l] += pij * adj[j * n + l];
            }
        power = std::move(next);
    }
    i128 trace = 0;
    for (u64 i = 0; i < n; ++i) trace += power[i * n + i];
    return trace;
}

}  // namespace detail

inline WalkReport closed_walk_count(const CayleyGraph& G, unsigned ell,
                                    WalkMethod method = WalkMethod::Both) {
    if (ell < 1) throw std::invalid_argument("closed_walk_count: length must be >= 1");
    WalkReport rep;
    rep.length = ell;
    rep.dbar_power = std::pow(double(G.degree()), double(ell));
    if (method == WalkMethod::Spectral || method == WalkMethod::Both) {
        Spectrum spec = eigenvalues_character(G);
        double s = 0.0;
        for (const SpectrumEntry& e : spec.entries) s += std::pow(e.lambda, double(ell));
        rep.count_spectral = s;
    }
    if (method == WalkMethod::Matrix || method == WalkMethod::Both)
        rep.count_matrix = detail::adjacency_power_trace(G, ell);
    rep.deviation = rep.dbar_power > 0 ? rep.count() / rep.dbar_power : 0.0;
    return rep;
}

inline WalkReport closed_walk_count(const GenericGraph& G, unsigned ell) {
    if (ell < 1) throw std::invalid_argument("closed_walk_count: length must be >= 1");
    WalkReport rep;
    rep.length = ell;
    rep.dbar_power = std::pow(G.average_degree(), double(ell));
    rep.count_matrix = detail::adjacency_power_trace(G, ell);
    rep.deviation = rep.dbar_power > 0 ? rep.count() / rep.dbar_power : 0.0;
    return rep;
}

struct CircuitReport {
    unsigned length = 0;
    Rational tol;
    double count = 0.0;
    double dbar_power = 0.0;
    double deviation_ratio = 0.0;  // count / dbar^ell
    bool pass = false;
};

// CIRCUIT_ell at a finite-n tolerance: pass iff |count/dbar^ell - 1| <= tol.
inline CircuitReport check_circuit(const CayleyGraph& G, unsigned ell, const Rational& tol) {
    if (ell < 4 || ell % 2 != 0)
        throw std::invalid_argument("check_circuit: length must be even and >= 4");
    WalkReport walk = closed_walk_count(
        G, ell, G.order() <= 256 ? WalkMethod::Both : WalkMethod::Spectral);
    CircuitReport rep;
    rep.length = ell;
    rep.tol = tol;
    rep.count = walk.count();
    rep.dbar_power = walk.dbar_power;
    rep.deviation_ratio = walk.deviation;
    rep.pass = std::abs(rep.deviation_ratio - 1.0) <= tol.to_double();
    return rep;
}

}  // namespace cayspec
