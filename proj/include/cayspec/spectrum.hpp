#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "cayspec/cayley.hpp"
#include "cayspec/errors.hpp"
#include "cayspec/generic_graph.hpp"
#include "cayspec/rational.hpp"

namespace cayspec {

struct SpectrumEntry {
    u64 character;  // enumeration index of the character's element t
    double lambda;
};

// All n adjacency eigenvalues of a Cayley graph, one per character,
// ordered by decreasing |lambda| (ties: larger signed value first, then
// smaller character index).  residual is the largest imaginary magnitude
// discarded when realizing the character sums.
struct Spectrum {
    std::vector<SpectrumEntry> entries;
    double residual = 0.0;

    double lambda1() const { return entries.front().lambda; }
    double second() const { return entries.size() > 1 ? std::abs(entries[1].lambda) : 0.0; }
};

namespace detail {

inline void sort_spectrum(std::vector<SpectrumEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        double aa = std::abs(a.lambda), ab = std::abs(b.lambda);
        if (aa != ab) return aa > ab;
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        return a.character < b.character;
    });
}

}  // namespace detail

// Spectrum by character sums: lambda(t) = sum_{a in A} cos(2 pi rho_t(a) / m).
// The sine parts cancel in exact arithmetic because A = -A; their floating
// residue is checked against 1e-9 |A| and discarded.  The trivial
// character's eigenvalue is pinned to exactly |A|.
inline Spectrum eigenvalues_character(const CayleyGraph& G, unsigned threads = 1) {
    const Group& g = G.group();
    const u64 n = g.order();
    const u64 N = g.exponent();
    const double two_pi = 6.283185307179586476925286766559;

    std::vector<double> cos_table(N), sin_table(N);
    for (u64 j = 0; j < N; ++j) {
        cos_table[j] = std::cos(two_pi * double(j) / double(N));
        sin_table[j] = std::sin(two_pi * double(j) / double(N));
    }

    Spectrum spec;
    spec.entries.resize(n);
    std::vector<double> residuals(std::max(1u, threads), 0.0);

    // lambda(t) = sum_f c_f cos(2 pi f / m) over the exact integer fiber
    // counts c_f = |A n rho^{-1}(f)|.
    auto run_range = [&](u64 lo, u64 hi, unsigned slot) {
        std::vector<i64> fibers(N, 0);
        for (u64 ti = lo; ti < hi; ++ti) {
            if (ti == 0) {
                spec.entries[ti] = {ti, double(G.degree())};
                continue;
            }
            CharacterIndex t{g.element_at(ti)};
            Group::RhoMap rho = g.rho_map(t);
            const u64 m = rho.m;
            const u64 scale = N / m;
            std::fill(fibers.begin(), fibers.begin() + m, 0);
            for (const Element& a : G.connection_set().elements) ++fibers[rho(a)];
            double re = 0.0, im = 0.0;
            for (u64 f = 0; f < m; ++f) {
                if (!fibers[f]) continue;
                re += double(fibers[f]) * cos_table[f * scale];
                im += double(fibers[f]) * sin_table[f * scale];
            }
            residuals[slot] = std::max(residuals[slot], std::abs(im));
            spec.entries[ti] = {ti, re};
        }
    };

    if (threads <= 1 || n < 64) {
        run_range(0, n, 0);
    } else {
        std::vector<std::thread> pool;
        u64 chunk = (n + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            u64 lo = std::min(n, u64(k) * chunk);
            u64 hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi, k);
        }
        for (auto& th : pool) th.join();
    }

    for (double r : residuals) spec.residual = std::max(spec.residual, r);
    if (spec.residual > 1e-9 * std::max<double>(1.0, double(G.degree())))
        throw InternalConsistencyError("eigenvalues_character: imaginary residual too large");

    detail::sort_spectrum(spec.entries);
    return spec;
}

// Dense symmetric matrix for the independent eigensolver oracle.
struct DenseMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major n x n

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    static DenseMatrix zero(std::size_t n) { return DenseMatrix{n, std::vector<double>(n * n, 0.0)}; }
};

inline DenseMatrix adjacency_matrix(const CayleyGraph& G) {
    DenseMatrix M = DenseMatrix::zero(G.order());
    for (u64 u = 0; u < G.order(); ++u)
        G.for_each_neighbor(u, [&](u64 v) { M.at(u, v) = 1.0; });
    return M;
}

inline DenseMatrix adjacency_matrix(const GenericGraph& G) {
    DenseMatrix M = DenseMatrix::zero(G.order());
    for (u64 u = 0; u < G.order(); ++u)
        G.neighbors(u).for_each([&](u64 v) { M.at(u, v) = 1.0; });
    return M;
}

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
// by decreasing absolute value.  Supports n <= 512; runs sweeps until the
// off-diagonal Frobenius norm drops below 1e-10 n.
inline std::vector<double> eigenvalues_dense(DenseMatrix M) {
    const std::size_t n = M.n;
    if (n > 512) throw SizeLimitError("eigenvalues_dense: n > 512");
    if (M.a.size() != n * n) throw std::invalid_argument("eigenvalues_dense: malformed matrix");
    for (std::size_t i = 0; i < n; ++i) {
        if (M.at(i, i) != 0.0) throw std::invalid_argument("eigenvalues_dense: nonzero diagonal");
        for (std::size_t j = i + 1; j < n; ++j)
            if (M.at(i, j) != M.at(j, i))
                throw std::invalid_argument("eigenvalues_dense: matrix not symmetric");
    }
    if (n == 0) return {};

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += M.at(i, j) * M.at(i, j);
        return std::sqrt(s);
    };

    const double target = 1e-10 * double(n);
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (off_norm() <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = M.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double tau = (M.at(q, q) - M.at(p, p)) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = M.at(k, p), akq = M.at(k, q);
                    M.at(k, p) = c * akp - s * akq;
                    M.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = M.at(p, k), aqk = M.at(q, k);
                    M.at(p, k) = c * apk - s * aqk;
                    M.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    if (off_norm() > target)
        throw InternalConsistencyError("eigenvalues_dense: Jacobi sweeps did not converge");

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = M.at(i, i);
    std::sort(eig.begin(), eig.end(), [](double a, double b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        return a > b;
    });
    return eig;
}

// Verdict of the eigenvalue-gap property at tolerance eps:
//   (i)  lambda_1 within (1 +- eps) of the average degree, and
//   (ii) |lambda_i| <= eps * average degree for all i >= 2.
struct EigReport {
    Rational eps;
    double lambda1 = 0.0;
    double second = 0.0;
    double average_degree = 0.0;
    bool holds = false;
    std::optional<u64> failing_character;
};

namespace detail {

inline EigReport check_eig_impl(const std::vector<double>& lambdas,
                                const std::vector<u64>* characters, const Rational& eps,
                                double average_degree) {
    if (eps <= Rational(0) || eps > Rational(1))
        throw std::invalid_argument("check_eig: eps must lie in (0, 1]");
    if (lambdas.empty()) throw std::invalid_argument("check_eig: empty spectrum");
    EigReport rep;
    rep.eps = eps;
    rep.average_degree = average_degree;
    rep.lambda1 = lambdas.front();
    double e = eps.to_double();
    bool first_ok = (1.0 - e) * average_degree <= rep.lambda1 &&
                    rep.lambda1 <= (1.0 + e) * average_degree;
    rep.second = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        if (std::abs(lambdas[i]) > rep.second) {
            rep.second = std::abs(lambdas[i]);
            worst = i;
        }
    }
    bool rest_ok = rep.second <= e * average_degree;
    rep.holds = first_ok && rest_ok;
    if (!rep.holds && characters)
        rep.failing_character = first_ok ? (*characters)[worst] : (*characters)[0];
    return rep;
}

}  // namespace detail

inline EigReport check_eig(const Spectrum& spec, const Rational& eps, double average_degree) {
    std::vector<double> lambdas(spec.entries.size());
    std::vector<u64> chars(spec.entries.size());
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        lambdas[i] = spec.entries[i].lambda;
        chars[i] = spec.entries[i].character;
    }
    return detail::check_eig_impl(lambdas, &chars, eps, average_degree);
}

inline EigReport check_eig(const std::vector<double>& sorted_eigenvalues, const Rational& eps,
                           double average_degree) {
    return detail::check_eig_impl(sorted_eigenvalues, nullptr, eps, average_degree);
}

}  // namespace cayspec
