#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cayspec/generators.hpp"
#include "cayspec/rng.hpp"
#include "cayspec/spectrum.hpp"

using namespace cayspec;

namespace {

std::vector<double> sorted_lambdas(const Spectrum& s) {
    std::vector<double> v;
    for (const auto& e : s.entries) v.push_back(e.lambda);
    std::sort(v.begin(), v.end());
    return v;
}

CayleyGraph random_cayley(SplitMix64& rng, u64 max_order) {
    for (;;) {
        std::vector<std::uint32_t> moduli;
        u64 order = 1;
        do {
            std::uint32_t m = std::uint32_t(2 + rng.below(12));
            if (order * m > max_order) break;
            moduli.push_back(m);
            order *= m;
        } while (rng.below(2));
        if (moduli.empty()) continue;
        Group g(moduli);
        std::vector<Element> conn;
        for (u64 i = 1; i < g.order(); ++i)
            if (rng.below(2)) {
                conn.push_back(g.element_at(i));
                conn.push_back(g.negate(g.element_at(i)));
            }
        if (conn.empty()) continue;
        return CayleyGraph(g, make_connection_set(g, std::move(conn)));
    }
}

}  // namespace

TEST_CASE("complete graph spectrum") {
    Spectrum s = eigenvalues_character(complete_cayley(5));
    CHECK(s.entries[0].lambda == 4.0);
    CHECK(s.entries[0].character == 0);
    for (std::size_t i = 1; i < 5; ++i)
        CHECK(std::abs(s.entries[i].lambda - (-1.0)) < 1e-9);
}

TEST_CASE("six-cycle spectrum matches the cosine values and the dense oracle") {
    CayleyGraph c6 = interval_cayley(6, 1);
    Spectrum s = eigenvalues_character(c6);
    std::vector<double> expect = {-2, -1, -1, 1, 1, 2};
    std::vector<double> got = sorted_lambdas(s);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-9);

    std::vector<double> dense = eigenvalues_dense(adjacency_matrix(c6));
    std::sort(dense.begin(), dense.end());
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(got[i] - dense[i]) < 1e-8);
}

TEST_CASE("trivial character eigenvalue is pinned to the degree") {
    SplitMix64 rng(11);
    for (int i = 0; i < 10; ++i) {
        CayleyGraph G = random_cayley(rng, 40);
        Spectrum s = eigenvalues_character(G);
        bool found = false;
        for (const auto& e : s.entries)
            if (e.character == 0) {
                CHECK(e.lambda == double(G.degree()));
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("dense solver basics") {
    DenseMatrix zero = DenseMatrix::zero(4);
    std::vector<double> z = eigenvalues_dense(zero);
    for (double v : z) CHECK(v == 0.0);

    DenseMatrix k3 = DenseMatrix::zero(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) k3.at(i, j) = 1.0;
    std::vector<double> eig = eigenvalues_dense(k3);
    CHECK(std::abs(eig[0] - 2.0) < 1e-10);
    CHECK(std::abs(eig[1] + 1.0) < 1e-10);
    CHECK(std::abs(eig[2] + 1.0) < 1e-10);

    DenseMatrix bad = DenseMatrix::zero(2);
    bad.at(0, 1) = 1.0;
    CHECK_THROWS_AS(eigenvalues_dense(bad), std::invalid_argument);
    CHECK_THROWS_AS(eigenvalues_dense(DenseMatrix::zero(513)), SizeLimitError);
}

TEST_CASE("spectrum ordering convention") {
    // |lambda| descending; ties broken by signed value then character
    CayleyGraph c4 = interval_cayley(4, 1);  // spectrum {2, 0, -2, 0}
    Spectrum s = eigenvalues_character(c4);
    CHECK(s.entries[0].lambda == 2.0);
    CHECK(std::abs(s.entries[1].lambda + 2.0) < 1e-12);
    CHECK(std::abs(s.entries[2].lambda) < 1e-12);
    CHECK(std::abs(s.entries[3].lambda) < 1e-12);
    CHECK(s.entries[2].character < s.entries[3].character);
}

TEST_CASE("eigenvalue gap verdicts") {
    CayleyGraph k11 = complete_cayley(11);
    EigReport r1 = check_eig(eigenvalues_character(k11), Rational(1, 5), k11.average_degree());
    CHECK(r1.holds);
    CHECK(r1.lambda1 == 10.0);
    CHECK(std::abs(r1.second - 1.0) < 1e-9);

    // The eight-cycle is bipartite: -2 sits in the spectrum, so the
    // second-largest magnitude is 2 and the gap fails at eps = 1/2.
    CayleyGraph c8 = interval_cayley(8, 1);
    EigReport r2 = check_eig(eigenvalues_character(c8), Rational(1, 2), c8.average_degree());
    CHECK_FALSE(r2.holds);
    CHECK(std::abs(r2.second - 2.0) < 1e-9);
    CHECK(r2.failing_character.has_value());

    // item (i) is exact for every regular Cayley graph at eps = 1
    SplitMix64 rng(3);
    for (int i = 0; i < 5; ++i) {
        CayleyGraph G = random_cayley(rng, 30);
        EigReport r = check_eig(eigenvalues_character(G), Rational(1), G.average_degree());
        CHECK((1.0 - 1.0) * G.average_degree() <= r.lambda1);
        CHECK(r.lambda1 <= 2.0 * G.average_degree());
    }

    CHECK_THROWS_AS(check_eig(std::vector<double>{}, Rational(1, 2), 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_eig(std::vector<double>{1.0}, Rational(0), 1.0), std::invalid_argument);
}

TEST_CASE("character and dense spectra agree on random graphs") {
    SplitMix64 rng(17);
    for (int i = 0; i < 12; ++i) {
        CayleyGraph G = random_cayley(rng, 48);
        std::vector<double> a = sorted_lambdas(eigenvalues_character(G));
        std::vector<double> b = eigenvalues_dense(adjacency_matrix(G));
        std::sort(b.begin(), b.end());
        REQUIRE(a.size() == b.size());
        for (std::size_t j = 0; j < a.size(); ++j) REQUIRE(std::abs(a[j] - b[j]) < 1e-8);
    }
}

TEST_CASE("trace identities") {
    SplitMix64 rng(23);
    for (int i = 0; i < 8; ++i) {
        CayleyGraph G = random_cayley(rng, 48);
        Spectrum s = eigenvalues_character(G);
        double sum1 = 0, sum2 = 0;
        for (const auto& e : s.entries) {
            sum1 += e.lambda;
            sum2 += e.lambda * e.lambda;
        }
        CHECK(std::abs(sum1) <= 1e-6 * double(G.order()));
        double target = double(G.order() * G.degree());
        CHECK(std::abs(sum2 - target) <= 1e-6 * target);
    }
}

TEST_CASE("even cycles have symmetric spectra") {
    for (u64 n : {8, 10, 12}) {
        std::vector<double> v = sorted_lambdas(eigenvalues_character(interval_cayley(n, 1)));
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(std::abs(v[i] + v[v.size() - 1 - i]) < 1e-8);
    }
}

TEST_CASE("per-character computation is partition independent") {
    CayleyGraph G = interval_cayley(100, 7);
    Spectrum one = eigenvalues_character(G, 1);
    Spectrum four = eigenvalues_character(G, 4);
    REQUIRE(one.entries.size() == four.entries.size());
    for (std::size_t i = 0; i < one.entries.size(); ++i) {
        CHECK(one.entries[i].character == four.entries[i].character);
        CHECK(one.entries[i].lambda == four.entries[i].lambda);
    }
}
