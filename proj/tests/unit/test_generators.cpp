#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cayspec/discrepancy.hpp"
#include "cayspec/generators.hpp"
#include "cayspec/spectrum.hpp"

using namespace cayspec;

TEST_CASE("random cyclic graphs always validate") {
    for (u64 seed = 0; seed < 1000; ++seed) {
        CayleyGraph G = random_cyclic_cayley(50, Rational(3, 10), seed);
        CHECK(G.order() == 50);
        // symmetry and zero-freeness are enforced by the constructor; a
        // second pass through validation must agree
        CHECK_NOTHROW(make_connection_set(G.group(), G.connection_set().elements));
    }
}

TEST_CASE("empty draws are possible and rejected downstream") {
    // seed 369 empties the set at n = 50, p = 3/10 (golden run)
    CayleyGraph G = random_cyclic_cayley(50, Rational(3, 10), 369);
    CHECK(G.degree() == 0);
    CHECK_THROWS_AS(check_disc(G, Rational(1, 2), ExhaustiveStrategy{}), std::invalid_argument);
}

TEST_CASE("sparse degree concentrates around p n") {
    // p close to log^2(4096)/4096; seed 1 is the recorded run
    CayleyGraph G = random_cyclic_cayley(4096, Rational::parse("0.0169"), 1);
    double target = 0.0169 * 4096;
    CHECK(double(G.degree()) >= 0.7 * target);
    CHECK(double(G.degree()) <= 1.3 * target);
    CHECK(G.degree() == 60);  // golden value for seed 1
}

TEST_CASE("near-certain inclusion fills the connection set") {
    // per-element trials run at p/2, so pairs arrive at 1 - (1 - p/2)^2;
    // seed 20 is a recorded run reaching the full set at n = 16
    CayleyGraph G = random_cyclic_cayley(16, Rational(255, 256), 20);
    CHECK(G.degree() == 15);
}

TEST_CASE("determinism under seed") {
    CayleyGraph a = random_cyclic_cayley(64, Rational(1, 5), 9);
    CayleyGraph b = random_cyclic_cayley(64, Rational(1, 5), 9);
    CHECK(a.connection_set().elements == b.connection_set().elements);
    CayleyGraph c = random_cyclic_cayley(64, Rational(1, 5), 10);
    CHECK(a.connection_set().elements != c.connection_set().elements);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(random_cyclic_cayley(2, Rational(1, 2), 0), std::invalid_argument);
    CHECK_THROWS_AS(random_cyclic_cayley(10, Rational(0), 0), std::invalid_argument);
    CHECK_THROWS_AS(random_cyclic_cayley(10, Rational(1), 0), std::invalid_argument);
    CHECK_THROWS_AS(interval_cayley(8, 4), std::invalid_argument);
    CHECK_THROWS_AS(interval_cayley(8, 0), std::invalid_argument);
    CHECK_THROWS_AS(blowup(interval_cayley(8, 1), 0), std::invalid_argument);
    CHECK_THROWS_AS(gnp_plus_clique(5000, Rational(1, 10), Rational(1, 2), 0),
                    std::invalid_argument);
}

TEST_CASE("interval family") {
    CayleyGraph c8 = interval_cayley(8, 1);
    CHECK(c8.degree() == 2);
    CHECK(c8.adjacent(u64(0), u64(1)));
    CHECK(c8.adjacent(u64(0), u64(7)));
    CayleyGraph G = interval_cayley(16, 4);
    CHECK(G.degree() == 8);
}

TEST_CASE("blowup structure and spectrum") {
    CayleyGraph c4 = interval_cayley(4, 1);
    CayleyGraph b2 = blowup(c4, 2);
    CHECK(b2.order() == 8);
    CHECK(b2.degree() == 4);

    std::vector<double> eig = eigenvalues_dense(adjacency_matrix(b2));
    std::sort(eig.begin(), eig.end());
    std::vector<double> expect = {-4, 0, 0, 0, 0, 0, 0, 4};
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(eig[i] - expect[i]) < 1e-8);

    // k = 1 keeps the spectrum
    CayleyGraph b1 = blowup(c4, 1);
    std::vector<double> a = eigenvalues_dense(adjacency_matrix(c4));
    std::vector<double> b = eigenvalues_dense(adjacency_matrix(b1));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
}

TEST_CASE("blowup spectrum law across small graphs") {
    for (u64 n : {6, 8, 12}) {
        for (std::uint32_t k : {2u, 3u}) {
            if (n * k > 48) continue;
            CayleyGraph G = interval_cayley(n, 2);
            CayleyGraph B = blowup(G, k);
            std::vector<double> base = eigenvalues_dense(adjacency_matrix(G));
            std::vector<double> blown = eigenvalues_dense(adjacency_matrix(B));
            std::vector<double> expect;
            for (double l : base) expect.push_back(double(k) * l);
            for (u64 i = 0; i < n * (k - 1); ++i) expect.push_back(0.0);
            std::sort(expect.begin(), expect.end());
            std::sort(blown.begin(), blown.end());
            REQUIRE(expect.size() == blown.size());
            for (std::size_t i = 0; i < expect.size(); ++i)
                REQUIRE(std::abs(expect[i] - blown[i]) < 1e-8);
        }
    }
}

TEST_CASE("random graph plus clique") {
    GenericGraph plain = gnp_plus_clique(60, Rational(1, 10), Rational(0), 3);
    CHECK(plain.order() == 60);

    GenericGraph G = gnp_plus_clique(400, Rational(1, 10), Rational(1, 2), 3);
    CHECK(G.order() == 420);
    // isolated clique block on the last 20 vertices
    for (u64 u = 400; u < 420; ++u) {
        CHECK(G.degree(u) == 19);
        for (u64 v = 0; v < 400; ++v) CHECK_FALSE(G.adjacent(u, v));
        for (u64 v = 400; v < 420; ++v) CHECK(G.adjacent(u, v) == (u != v));
    }
    // symmetry
    for (u64 u = 0; u < 420; u += 13)
        for (u64 v = 0; v < 420; v += 7) CHECK(G.adjacent(u, v) == G.adjacent(v, u));

    GenericGraph again = gnp_plus_clique(400, Rational(1, 10), Rational(1, 2), 3);
    CHECK(G.edge_count() == again.edge_count());
}
