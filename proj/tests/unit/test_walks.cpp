#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cayspec/generators.hpp"
#include "cayspec/rng.hpp"
#include "cayspec/walks.hpp"
#include "../support/naive.hpp"

using namespace cayspec;

TEST_CASE("length-two walks count ordered adjacent pairs") {
    for (u64 n : {6, 10, 15}) {
        CayleyGraph G = interval_cayley(n, 2);
        WalkReport rep = closed_walk_count(G, 2, WalkMethod::Both);
        CHECK(*rep.count_matrix == i128(n * G.degree()));
        CHECK(std::abs(*rep.count_spectral - double(n * G.degree())) <
              1e-6 * double(n * G.degree()));
    }
}

TEST_CASE("four-cycle walk counts") {
    CayleyGraph c4 = interval_cayley(4, 1);
    WalkReport rep = closed_walk_count(c4, 4, WalkMethod::Both);
    CHECK(*rep.count_matrix == 32);
    CHECK(std::abs(*rep.count_spectral - 32.0) < 1e-8);
}

TEST_CASE("length one has no closed walks") {
    CayleyGraph G = interval_cayley(9, 2);
    WalkReport rep = closed_walk_count(G, 1, WalkMethod::Matrix);
    CHECK(*rep.count_matrix == 0);
    CHECK_THROWS_AS(closed_walk_count(G, 0, WalkMethod::Matrix), std::invalid_argument);
}

TEST_CASE("matrix size cap") {
    CHECK_THROWS_AS(closed_walk_count(interval_cayley(300, 3), 4, WalkMethod::Matrix),
                    SizeLimitError);
    CHECK_NOTHROW(closed_walk_count(interval_cayley(300, 3), 4, WalkMethod::Spectral));
}

TEST_CASE("spectral and matrix counts agree; both match plain path extension") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        u64 n = 5 + rng.below(60);
        Group g({std::uint32_t(n)});
        std::vector<Element> conn;
        for (u64 i = 1; i < n; ++i)
            if (rng.below(2)) {
                conn.push_back(g.element_at(i));
                conn.push_back(g.negate(g.element_at(i)));
            }
        if (conn.empty()) continue;
        CayleyGraph G(g, make_connection_set(g, conn));
        std::vector<std::vector<int>> conn_naive;
        for (const Element& e : G.connection_set().elements)
            conn_naive.push_back(std::vector<int>(e.residues.begin(), e.residues.end()));
        naive::Graph ref = naive::cayley_graph({int(n)}, conn_naive);

        for (unsigned ell : {2u, 3u, 4u, 6u}) {
            WalkReport rep = closed_walk_count(G, ell, WalkMethod::Both);
            i64 expected = naive::closed_walks(ref, int(ell));
            REQUIRE(*rep.count_matrix == i128(expected));
            REQUIRE(std::abs(*rep.count_spectral - double(expected)) <=
                    1e-8 * std::max(1.0, double(expected)));
        }
    }
}

TEST_CASE("degenerate walks floor the four-walk count") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        u64 n = 4 + rng.below(40);
        u64 k = 1 + rng.below((n - 1) / 2);
        CayleyGraph G = interval_cayley(n, k);
        WalkReport rep = closed_walk_count(G, 4, WalkMethod::Matrix);
        CHECK(*rep.count_matrix >= i128(n) * G.degree() * G.degree());
    }
}

TEST_CASE("walk-count property verdicts") {
    CircuitReport pass = check_circuit(complete_cayley(47), 4, Rational(1, 5));
    CHECK(pass.pass);
    // (n-1)^4 + (n-1) closed four-walks in a complete graph
    double expect = std::pow(46.0, 4) + 46.0;
    CHECK(std::abs(pass.count - expect) < 1e-6 * expect);

    CircuitReport fail = check_circuit(interval_cayley(8, 1), 4, Rational(1, 2));
    CHECK_FALSE(fail.pass);
    CHECK(fail.deviation_ratio >= 1.5);

    CHECK_THROWS_AS(check_circuit(complete_cayley(10), 5, Rational(1, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(check_circuit(complete_cayley(10), 2, Rational(1, 2)),
                    std::invalid_argument);
}
