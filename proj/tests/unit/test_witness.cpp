#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cayspec/discrepancy.hpp"
#include "cayspec/generators.hpp"
#include "cayspec/witness.hpp"

using namespace cayspec;

namespace {

CharacterIndex chr(const CayleyGraph& G, i64 t) {
    return CharacterIndex{G.group().element({t})};
}

}  // namespace

TEST_CASE("component functions") {
    CayleyGraph c4 = interval_cayley(4, 1);
    auto [c0, s0] = components(c4, chr(c4, 0));
    for (double v : c0.values) CHECK(v == 1.0);
    for (double v : s0.values) CHECK(v == 0.0);

    auto [c, s] = components(c4, chr(c4, 1));
    double expect_c[4] = {1, 0, -1, 0};
    double expect_s[4] = {0, 1, 0, -1};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(c.values[i] - expect_c[i]) < 1e-12);
        CHECK(std::abs(s.values[i] - expect_s[i]) < 1e-12);
    }

    Group z2({2});
    CayleyGraph g2(z2, make_connection_set(z2, {z2.element({1})}));
    auto [c2, s2] = components(g2, chr(g2, 1));
    CHECK(c2.values[0] == 1.0);
    CHECK(std::abs(c2.values[1] + 1.0) < 1e-12);
    CHECK(std::abs(c2.values[0] * c2.values[0] + c2.values[1] * c2.values[1] - 2.0) < 1e-12);
    (void)s2;

    // zero-sum for nontrivial characters
    CayleyGraph G = interval_cayley(60, 7);
    for (i64 t : {1, 5, 12, 30}) {
        auto [cc, ss] = components(G, chr(G, t));
        double sc = 0, sss = 0;
        for (u64 v = 0; v < 60; ++v) {
            sc += cc.values[v];
            sss += ss.values[v];
        }
        CHECK(std::abs(sc) <= 1e-8 * 60);
        CHECK(std::abs(sss) <= 1e-8 * 60);
    }
}

TEST_CASE("convolution basics") {
    Group g({6});
    CayleyGraph G(g, make_connection_set(g, {g.element({1}), g.element({5})}));
    GroupFunction delta0, ones, f;
    delta0.values = {1, 0, 0, 0, 0, 0};
    ones.values = std::vector<double>(6, 1.0);
    f.values = {0.5, -1, 2, 0, 3, 7};

    GroupFunction conv = convolve(g, delta0, f);
    for (int i = 0; i < 6; ++i) CHECK(conv.values[i] == f.values[i]);

    GroupFunction nn = convolve(g, ones, ones);
    for (int i = 0; i < 6; ++i) CHECK(nn.values[i] == 6.0);

    CayleyGraph c4 = interval_cayley(4, 1);
    auto [c, s] = components(c4, chr(c4, 1));
    (void)s;
    GroupFunction cc = convolve(c4.group(), c, c);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(cc.values[i] - 2.0 * c.values[i]) < 1e-12);

    GroupFunction wrong;
    wrong.values = {1, 2};
    CHECK_THROWS_AS(convolve(g, wrong, f), std::invalid_argument);
}

TEST_CASE("component identities") {
    CayleyGraph c4 = interval_cayley(4, 1);
    IdentityReport m2 = verify_ident(c4, chr(c4, 2));
    CHECK(m2.m == 2);
    CHECK(std::abs(m2.sum_c2 - 4.0) < 1e-12);
    CHECK(m2.pass);

    CayleyGraph k5 = complete_cayley(5);
    IdentityReport m5 = verify_ident(k5, chr(k5, 1));
    CHECK(m5.m == 5);
    CHECK(std::abs(m5.sum_c2 - 2.5) < 1e-12);
    CHECK(m5.resid_sum_sc <= 1e-7);
    CHECK(m5.pass);

    CHECK_THROWS_AS(verify_ident(c4, chr(c4, 0)), std::invalid_argument);
}

TEST_CASE("identities hold across random pairs") {
    SplitMix64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        u64 n = 4 + rng.below(61);
        Group g({std::uint32_t(n)});
        std::vector<Element> conn;
        for (u64 i = 1; i < n; ++i)
            if (rng.below(2)) {
                conn.push_back(g.element_at(i));
                conn.push_back(g.negate(g.element_at(i)));
            }
        if (conn.empty()) continue;
        CayleyGraph G(g, make_connection_set(g, conn));
        u64 ti = 1 + rng.below(n - 1);
        IdentityReport rep = verify_ident(G, chr(G, i64(ti)));
        INFO("n=" << n << " t=" << ti << " m=" << rep.m);
        REQUIRE(rep.pass);
    }
}

TEST_CASE("witness sampling is deterministic and respects degenerate probabilities") {
    Group z2({2});
    CayleyGraph g2(z2, make_connection_set(z2, {z2.element({1})}));
    for (u64 seed : {0ULL, 1ULL, 42ULL}) {
        auto [X, Y] = sample_witness_sets(g2, chr(g2, 1), seed);
        CHECK(X.count() == 1);
        CHECK(X.contains(0));
        CHECK(Y.count() == 1);
        CHECK(Y.contains(0));
    }

    CayleyGraph G = interval_cayley(512, 32);
    auto [x1, y1] = sample_witness_sets(G, chr(G, 1), 7);
    auto [x2, y2] = sample_witness_sets(G, chr(G, 1), 7);
    CHECK(x1 == x2);
    CHECK(y1 == y2);
    auto [x3, y3] = sample_witness_sets(G, chr(G, 1), 8);
    CHECK(x1.count() != 0);
    CHECK((x3 != x1 || y3 != y1));
}

TEST_CASE("seeded sample sizes concentrate near n/2") {
    CayleyGraph G = interval_cayley(4096, 256);
    auto [X, Y] = sample_witness_sets(G, chr(G, 1), 42);
    CHECK(X.count() >= 4096 * 45 / 100);
    CHECK(X.count() <= 4096 * 55 / 100);
    CHECK(Y.count() >= 4096 * 45 / 100);
    CHECK(Y.count() <= 4096 * 55 / 100);
}

TEST_CASE("eta statistic bounds and small cases") {
    CayleyGraph c8 = interval_cayley(8, 1);
    VertexSet V = VertexSet::full(8);
    CHECK(eta_statistic(c8, V, V) == Rational(3 * 8 * 2, 4));
    CHECK(eta_statistic(c8, VertexSet(8), V) == -Rational(8 * 2, 4));
    VertexSet pair = VertexSet::of(8, {0, 1});
    CHECK(eta_statistic(c8, pair, pair) == Rational(-2));
}

TEST_CASE("sampled pair counts track the convolution expectation") {
    CayleyGraph G = interval_cayley(64, 8);
    CharacterIndex t = chr(G, 1);
    const u64 n = 64;

    auto [c, s] = components(G, t);
    (void)s;
    GroupFunction q;
    q.values.resize(n);
    for (u64 v = 0; v < n; ++v) q.values[v] = 0.5 * (1.0 + c.values[v]);
    GroupFunction qq = convolve(G.group(), q, q);
    double expectation = inner_with_connection_set(G, qq);

    const int samples = 2000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < samples; ++i) {
        auto [X, Y] = sample_witness_sets(G, t, derive_seed(2718, u64(i)));
        double v = double(G.pair_edge_count(X, Y));
        sum += v;
        sum2 += v * v;
    }
    double mean = sum / samples;
    double var = (sum2 - sum * sum / samples) / (samples - 1);
    double se = std::sqrt(var / samples);
    INFO("mean=" << mean << " expectation=" << expectation << " se=" << se);
    CHECK(std::abs(mean - expectation) <= 5 * se);

    // the expected |eta| clears the (1/8) n |<A,c>| bar
    double inner_c = inner_with_connection_set(G, c);
    double eta_mean = std::abs(mean - 0.25 * double(n) * double(G.degree()));
    CHECK(eta_mean >= 0.125 * double(n) * std::abs(inner_c) - 5 * se);
}

TEST_CASE("extraction reports a missing large eigenvalue") {
    CayleyGraph k11 = complete_cayley(11);
    ExtractResult res = extract_disc_violator(k11, Rational(1, 5), 1, 5);
    CHECK(res.status == ExtractResult::Status::NoLargeEigenvalue);
}

TEST_CASE("extraction fails gracefully on tiny groups") {
    Group z2({2});
    CayleyGraph g2(z2, make_connection_set(z2, {z2.element({1})}));
    ExtractResult res = extract_disc_violator(g2, Rational(1, 2), 3, 4);
    CHECK(res.status == ExtractResult::Status::Exhausted);
    CHECK(res.trials == 4);
}

TEST_CASE("extracted violators are sound") {
    CayleyGraph G = interval_cayley(64, 8);
    ExtractResult res =
        extract_disc_violator(G, Rational(1, 2), 11, 60, Rational(1, 10));
    REQUIRE(res.status == ExtractResult::Status::Found);
    const WitnessOutcome& w = *res.outcome;
    CHECK(w.character == 1);
    CHECK(w.delta_used == Rational(1, 10));
    CHECK(w.eta.abs() >= Rational(1, 2) * Rational(64 * 16, 16));

    DiscReport confirm = check_disc(G, w.delta_used, GuidedSets{{w.violator_set}});
    CHECK(confirm.verdict == DiscReport::Verdict::Violated);
    CHECK(confirm.deviation == w.deviation);

    // determinism of the whole extraction
    ExtractResult res2 =
        extract_disc_violator(G, Rational(1, 2), 11, 60, Rational(1, 10));
    REQUIRE(res2.status == ExtractResult::Status::Found);
    CHECK(res2.outcome->violator_set == w.violator_set);
    CHECK(res2.outcome->tries_used == w.tries_used);
}
