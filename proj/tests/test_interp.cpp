#include <catch2/catch_amalgamated.hpp>

#include "polypow/interp.hpp"
#include "polypow/stats.hpp"

using namespace polypow;

TEST_CASE("naive_interpolate recovers X+1 from its cube values") {
    FieldCtx F(13, 3);
    LocalOracle o(MonicPoly{{1}}, F);
    MonicPoly f = naive_interpolate(o, 1);
    CHECK(f == MonicPoly{{1}});
    CHECK(o.query_count() == 4);  // ed + 1 = 4 queries
}

TEST_CASE("naive_interpolate with e = 1 is plain interpolation") {
    FieldCtx F(13, 1);
    MonicPoly hidden{{4, 3}};
    LocalOracle o(hidden, F);
    CHECK(naive_interpolate(o, 2) == hidden);
    CHECK(o.query_count() == 3);
}

TEST_CASE("naive_interpolate precondition and degree mismatch") {
    {
        FieldCtx F(13, 12);
        LocalOracle o(MonicPoly{{1, 2}}, F);
        CHECK_THROWS_AS(naive_interpolate(o, 2), DegreeOverflow);  // 24 >= 13
    }
    {
        // ask for degree 2 when the hidden polynomial has degree 1:
        // the interpolated F is not a monic-degree-2e power
        FieldCtx F(61, 3);
        LocalOracle o(MonicPoly{{5}}, F);
        CHECK_THROWS_AS(naive_interpolate(o, 2), NotAPerfectPower);
    }
}

TEST_CASE("naive_interpolate across random instances") {
    Rng rng(21);
    for (u64 p : {61ull, 1009ull}) {
        for (u64 e : {2ull, 3ull, 4ull, 6ull}) {
            if ((p - 1) % e != 0) continue;
            for (u64 d = 1; d <= 3; ++d) {
                if (d * e >= p) continue;
                FieldCtx F(p, e);
                MonicPoly hidden = random_monic(d, F, rng);
                LocalOracle o(hidden, F);
                REQUIRE(naive_interpolate(o, d) == hidden);
                REQUIRE(o.query_count() == e * d + 1);
            }
        }
    }
}

TEST_CASE("worked example: hidden X+1, p=13, e=3, d=1") {
    FieldCtx F(13, 3);
    LocalOracle o(MonicPoly{{1}}, F);
    InterpConfig cfg{.d = 1, .epsilon = 0.01, .seed = 7};
    InterpResult r = randomized_interpolate(o, cfg);
    REQUIRE(r.verified);
    CHECK(r.candidate == MonicPoly{{1}});  // exact for monic linear f
    CHECK(r.queries_used == r.rounds_used * (cfg.test_set_size(13) + 1) + r.skipped_roots);
}

TEST_CASE("e = 1 collapses to a single candidate") {
    FieldCtx F(13, 1);
    MonicPoly hidden{{4, 3}};
    LocalOracle o(hidden, F);
    InterpConfig cfg{.d = 2, .epsilon = 0.01, .seed = 3};
    InterpResult r = randomized_interpolate(o, cfg);
    REQUIRE(r.verified);
    CHECK(r.candidate == hidden);
}

TEST_CASE("accepted candidates are observably equivalent to the hidden poly") {
    Rng rng(5);
    for (u64 p : {13ull, 61ull}) {
        for (u64 e : {3ull, 4ull, 5ull, 6ull}) {
            if ((p - 1) % e != 0) continue;
            FieldCtx F(p, e);
            for (u64 d = 1; d <= 2; ++d) {
                for (int rep = 0; rep < 10; ++rep) {
                    MonicPoly hidden = random_monic(d, F, rng);
                    LocalOracle o(hidden, F);
                    InterpConfig cfg{.d = d, .epsilon = 0.01, .seed = rng()};
                    InterpResult r = randomized_interpolate(o, cfg);
                    REQUIRE(r.verified);
                    REQUIRE(equiv_bruteforce(r.candidate, hidden, F));
                }
            }
        }
    }
}

TEST_CASE("exact recovery for monic linear hidden polynomials") {
    Rng rng(31);
    FieldCtx F(61, 5);
    for (int rep = 0; rep < 50; ++rep) {
        MonicPoly hidden = random_monic(1, F, rng);
        LocalOracle o(hidden, F);
        InterpConfig cfg{.d = 1, .epsilon = 0.01, .seed = rng()};
        InterpResult r = randomized_interpolate(o, cfg);
        REQUIRE(r.verified);
        REQUIRE(r.candidate == hidden);
    }
}

TEST_CASE("query accounting per round") {
    FieldCtx F(61, 5);
    LocalOracle o(MonicPoly{{10, 20}}, F);
    InterpConfig cfg{.d = 2, .epsilon = 0.0001, .seed = 9};
    InterpResult r = randomized_interpolate(o, cfg);
    REQUIRE(r.verified);
    CHECK(o.query_count() == r.queries_used);
    CHECK(r.queries_used == r.rounds_used * (cfg.test_set_size(61) + 2) + r.skipped_roots);
}

TEST_CASE("verify_candidate on cached values") {
    FieldCtx F(13, 3);
    MonicPoly f{{1}};
    std::vector<std::pair<u64, u64>> cached;
    LocalOracle o(f, F);
    for (u64 x : {2ull, 5ull, 7ull}) cached.emplace_back(x, o.query(x).v);
    CHECK(verify_candidate(f, cached, F));
    CHECK_FALSE(verify_candidate(MonicPoly{{5}}, cached, F));  // 6^3 != 1 at x=2
    CHECK(verify_candidate(MonicPoly{{5}}, {}, F));            // vacuous
}

TEST_CASE("configuration errors") {
    FieldCtx F(13, 3);
    LocalOracle o(MonicPoly{{1}}, F);
    CHECK_THROWS_AS(randomized_interpolate(o, InterpConfig{.d = 10, .seed = 1}),
                    std::invalid_argument);  // p <= 2d

    InterpConfig tiny{.d = 1, .seed = 1, .search_ceiling = 2};
    CHECK_THROWS_AS(randomized_interpolate(o, tiny), SearchCeilingExceeded);  // e^d = 3 > 2
}
