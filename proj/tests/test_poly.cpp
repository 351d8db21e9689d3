#include <catch2/catch_amalgamated.hpp>

#include "polypow/poly.hpp"

using namespace polypow;

// independent evaluator: sum c_i x^i with the implicit leading 1
static u64 brute_eval(const MonicPoly& f, u64 x, const FieldCtx& ctx) {
    u64 acc = powmod(x, f.degree(), ctx.p());
    for (std::size_t i = 0; i < f.degree(); ++i)
        acc = (acc + mulmod(f.low[i], powmod(x, i, ctx.p()), ctx.p())) % ctx.p();
    return acc;
}

TEST_CASE("eval examples") {
    FieldCtx F(13, 1);
    MonicPoly xp1{{1}};  // X + 1
    CHECK(eval(xp1, Felt{2}, F).v == 3);
    MonicPoly x2p1{{1, 0}};  // X^2 + 1
    CHECK(eval(x2p1, Felt{0}, F).v == 1);
    MonicPoly q{{4, 3}};  // X^2 + 3X + 4
    CHECK(eval(q, Felt{5}, F).v == 5);
}

TEST_CASE("monic_interpolate examples") {
    FieldCtx F(13, 1);
    {
        std::vector<std::pair<u64, u64>> nodes{{1, 2}};
        CHECK(monic_interpolate(nodes, F) == MonicPoly{{1}});
    }
    {
        std::vector<std::pair<u64, u64>> nodes{{0, 4}, {1, 8}};
        CHECK(monic_interpolate(nodes, F) == MonicPoly{{4, 3}});
    }
    {
        std::vector<std::pair<u64, u64>> nodes{{5, 1}, {5, 2}};
        CHECK_THROWS_AS(monic_interpolate(nodes, F), DuplicateNode);
    }
}

TEST_CASE("random_monic basics") {
    FieldCtx F(13, 1);
    Rng r1(7);
    CHECK(random_monic(0, F, r1) == MonicPoly{});
    CHECK(eval(MonicPoly{}, Felt{5}, F).v == 1);
    MonicPoly a = random_monic(2, F, r1);
    Rng r3(7);
    random_monic(0, F, r3);
    CHECK(random_monic(2, F, r3) == a);  // same seed, same draws
    for (u64 x : {0ull, 1ull, 7ull}) CHECK(eval(a, Felt{x}, F).v == brute_eval(a, x, F));
}

TEST_CASE("interpolate/eval round trip over several primes") {
    for (u64 p : {13ull, 61ull, 1009ull}) {
        FieldCtx F(p, 1);
        Rng rng(p);
        for (std::size_t d = 0; d <= 4; ++d) {
            for (int rep = 0; rep < 40; ++rep) {
                MonicPoly f = random_monic(d, F, rng);
                // d distinct random abscissae
                std::vector<std::pair<u64, u64>> nodes;
                while (nodes.size() < d) {
                    u64 a = uniform_below(rng, p);
                    bool dup = false;
                    for (auto& [x, y] : nodes) dup |= (x == a);
                    if (!dup) nodes.emplace_back(a, eval(f, Felt{a}, F).v);
                }
                MonicPoly back = monic_interpolate(nodes, F);
                REQUIRE(back == f);
                for (auto& [a, y] : nodes) REQUIRE(eval(back, Felt{a}, F).v == y);
            }
        }
    }
}

TEST_CASE("interpolated output has degree exactly d") {
    FieldCtx F(61, 1);
    std::vector<std::pair<u64, u64>> nodes{{3, 10}, {4, 20}, {5, 30}};
    MonicPoly f = monic_interpolate(nodes, F);
    CHECK(f.degree() == 3);  // leading 1 is implicit, three low coefficients
    for (auto& [a, y] : nodes) CHECK(eval(f, Felt{a}, F).v == y);
}

TEST_CASE("lagrange_interpolate recovers dense coefficients") {
    FieldCtx F(13, 1);
    // F(X) = X^3 + 3X^2 + 3X + 1, sampled at 4 points
    std::vector<std::pair<u64, u64>> nodes;
    for (u64 x = 0; x < 4; ++x) {
        u64 y = (powmod(x, 3, 13) + 3 * powmod(x, 2, 13) + 3 * x + 1) % 13;
        nodes.emplace_back(x, y);
    }
    CHECK(lagrange_interpolate(nodes, F) == std::vector<u64>{1, 3, 3, 1});
}
