#ifndef POLYPOW_INTERP_HPP
#define POLYPOW_INTERP_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polypow/ff.hpp"
#include "polypow/group.hpp"
#include "polypow/oracle.hpp"
#include "polypow/poly.hpp"
#include "polypow/rng.hpp"

namespace polypow {

struct DegreeOverflow : std::invalid_argument {
    DegreeOverflow(u64 de, u64 p)
        : std::invalid_argument("d*e = " + std::to_string(de) + " must be < p = " +
                                std::to_string(p)) {}
};

struct NotAPerfectPower : std::runtime_error {
    NotAPerfectPower() : std::runtime_error("queried values are not consistent with f^e "
                                            "for a monic f of the requested degree") {}
};

struct SearchExhausted : std::runtime_error {
    SearchExhausted()
        : std::runtime_error("no candidate tuple verified in any round; wrong degree "
                             "or inconsistent oracle") {}
};

struct TooManyRoots : std::runtime_error {
    TooManyRoots()
        : std::runtime_error("fewer than d non-root anchor points among the first 2d+1 "
                             "scan points") {}
};

struct SearchCeilingExceeded : std::invalid_argument {
    SearchCeilingExceeded(u64 e, u64 d)
        : std::invalid_argument("search space e^d with e=" + std::to_string(e) + ", d=" +
                                std::to_string(d) + " exceeds the configured ceiling") {}
};

struct InterpConfig {
    u64 d;
    double epsilon = 0.01;
    double t_factor = 2.0;        // |T| = ceil(t_factor * d * log2 p)
    u64 seed = 0;
    u64 search_ceiling = 10'000'000;  // max e^d tuples per round

    u64 test_set_size(u64 p) const {
        u64 n = (u64)std::ceil(t_factor * (double)d * std::log2((double)p));
        return n < 1 ? 1 : n;
    }
    u64 rounds() const {
        // per-round success >= 0.99
        u64 r = (u64)std::ceil(std::log(1.0 / epsilon) / std::log(100.0));
        return r < 1 ? 1 : r;
    }
};

struct InterpResult {
    MonicPoly candidate;
    u64 rounds_used = 0;
    u64 queries_used = 0;
    u64 skipped_roots = 0;
    bool verified = false;
};

/// True iff g(a)^e matches the cached oracle value for every (a, b(a)) pair.
/// Costs no oracle queries.
inline bool verify_candidate(const MonicPoly& g,
                             const std::vector<std::pair<u64, u64>>& cached,
                             const FieldCtx& ctx) {
    for (const auto& [a, b] : cached) {
        if (ctx.pow(eval(g, Felt{a}, ctx), ctx.e()).v != b) return false;
    }
    return true;
}

/// Naive baseline: interpolate F = f^e from ed+1 queries and extract its
/// monic e-th root by coefficient recursion from the leading term. Exact
/// recovery; requires de < p.
inline MonicPoly naive_interpolate(PowerOracle& o, u64 d) {
    const FieldCtx& ctx = o.ctx();
    const u64 p = ctx.p();
    const u64 e = ctx.e();
    const u64 de = d * e;
    if (de >= p) throw DegreeOverflow(de, p);

    std::vector<std::pair<u64, u64>> nodes(de + 1);
    for (u64 x = 0; x <= de; ++x) nodes[x] = {x, o.query(x).v};
    std::vector<u64> F = lagrange_interpolate(nodes, ctx);  // size de+1, low to high
    if (F[de] != 1 % p) throw NotAPerfectPower();

    // reversed series: Frev = 1 + F_{de-1} Y + ...; solve frev^e = Frev
    // term by term via  e * Frev * frev' = Frev' * frev
    MonicPoly f;
    f.low.assign(d, 0);
    std::vector<u64> a(d + 1, 0);  // frev coefficients
    a[0] = 1 % p;
    auto Frev = [&](u64 i) { return Felt{F[de - i]}; };
    for (u64 n = 1; n <= d; ++n) {
        Felt acc = ctx.zero();
        for (u64 i = 1; i <= n; ++i) {  // sum (i) Frev_i a_{n-i}
            acc = ctx.add(acc, ctx.mul(ctx.mul(ctx.from_uint(i), Frev(i)), Felt{a[n - i]}));
        }
        for (u64 i = 1; i < n; ++i) {  // minus e * sum Frev_i (n-i) a_{n-i}
            Felt term = ctx.mul(ctx.mul(ctx.from_uint(e % p), Frev(i)),
                                ctx.mul(ctx.from_uint(n - i), Felt{a[n - i]}));
            acc = ctx.sub(acc, term);
        }
        Felt den = ctx.mul(ctx.from_uint(e % p), ctx.from_uint(n));
        a[n] = ctx.mul(acc, ctx.inv(den)).v;
    }
    for (u64 k = 0; k < d; ++k) f.low[k] = a[d - k];

    // cross-check against every queried point; rejects non-perfect-power F
    for (const auto& [x, y] : nodes) {
        if (ctx.pow(eval(f, Felt{x}, ctx), e).v != y) throw NotAPerfectPower();
    }
    return f;
}

namespace detail {

// Lexicographic odometer over E^d, E = {0,...,e-1}.
inline bool next_tuple(std::vector<u64>& alpha, u64 e) {
    for (std::size_t i = alpha.size(); i-- > 0;) {
        if (++alpha[i] < e) return true;
        alpha[i] = 0;
    }
    return false;
}

}  // namespace detail

/// Randomized interpolation from the power oracle. Per round: sample a test
/// set T and query it, pick the first d non-root anchor points from x = 1, 2,
/// ..., take e-th roots of the anchor values, then scan candidate tuples
/// alpha in E^d; the first candidate matching the oracle on all of T wins.
inline InterpResult randomized_interpolate(PowerOracle& o, const InterpConfig& cfg) {
    const FieldCtx& ctx = o.ctx();
    const u64 p = ctx.p();
    const u64 e = ctx.e();
    const u64 d = cfg.d;
    if (p <= 2 * d) throw std::invalid_argument("randomized_interpolate: need p > 2d");
    {
        u128 space = 1;
        for (u64 i = 0; i < d; ++i) {
            space *= e;
            if (space > cfg.search_ceiling) throw SearchCeilingExceeded(e, d);
        }
    }

    Rng rng(cfg.seed);
    const SubgroupCtx sctx = subgroup_generator(ctx, rng);
    const u64 tsize = cfg.test_set_size(p);
    const u64 rounds = cfg.rounds();
    const u64 base_queries = o.query_count();

    InterpResult result;
    for (u64 round = 1; round <= rounds; ++round) {
        result.rounds_used = round;

        // (1) random test set, values cached for the verification scans
        std::vector<std::pair<u64, u64>> tvals(tsize);
        for (u64 i = 0; i < tsize; ++i) {
            u64 a = uniform_below(rng, p);
            tvals[i] = {a, o.query(a).v};
        }

        // (2) first d non-root anchors among x = 1, 2, ..., 2d+1
        std::vector<u64> anchors, bvals;
        for (u64 x = 1; x <= 2 * d + 1 && anchors.size() < d; ++x) {
            u64 b = o.query(x).v;
            if (b == 0) {
                ++result.skipped_roots;
                continue;
            }
            anchors.push_back(x);
            bvals.push_back(b);
        }
        if (anchors.size() < d) throw TooManyRoots();

        // (3) one e-th root per anchor
        std::vector<Felt> z(d);
        for (u64 j = 0; j < d; ++j) z[j] = amm_root(sctx, Felt{bvals[j]}, rng);

        // (4) candidate scan over E^d
        std::vector<u64> alpha(d, 0);
        std::vector<std::pair<u64, u64>> nodes(d);
        do {
            for (u64 j = 0; j < d; ++j) {
                nodes[j] = {anchors[j], ctx.mul(z[j], ctx.pow(sctx.zeta, alpha[j])).v};
            }
            MonicPoly cand = monic_interpolate(nodes, ctx);
            if (verify_candidate(cand, tvals, ctx)) {
                result.candidate = std::move(cand);
                result.verified = true;
                result.queries_used = o.query_count() - base_queries;
                return result;
            }
        } while (detail::next_tuple(alpha, e));
    }
    result.queries_used = o.query_count() - base_queries;
    throw SearchExhausted();
}

}  // namespace polypow

#endif
