#ifndef POLYPOW_STATS_HPP
#define POLYPOW_STATS_HPP

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "polypow/ff.hpp"
#include "polypow/poly.hpp"

namespace polypow {

struct FieldTooLarge : std::invalid_argument {
    explicit FieldTooLarge(u64 p)
        : std::invalid_argument("p = " + std::to_string(p) + " exceeds the exhaustive-scan "
                                "limit 10^7") {}
};

struct BudgetTooLarge : std::invalid_argument {
    BudgetTooLarge() : std::invalid_argument("product-set enumeration budget exceeded") {}
};

inline constexpr u64 kScanLimit = 10'000'000;
inline constexpr u64 kProductBudget = 100'000'000;

namespace detail {

// Partition [0, n) across hardware threads; each worker folds its slice with
// `fn(begin, end) -> u64` and the partial sums are added up.
template <class Fn>
inline u64 parallel_count(u64 n, Fn fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (n < 1u << 14) workers = 1;
    std::vector<u64> partial(workers, 0);
    std::vector<std::thread> pool;
    const u64 chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const u64 lo = (u64)w * chunk;
        const u64 hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, w, lo, hi] { partial[w] = fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
    u64 total = 0;
    for (u64 v : partial) total += v;
    return total;
}

}  // namespace detail

/// Exhaustive count of x with f(x)^e = g(x)^e, against the q/e prediction.
struct CoincidenceReport {
    u64 p, e, d;
    u64 count;
    double predicted;  // p/e
    double deviation;  // |count - p/e| / (d sqrt(p))
};

inline CoincidenceReport coincidence_count(const MonicPoly& f, const MonicPoly& g,
                                           const FieldCtx& ctx) {
    const u64 p = ctx.p();
    if (p > kScanLimit) throw FieldTooLarge(p);
    const u64 e = ctx.e();
    const u64 count = detail::parallel_count(p, [&](u64 lo, u64 hi) {
        u64 c = 0;
        for (u64 x = lo; x < hi; ++x) {
            Felt fx = ctx.pow(eval(f, Felt{x}, ctx), e);
            Felt gx = ctx.pow(eval(g, Felt{x}, ctx), e);
            if (fx == gx) ++c;
        }
        return c;
    });
    const u64 d = std::max<u64>({f.degree(), g.degree(), 1});
    const double predicted = (double)p / (double)e;
    const double deviation =
        std::fabs((double)count - predicted) / ((double)d * std::sqrt((double)p));
    return CoincidenceReport{p, e, d, count, predicted, deviation};
}

inline double distinguishing_fraction(const MonicPoly& f, const MonicPoly& g,
                                      const FieldCtx& ctx) {
    const CoincidenceReport r = coincidence_count(f, g, ctx);
    return (double)(r.p - r.count) / (double)r.p;
}

/// Pointwise observable equivalence: f(x)^e = g(x)^e for every x in F_p.
inline bool equiv_bruteforce(const MonicPoly& f, const MonicPoly& g, const FieldCtx& ctx) {
    const u64 p = ctx.p();
    if (p > kScanLimit) throw FieldTooLarge(p);
    return coincidence_count(f, g, ctx).count == p;
}

/// Size of the nu-fold product set of A = { f(x)/g(x) : 1 <= x <= h, g(x) != 0 }.
struct ProductSetReport {
    u64 p, e;
    u64 h, nu;
    u64 set_size;      // #A
    u64 product_size;  // #A^(nu)
    bool in_subgroup;  // A contained in G_e
};

inline ProductSetReport product_set_size(const MonicPoly& f, const MonicPoly& g, u64 h, u64 nu,
                                         const FieldCtx& ctx) {
    const u64 p = ctx.p();
    const u64 e = ctx.e();
    if (h >= p || nu < 1 || nu > 3) throw std::invalid_argument("need h < p and nu in {1,2,3}");
    {
        u128 work = 1;
        for (u64 i = 0; i < nu; ++i) work *= h;
        if (work > kProductBudget) throw BudgetTooLarge();
    }
    std::unordered_set<u64> A;
    bool in_subgroup = true;
    for (u64 x = 1; x <= h; ++x) {
        Felt gx = eval(g, Felt{x}, ctx);
        if (gx.v == 0) continue;
        Felt ratio = ctx.div(eval(f, Felt{x}, ctx), gx);
        if (ctx.pow(ratio, e).v != 1) in_subgroup = false;
        A.insert(ratio.v);
    }
    std::unordered_set<u64> prod(A.begin(), A.end());
    for (u64 step = 1; step < nu; ++step) {
        std::unordered_set<u64> next;
        next.reserve(prod.size());
        for (u64 a : A)
            for (u64 q : prod) next.insert(mulmod(a, q, p));
        prod = std::move(next);
    }
    return ProductSetReport{p, e, h, nu, A.size(), prod.size(), in_subgroup};
}

// --- serialization -----------------------------------------------------------

inline nlohmann::ordered_json to_json(const CoincidenceReport& r) {
    return {{"kind", "coincidence"}, {"p", r.p},         {"e", r.e},
            {"d", r.d},              {"count", r.count}, {"predicted", r.predicted},
            {"deviation", r.deviation}};
}

inline nlohmann::ordered_json to_json(const ProductSetReport& r) {
    return {{"kind", "product_set"},     {"p", r.p},
            {"e", r.e},                  {"h", r.h},
            {"nu", r.nu},                {"set_size", r.set_size},
            {"product_size", r.product_size}, {"in_subgroup", r.in_subgroup}};
}

enum class ReportFormat { Json, Csv };

template <class Report>
inline std::string emit_report(const Report& r, ReportFormat fmt) {
    nlohmann::ordered_json j = to_json(r);
    if (fmt == ReportFormat::Json) return j.dump();
    std::ostringstream header, row;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) { header << ","; row << ","; }
        first = false;
        header << it.key();
        if (it.value().is_string())
            row << it.value().get<std::string>();
        else
            row << it.value().dump();
    }
    return header.str() + "\n" + row.str();
}

}  // namespace polypow

#endif
