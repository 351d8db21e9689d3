#ifndef POLYPOW_GROUP_HPP
#define POLYPOW_GROUP_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polypow/ff.hpp"
#include "polypow/rng.hpp"

namespace polypow {

struct NotInSubgroup : std::domain_error {
    explicit NotInSubgroup(u64 t)
        : std::domain_error("element " + std::to_string(t) + " is outside the subgroup") {}
};

struct NotAnEthPower : std::domain_error {
    explicit NotAnEthPower(u64 b)
        : std::domain_error("element " + std::to_string(b) + " is not an e-th power") {}
};

struct ZeroInput : std::domain_error {
    ZeroInput() : std::domain_error("root extraction of zero") {}
};

inline constexpr u64 kMaxFactorInput = u64(1) << 40;

/// Complete prime factorization by trial division, smallest prime first.
inline std::vector<std::pair<u64, u32>> factorize(u64 e) {
    if (e == 0 || e > kMaxFactorInput)
        throw std::invalid_argument("factorize: argument out of range");
    std::vector<std::pair<u64, u32>> out;
    for (u64 r = 2; r * r <= e; r += (r == 2 ? 1 : 2)) {
        if (e % r == 0) {
            u32 m = 0;
            while (e % r == 0) { e /= r; ++m; }
            out.emplace_back(r, m);
        }
    }
    if (e > 1) out.emplace_back(e, 1);
    return out;
}

/// Baby-step giant-step discrete log: returns x in [0, n) with base^x = target,
/// where base has order n. O(sqrt(n)) multiplications and table space.
inline u64 bsgs_dlog(Felt base, u64 n, Felt target, const FieldCtx& ctx) {
    if (target.v == 0) throw NotInSubgroup(0);
    const u64 m = (u64)std::ceil(std::sqrt((double)n));
    std::unordered_map<u64, u64> baby;
    baby.reserve((std::size_t)m);
    Felt cur = ctx.one();
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(cur.v, j);  // keep smallest j
        cur = ctx.mul(cur, base);
    }
    const Felt giant = ctx.inv(cur);  // base^{-m}
    Felt gamma = target;
    for (u64 i = 0; i <= m; ++i) {
        auto it = baby.find(gamma.v);
        if (it != baby.end()) {
            u64 x = i * m + it->second;
            if (x < n && ctx.pow(base, x) == target) return x;
        }
        gamma = ctx.mul(gamma, giant);
    }
    throw NotInSubgroup(target.v);
}

/// The order-e subgroup G_e of F_p^*: factorization of e and a generator zeta.
struct SubgroupCtx {
    FieldCtx field;
    std::vector<std::pair<u64, u32>> factors;  // e = prod r^m
    Felt zeta;                                 // exact order e
};

/// Sample a generator of G_e: for each prime r | e find a non-r-th-power g_r,
/// then combine zeta = prod g_r^{(p-1)/r^{a_r}}. The result is checked to
/// have exact order e before returning.
inline SubgroupCtx subgroup_generator(const FieldCtx& ctx, Rng& rng) {
    const u64 p = ctx.p();
    const u64 e = ctx.e();
    auto factors = factorize(e);
    Felt zeta = ctx.one();
    for (const auto& [r, m] : factors) {
        Felt g;
        do {
            g = Felt{1 + uniform_below(rng, p - 1)};
        } while (ctx.pow(g, (p - 1) / r).v == 1);
        u64 rm = 1;
        for (u32 i = 0; i < m; ++i) rm *= r;
        zeta = ctx.mul(zeta, ctx.pow(g, (p - 1) / rm));
    }
    // exact-order check
    if (ctx.pow(zeta, e).v != 1) throw std::logic_error("subgroup generator: order check failed");
    for (const auto& [r, m] : factors) {
        (void)m;
        if (ctx.pow(zeta, e / r).v == 1)
            throw std::logic_error("subgroup generator: order check failed");
    }
    return SubgroupCtx{ctx, std::move(factors), zeta};
}

namespace detail {

// Discrete log in the cyclic group <g> of order r^s, digit by digit; each
// digit is a BSGS in the order-r subgroup generated by g^{r^{s-1}}.
inline u64 sylow_dlog(Felt g, u64 r, u32 s, Felt y, const FieldCtx& ctx) {
    u64 rs1 = 1;
    for (u32 i = 0; i + 1 < s; ++i) rs1 *= r;  // r^{s-1}
    const Felt gr = ctx.pow(g, rs1);           // order r
    const Felt ginv = ctx.inv(g);
    u64 log = 0;
    u64 rpow = 1;
    for (u32 i = 0; i < s; ++i) {
        Felt shifted = ctx.mul(y, ctx.pow(ginv, log));
        Felt digit_elt = ctx.pow(shifted, rs1 / rpow);
        u64 d = bsgs_dlog(gr, r, digit_elt, ctx);
        log += d * rpow;
        rpow *= r;
        if (i + 1 < s && rpow > rs1) break;
    }
    return log;
}

// One z with z^{r^a} = b, for b a known r^a-th power (r prime, r^a | p-1).
inline Felt prime_power_root(u64 r, u32 a, Felt b, const FieldCtx& ctx, Rng& rng) {
    const u64 p = ctx.p();
    u64 t = p - 1;
    u32 s = 0;
    while (t % r == 0) { t /= r; ++s; }
    u64 ra = 1;
    for (u32 i = 0; i < a; ++i) ra *= r;

    // generator of the Sylow r-subgroup, from a random r-th nonresidue
    Felt rho;
    do {
        rho = Felt{1 + uniform_below(rng, p - 1)};
    } while (ctx.pow(rho, (p - 1) / r).v == 1);
    const Felt g = ctx.pow(rho, t);  // order r^s

    // beta with r^a * beta = 1 mod t; z0 = b^beta is correct up to a Sylow factor
    u64 beta = 1, m_over_t;
    if (t > 1) {
        long long tt = 0, nt = 1, rr = (long long)t, nr = (long long)(ra % t);
        while (nr != 0) {
            long long q = rr / nr;
            long long tmp = tt - q * nt; tt = nt; nt = tmp;
            tmp = rr - q * nr; rr = nr; nr = tmp;
        }
        if (tt < 0) tt += (long long)t;
        beta = (u64)tt;
    }
    m_over_t = (u64)(((u128)ra * beta - 1) / t);  // m with r^a*beta = 1 + m*t

    const u64 L = sylow_dlog(g, r, s, ctx.pow(b, t), ctx);
    // b an r^a-th power forces r^a | L
    if (L % ra != 0) throw NotAnEthPower(b.v);
    u64 rsma = 1;
    for (u32 i = 0; i < s - a; ++i) rsma *= r;  // r^{s-a}
    const u64 k = (u64)((u128)rsma - (u128)(((u128)(L / ra) * (m_over_t % rsma)) % rsma)) % rsma;
    const Felt z = ctx.mul(ctx.pow(b, beta), ctx.pow(g, k));
    return z;
}

}  // namespace detail

/// Adleman-Manders-Miller e-th root: one z with z^e = b, b != 0 an e-th power.
/// Works prime factor by prime factor; the r^a-th roots are recombined with
/// exponent-CRT coefficients.
inline Felt amm_root(const SubgroupCtx& sctx, Felt b, Rng& rng) {
    const FieldCtx& ctx = sctx.field;
    const u64 p = ctx.p();
    const u64 e = ctx.e();
    if (b.v == 0) throw ZeroInput();
    if (ctx.pow(b, (p - 1) / e).v != 1) throw NotAnEthPower(b.v);
    if (e == 1) return b;

    // cofactors e_i = e / r_i^{a_i}; find c_i with sum c_i e_i = 1
    const auto& factors = sctx.factors;
    const std::size_t n = factors.size();
    std::vector<u64> cof(n), rpow(n);
    for (std::size_t i = 0; i < n; ++i) {
        u64 ra = 1;
        for (u32 k = 0; k < factors[i].second; ++k) ra *= factors[i].first;
        rpow[i] = ra;
        cof[i] = e / ra;
    }
    std::vector<i128> c(n, 0);
    i128 g = (i128)cof[0];
    c[0] = 1;
    const i128 mod = (i128)(p - 1);
    for (std::size_t i = 1; i < n; ++i) {
        // extended gcd(g, cof[i])
        i128 old_r = g, r = (i128)cof[i];
        i128 old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
            i128 q = old_r / r;
            i128 tmp = old_r - q * r; old_r = r; r = tmp;
            tmp = old_s - q * s; old_s = s; s = tmp;
            tmp = old_t - q * t; old_t = t; t = tmp;
        }
        for (std::size_t k = 0; k < i; ++k) c[k] = ((c[k] * old_s) % mod + mod) % mod;
        c[i] = ((old_t % mod) + mod) % mod;
        g = old_r;
    }

    Felt z = ctx.one();
    for (std::size_t i = 0; i < n; ++i) {
        Felt zi = detail::prime_power_root(factors[i].first, factors[i].second, b, ctx, rng);
        z = ctx.mul(z, ctx.pow(zi, (u64)c[i]));
    }
    if (ctx.pow(z, e) != b) throw std::logic_error("amm_root: verification failed");
    return z;
}

/// Lazy fan-out of all e candidates z * zeta^alpha, alpha = 0..e-1.
class RootFan {
public:
    RootFan(const SubgroupCtx& sctx, Felt z) : sctx_(&sctx), z_(z) {}

    class iterator {
    public:
        iterator(const SubgroupCtx* s, Felt cur, u64 idx) : s_(s), cur_(cur), idx_(idx) {}
        Felt operator*() const { return cur_; }
        iterator& operator++() {
            cur_ = s_->field.mul(cur_, s_->zeta);
            ++idx_;
            return *this;
        }
        friend bool operator!=(const iterator& a, const iterator& b) { return a.idx_ != b.idx_; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.idx_ == b.idx_; }

    private:
        const SubgroupCtx* s_;
        Felt cur_;
        u64 idx_;
    };

    iterator begin() const { return iterator(sctx_, z_, 0); }
    iterator end() const { return iterator(sctx_, z_, sctx_->field.e()); }

private:
    const SubgroupCtx* sctx_;
    Felt z_;
};

inline RootFan all_roots(const SubgroupCtx& sctx, Felt z) { return RootFan(sctx, z); }

}  // namespace polypow

#endif
