#ifndef POLYPOW_POLY_HPP
#define POLYPOW_POLY_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polypow/ff.hpp"
#include "polypow/rng.hpp"

namespace polypow {

struct DuplicateNode : std::invalid_argument {
    explicit DuplicateNode(u64 a)
        : std::invalid_argument("duplicate interpolation node " + std::to_string(a)) {}
};

/// Monic dense polynomial X^d + c_{d-1} X^{d-1} + ... + c_0.
/// Only the d lower coefficients are stored; the leading 1 is implicit.
struct MonicPoly {
    std::vector<u64> low;  // c_0, ..., c_{d-1}

    std::size_t degree() const { return low.size(); }

    friend bool operator==(const MonicPoly& a, const MonicPoly& b) { return a.low == b.low; }
};

inline Felt eval(const MonicPoly& f, Felt x, const FieldCtx& ctx) {
    Felt acc = ctx.one();  // implicit leading coefficient
    for (std::size_t i = f.low.size(); i-- > 0;) {
        acc = ctx.add(ctx.mul(acc, x), Felt{f.low[i]});
    }
    return acc;
}

/// Dense Lagrange interpolation through n nodes; returns n coefficients
/// (low to high) of the unique polynomial of degree < n.
inline std::vector<u64> lagrange_interpolate(std::span<const std::pair<u64, u64>> nodes,
                                             const FieldCtx& ctx) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i].first == nodes[j].first) throw DuplicateNode(nodes[i].first);
    if (n == 0) return {};

    // master = prod (X - a_j), size n+1
    std::vector<u64> master(n + 1, 0);
    master[0] = 1 % ctx.p();
    std::size_t deg = 0;
    for (const auto& [a, y] : nodes) {
        (void)y;
        master[deg + 1] = master[deg];
        for (std::size_t k = deg; k-- > 0;) {
            master[k + 1] = ctx.sub(Felt{master[k]}, ctx.mul(Felt{master[k + 1]}, Felt{a})).v;
        }
        master[0] = ctx.mul(ctx.neg(Felt{a}), Felt{master[0]}).v;
        ++deg;
    }

    std::vector<u64> result(n, 0);
    std::vector<u64> q(n);  // master / (X - a_j), synthetic division
    for (const auto& [a, y] : nodes) {
        q[n - 1] = master[n];
        for (std::size_t k = n - 1; k-- > 0;) {
            q[k] = ctx.add(Felt{master[k + 1]}, ctx.mul(Felt{a}, Felt{q[k + 1]})).v;
        }
        // denominator = q(a) = prod_{j != i} (a_i - a_j)
        Felt denom = ctx.zero();
        for (std::size_t k = n; k-- > 0;) denom = ctx.add(ctx.mul(denom, Felt{a}), Felt{q[k]});
        Felt scale = ctx.mul(Felt{y}, ctx.inv(denom));
        for (std::size_t k = 0; k < n; ++k) {
            result[k] = ctx.add(Felt{result[k]}, ctx.mul(scale, Felt{q[k]})).v;
        }
    }
    return result;
}

/// The unique monic polynomial of degree exactly d = nodes.size() through
/// the given nodes: X^d plus the Lagrange fit of (a_j, y_j - a_j^d).
inline MonicPoly monic_interpolate(std::span<const std::pair<u64, u64>> nodes,
                                   const FieldCtx& ctx) {
    const std::size_t d = nodes.size();
    std::vector<std::pair<u64, u64>> shifted(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto [a, y] = nodes[j];
        shifted[j] = {a, ctx.sub(Felt{y}, ctx.pow(Felt{a}, d)).v};
    }
    return MonicPoly{lagrange_interpolate(shifted, ctx)};
}

inline MonicPoly random_monic(std::size_t d, const FieldCtx& ctx, Rng& rng) {
    MonicPoly f;
    f.low.reserve(d);
    for (std::size_t i = 0; i < d; ++i) f.low.push_back(uniform_below(rng, ctx.p()));
    return f;
}

}  // namespace polypow

#endif
