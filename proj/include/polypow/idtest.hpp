#ifndef POLYPOW_IDTEST_HPP
#define POLYPOW_IDTEST_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "polypow/ff.hpp"
#include "polypow/oracle.hpp"
#include "polypow/poly.hpp"
#include "polypow/rng.hpp"

namespace polypow {

struct BudgetExceedsField : std::invalid_argument {
    BudgetExceedsField(u64 h, u64 p)
        : std::invalid_argument("budget h=" + std::to_string(h) + " must be < p=" +
                                std::to_string(p)) {}
};

struct DegenerateBudget : std::invalid_argument {
    DegenerateBudget() : std::invalid_argument("budget exponent nu collapsed to 0") {}
};

struct TestVerdict {
    enum class Outcome { Different, Undistinguished, EqualWithConfidence };
    Outcome outcome;
    u64 witness = 0;  // valid iff Different
    u64 trials = 0;   // valid iff EqualWithConfidence
};

/// Exact floor(e^{1/nu}) by binary search, avoiding float rounding at
/// perfect powers.
inline u64 integer_kth_root(u64 e, u64 nu) {
    if (nu == 1) return e;
    u64 lo = 1, hi = 2;
    auto pow_le = [&](u64 x) {  // x^nu <= e without overflow
        u128 acc = 1;
        for (u64 i = 0; i < nu; ++i) {
            acc *= x;
            if (acc > e) return false;
        }
        return true;
    };
    while (pow_le(hi)) { lo = hi; hi *= 2; }
    while (lo + 1 < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (pow_le(mid)) lo = mid; else hi = mid;
    }
    return lo;
}

/// Deterministic prefix budget for the small-e regime:
///   nu = floor((c_d / (2 delta))^(2d-1)),   h = floor(e^{1/nu}) + 1.
struct SmallEBudget {
    u64 nu;
    u64 h;
    double delta;
    double c_d;
};

inline SmallEBudget small_e_budget(u64 e, u64 d, double delta, double c_d) {
    if (delta <= 0 || c_d <= 0 || e < 2 || d < 1)
        throw std::invalid_argument("small_e_budget: need delta > 0, c_d > 0, e >= 2, d >= 1");
    const long double base = (long double)c_d / (2.0L * (long double)delta);
    const long double raw = std::pow(base, (long double)(2 * d - 1));
    const u64 nu = (u64)std::floor(raw * (1.0L + 1e-12L));
    if (nu == 0) throw DegenerateBudget();
    const u64 h = integer_kth_root(e, nu) + 1;
    return SmallEBudget{nu, h, delta, c_d};
}

/// Medium-e regime: the subgroup-escape exponents and the query budget
///   h = ceil(e^{(1+eps)/(2-2 tau)}),  tau = 1/(4d),
/// with the applicability window e <= p^{eta/(1+eps)}.
struct MediumEBudget {
    u64 h;
    double eta, kappa, tau, rho, vartheta;
    double epsilon;

    u64 e_;  // echo of the input, used by the applicability check

    bool applicable_for(u64 p) const {
        return std::log((double)e_) * (1.0 + epsilon) <= eta * std::log((double)p) + 1e-12;
    }
};

inline MediumEBudget medium_e_budget(u64 e, u64 d, double epsilon) {
    if (epsilon <= 0 || d < 1 || e < 2)
        throw std::invalid_argument("medium_e_budget: need epsilon > 0, d >= 1, e >= 2");
    MediumEBudget b;
    const double dd = (double)d;
    b.tau = 1.0 / (4.0 * dd);
    b.rho = (dd + 1.0) * (dd + 1.0) / (2.0 * (dd + 2.0));
    b.vartheta = 1.0 / (2.0 * dd * (dd + 2.0));
    b.eta = (4.0 * dd - 1.0) / (4.0 * dd * dd * (dd + 1.0) * (dd + 1.0));
    b.kappa = 2.0 * dd / (4.0 * dd - 1.0);
    b.epsilon = epsilon;
    b.e_ = e;
    const long double expo = (1.0L + (long double)epsilon) / (2.0L - 2.0L * (long double)b.tau);
    const long double raw = std::pow((long double)e, expo);
    // tolerate float error just above an exact power before taking ceil
    b.h = (u64)std::ceil(raw * (1.0L - 1e-12L));
    return b;
}

/// Deterministic identity test: query both oracles at x = 1, ..., h and stop
/// at the first mismatch. Exactly min(h, first mismatch) queries per oracle.
inline TestVerdict prefix_test(PowerOracle& of, PowerOracle& og, u64 h) {
    const u64 p = of.ctx().p();
    if (h >= p) throw BudgetExceedsField(h, p);
    for (u64 x = 1; x <= h; ++x) {
        if (of.query(x) != og.query(x))
            return TestVerdict{TestVerdict::Outcome::Different, x, 0};
    }
    return TestVerdict{TestVerdict::Outcome::Undistinguished, 0, 0};
}

/// Prefix test against a known g, evaluated locally (single-oracle variant).
inline TestVerdict known_g_test(PowerOracle& of, const MonicPoly& g, u64 h) {
    const FieldCtx& ctx = of.ctx();
    if (h >= ctx.p()) throw BudgetExceedsField(h, ctx.p());
    for (u64 x = 1; x <= h; ++x) {
        Felt gx = ctx.pow(eval(g, Felt{x}, ctx), ctx.e());
        if (of.query(x) != gx) return TestVerdict{TestVerdict::Outcome::Different, x, 0};
    }
    return TestVerdict{TestVerdict::Outcome::Undistinguished, 0, 0};
}

/// Randomized identity test: uniform sample points until mismatch or the
/// trial budget is spent. Per-trial miss probability <= de/p for
/// non-equivalent pairs.
inline TestVerdict randomized_test(PowerOracle& of, PowerOracle& og, u64 trials, Rng& rng) {
    if (trials == 0) throw std::invalid_argument("randomized_test: trials must be >= 1");
    const u64 p = of.ctx().p();
    for (u64 t = 0; t < trials; ++t) {
        u64 x = uniform_below(rng, p);
        if (of.query(x) != og.query(x))
            return TestVerdict{TestVerdict::Outcome::Different, x, 0};
    }
    return TestVerdict{TestVerdict::Outcome::EqualWithConfidence, 0, trials};
}

}  // namespace polypow

#endif
