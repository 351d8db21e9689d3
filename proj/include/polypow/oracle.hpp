#ifndef POLYPOW_ORACLE_HPP
#define POLYPOW_ORACLE_HPP

#include <atomic>
#include <cstdint>

#include "polypow/ff.hpp"
#include "polypow/poly.hpp"

namespace polypow {

/// Black-box access to x -> f(x)^e for a hidden f. The counter tallies
/// transport-level queries; callers cache values they reuse.
class PowerOracle {
public:
    explicit PowerOracle(const FieldCtx& ctx) : ctx_(ctx) {}
    virtual ~PowerOracle() = default;

    PowerOracle(const PowerOracle&) = delete;
    PowerOracle& operator=(const PowerOracle&) = delete;

    const FieldCtx& ctx() const { return ctx_; }

    /// Rejects any x outside [0, p): no extension-field encodings.
    Felt query(u64 x) {
        Felt r = do_query(ctx_.residue(x));
        count_.fetch_add(1, std::memory_order_relaxed);
        return r;
    }
    Felt query(Felt x) { return query(x.v); }

    u64 query_count() const { return count_.load(std::memory_order_relaxed); }

protected:
    virtual Felt do_query(Felt x) = 0;

private:
    FieldCtx ctx_;
    std::atomic<u64> count_{0};
};

/// In-process oracle wrapping a hidden polynomial.
class LocalOracle final : public PowerOracle {
public:
    LocalOracle(MonicPoly hidden, const FieldCtx& ctx)
        : PowerOracle(ctx), hidden_(std::move(hidden)) {}

protected:
    Felt do_query(Felt x) override { return ctx().pow(eval(hidden_, x, ctx()), ctx().e()); }

private:
    MonicPoly hidden_;
};

}  // namespace polypow

#endif
