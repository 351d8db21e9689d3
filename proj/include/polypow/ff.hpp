#ifndef POLYPOW_FF_HPP
#define POLYPOW_FF_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polypow {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// p must stay below 2^62 so a*b fits in u128 and sums never wrap.
inline constexpr u64 kMaxModulus = (u64(1) << 62) - 1;

struct NotPrime : std::invalid_argument {
    explicit NotPrime(u64 p)
        : std::invalid_argument("modulus " + std::to_string(p) + " is not prime") {}
};

struct ExponentDoesNotDivide : std::invalid_argument {
    ExponentDoesNotDivide(u64 e, u64 pm1)
        : std::invalid_argument("exponent " + std::to_string(e) + " does not divide " +
                                std::to_string(pm1)) {}
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("inverse of zero") {}
};

struct OutOfDomain : std::domain_error {
    explicit OutOfDomain(u64 x)
        : std::domain_error("value " + std::to_string(x) + " is not a residue") {}
};

inline u64 mulmod(u64 a, u64 b, u64 p) { return u64((u128(a) * b) % p); }

inline u64 powmod(u64 a, u64 n, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (n) {
        if (n & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        n >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; this witness set covers all n < 2^64.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// Residue in [0, p) of the owning FieldCtx.
struct Felt {
    u64 v = 0;
    friend bool operator==(Felt a, Felt b) { return a.v == b.v; }
    friend bool operator!=(Felt a, Felt b) { return a.v != b.v; }
};

/// Validated prime field F_p together with the power exponent e | p-1.
class FieldCtx {
public:
    FieldCtx(u64 p, u64 e) : p_(p), e_(e) {
        if (p > kMaxModulus || !is_prime_u64(p)) throw NotPrime(p);
        if (e == 0 || (p - 1) % e != 0) throw ExponentDoesNotDivide(e, p - 1);
    }

    u64 p() const { return p_; }
    u64 e() const { return e_; }

    Felt from_uint(u64 x) const { return Felt{x % p_}; }

    /// Strict conversion: rejects any x outside [0, p).
    Felt residue(u64 x) const {
        if (x >= p_) throw OutOfDomain(x);
        return Felt{x};
    }

    Felt zero() const { return Felt{0}; }
    Felt one() const { return Felt{1 % p_}; }

    Felt add(Felt a, Felt b) const {
        u64 s = a.v + b.v;
        if (s >= p_) s -= p_;
        return Felt{s};
    }
    Felt sub(Felt a, Felt b) const {
        return Felt{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    }
    Felt neg(Felt a) const { return Felt{a.v == 0 ? 0 : p_ - a.v}; }
    Felt mul(Felt a, Felt b) const { return Felt{mulmod(a.v, b.v, p_)}; }
    Felt pow(Felt a, u64 n) const { return Felt{powmod(a.v, n, p_)}; }

    Felt inv(Felt a) const {
        if (a.v == 0) throw DivisionByZero();
        // extended Euclid
        long long t = 0, nt = 1;
        long long r = (long long)p_, nr = (long long)a.v;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += (long long)p_;
        return Felt{(u64)t};
    }

    Felt div(Felt a, Felt b) const { return mul(a, inv(b)); }

    friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
        return a.p_ == b.p_ && a.e_ == b.e_;
    }

private:
    u64 p_;
    u64 e_;
};

inline FieldCtx validate_params(u64 p, u64 e) { return FieldCtx(p, e); }

}  // namespace polypow

#endif
