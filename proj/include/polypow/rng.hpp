#ifndef POLYPOW_RNG_HPP
#define POLYPOW_RNG_HPP

#include <random>

#include "polypow/ff.hpp"

namespace polypow {

using Rng = std::mt19937_64;

/// Uniform draw from [0, bound) by rejection; bit-reproducible across
/// platforms, unlike std::uniform_int_distribution.
inline u64 uniform_below(Rng& rng, u64 bound) {
    const u64 limit = bound * ((~u64(0)) / bound);
    for (;;) {
        u64 x = rng();
        if (x < limit) return x % bound;
    }
}

}  // namespace polypow

#endif
