#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sqforms/arith.hpp"

namespace testutil {

// uniform random integer in [-2^bits, 2^bits], sign included
inline sqforms::Int random_int(std::mt19937_64& rng, unsigned bits) {
    sqforms::Int v = 0;
    unsigned filled = 0;
    while (filled < bits) {
        v <<= 64;
        v += rng();
        filled += 64;
    }
    v >>= (filled - bits);
    return (rng() & 1) ? sqforms::Int(-v) : v;
}

inline std::vector<std::uint64_t> primes_below(std::uint64_t limit) {
    std::vector<bool> composite(limit, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p < limit; ++p) {
        if (composite[p]) continue;
        out.push_back(p);
        for (std::uint64_t q = p * p; q < limit; q += p) composite[q] = true;
    }
    return out;
}

} // namespace testutil
