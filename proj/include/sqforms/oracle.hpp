#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "sqforms/arith.hpp"
#include "sqforms/errors.hpp"
#include "sqforms/forms.hpp"

// Brute-force enumerations, deliberately written in the most naive style
// (nested loops, no algebraic shortcuts) so they stay trustworthy as an
// independent check on the descent engines.

namespace sqforms {
namespace oracle {

namespace detail_oracle {

inline std::uint64_t to_bounded_u64(const Int& n, std::uint64_t bound, const char* who) {
    if (n < 0) throw domain_error(std::string(who) + ": input must be >= 0");
    if (n > bound) throw budget_error(std::string(who) + ": input beyond the work bound");
    return n.convert_to<std::uint64_t>();
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

} // namespace detail_oracle

// All pairs (x, y) with x, y >= 0 and x^2 + D*y^2 = N, lexicographic.
inline std::vector<std::pair<Int, Int>> enum_form_reps(FormKind k, const Int& N) {
    std::uint64_t n = detail_oracle::to_bounded_u64(N, 100'000'000, "enum_form_reps");
    const std::uint64_t D = static_cast<std::uint64_t>(coefficient(k));
    std::vector<std::pair<Int, Int>> out;
    for (std::uint64_t x = 0; x * x <= n; ++x) {
        for (std::uint64_t y = 0;; ++y) {
            std::uint64_t v = x * x + D * y * y;
            if (v > n) break;
            if (v == n) out.emplace_back(Int(x), Int(y));
        }
    }
    return out;
}

// All quadruples a >= b >= c >= d >= 0 with a^2+b^2+c^2+d^2 = N,
// listed in ascending lexicographic order.
inline std::vector<std::array<Int, 4>> enum_four_reps(const Int& N) {
    std::uint64_t n = detail_oracle::to_bounded_u64(N, 1'000'000, "enum_four_reps");
    std::vector<std::array<Int, 4>> out;
    for (std::uint64_t a = 0; a * a <= n; ++a) {
        for (std::uint64_t b = 0; b <= a; ++b) {
            std::uint64_t ab = a * a + b * b;
            if (ab > n) break;
            for (std::uint64_t c = 0; c <= b; ++c) {
                std::uint64_t abc = ab + c * c;
                if (abc > n) break;
                for (std::uint64_t d = 0; d <= c; ++d) {
                    std::uint64_t v = abc + d * d;
                    if (v > n) break;
                    if (v == n) out.push_back({Int(a), Int(b), Int(c), Int(d)});
                }
            }
        }
    }
    return out;
}

// All (x, y, z) in [1, (N-1)/2]^3 with lambda*x^2 + mu*y^2 + nu*z^2 = 0
// (mod N), for an odd prime N < 1000.
inline std::vector<std::array<Int, 3>> exhaustive_ternary(const Int& lambda, const Int& mu,
                                                          const Int& nu, const Int& N) {
    if (!is_prime(N) || N == 2)
        throw domain_error("exhaustive_ternary: modulus must be an odd prime");
    if (N >= 1000) throw budget_error("exhaustive_ternary: modulus beyond the work bound");
    const std::uint64_t n = N.convert_to<std::uint64_t>();
    auto reduce = [&](const Int& v) {
        Int r = v % n;
        if (r < 0) r += n;
        return r.convert_to<std::uint64_t>();
    };
    const std::uint64_t l = reduce(lambda), m = reduce(mu), u = reduce(nu);
    std::vector<std::array<Int, 3>> out;
    const std::uint64_t h = (n - 1) / 2;
    for (std::uint64_t x = 1; x <= h; ++x)
        for (std::uint64_t y = 1; y <= h; ++y)
            for (std::uint64_t z = 1; z <= h; ++z)
                if ((l * x * x + m * y * y + u * z * z) % n == 0)
                    out.push_back({Int(x), Int(y), Int(z)});
    return out;
}

// Bounded impossibility search for a^2 + b^2 + c^2 = 7 t^2, 1 <= t <= bound.
// This is the integral form of 1 = x^2+x + y^2+y + z^2+z over the rationals:
// multiplying by 4 turns the equation into (2x+1)^2 + (2y+1)^2 + (2z+1)^2 = 7,
// and clearing a common denominator t gives a^2 + b^2 + c^2 = 7 t^2. Any
// rational solution would land in this search, which is expected to come
// back empty.
inline std::vector<std::array<Int, 4>> rational_triangular_search(const Int& bound) {
    std::uint64_t tmax = detail_oracle::to_bounded_u64(bound, 10'000, "rational_triangular_search");
    std::vector<std::array<Int, 4>> out;
    for (std::uint64_t t = 1; t <= tmax; ++t) {
        const std::uint64_t target = 7 * t * t;
        for (std::uint64_t a = 0; a * a <= target; ++a) {
            for (std::uint64_t b = a; a * a + b * b <= target; ++b) {
                std::uint64_t rem = target - a * a - b * b;
                std::uint64_t c = detail_oracle::isqrt_u64(rem);
                if (c >= b && c * c == rem)
                    out.push_back({Int(a), Int(b), Int(c), Int(t)});
            }
        }
    }
    return out;
}

} // namespace oracle
} // namespace sqforms
