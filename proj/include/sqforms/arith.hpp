#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sqforms/errors.hpp"

namespace sqforms {

// Every quantity in this library is an exact arbitrary-precision integer.
using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Number of bits in |n|; bit_length(0) == 0.
inline std::size_t bit_length(const Int& n) {
    if (n == 0) return 0;
    return static_cast<std::size_t>(boost::multiprecision::msb(abs_int(n))) + 1;
}

inline bool fits_u64(const Int& n) {
    return n >= 0 && n <= Int(UINT64_MAX);
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = m == 1 ? 0 : 1;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// Remainder of x mod m chosen in (-m/2, m/2]; the tie at exactly m/2 is
// resolved to +m/2 so traces are reproducible bit for bit.
inline Int centered_rem(const Int& x, const Int& m) {
    if (m < 1) throw domain_error("centered_rem: modulus must be >= 1");
    Int r = x % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

// gcd(0, 0) == 0; result is always nonnegative.
inline Int gcd(const Int& x, const Int& y) {
    return boost::multiprecision::gcd(abs_int(x), abs_int(y));
}

// b^e mod m, in [0, m). Requires e >= 0 and m >= 1.
inline Int mod_pow(const Int& b, const Int& e, const Int& m) {
    if (m < 1) throw domain_error("mod_pow: modulus must be >= 1");
    if (e < 0) throw domain_error("mod_pow: exponent must be >= 0");
    Int base = b % m;
    if (base < 0) base += m;
    if (fits_u64(m) && fits_u64(e)) {
        return Int(detail::powmod_u64(base.convert_to<std::uint64_t>(),
                                      e.convert_to<std::uint64_t>(),
                                      m.convert_to<std::uint64_t>()));
    }
    return boost::multiprecision::powm(base, e, m);
}

// Multiplicative inverse of a mod m, in [0, m). Requires gcd(a, m) == 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    if (m < 1) throw domain_error("mod_inverse: modulus must be >= 1");
    Int r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    Int t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw domain_error("mod_inverse: value is not invertible");
    if (t0 < 0) t0 += m;
    return t0;
}

namespace detail {

inline const Int& miller_rabin_exact_bound() {
    // First composite that fools the 12 bases below (Sorenson & Webster).
    static const Int bound("3317044064679887385961981");
    return bound;
}

constexpr std::uint64_t kMillerRabinBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline bool miller_rabin_u64(std::uint64_t n) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : kMillerRabinBases) {
        if (a % n == 0) continue;
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline bool miller_rabin_big(const Int& n) {
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : kMillerRabinBases) {
        Int base(a);
        if (base % n == 0) continue;
        Int x = mod_pow(base, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

} // namespace detail

// Deterministic primality test, exact for all n < 3.317e24 (which covers
// every 64-bit input). Larger n exceed the proven witness range and are
// rejected with a budget error instead of risking a wrong answer.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (std::uint64_t p : detail::kMillerRabinBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n >= detail::miller_rabin_exact_bound())
        throw budget_error("is_prime: input beyond the deterministic witness range");
    if (fits_u64(n)) return detail::miller_rabin_u64(n.convert_to<std::uint64_t>());
    return detail::miller_rabin_big(n);
}

struct FactorPower {
    Int prime;
    unsigned exponent = 0;
    friend bool operator==(const FactorPower&, const FactorPower&) = default;
};

// Complete factorization; primes strictly increasing, empty iff n == 1.
using Factorization = std::vector<FactorPower>;

struct FactorBudget {
    std::uint64_t trial_limit = 10'000;        // trial-divide below this bound
    std::uint64_t rho_iterations = 4'000'000;  // total Brent iterations allowed
};

namespace detail {

// Brent's variant of Pollard rho with a fixed, deterministic parameter
// sequence. Returns a nontrivial factor or 0 when the budget runs out.
inline std::uint64_t pollard_brent_u64(std::uint64_t n, std::uint64_t& iterations_left) {
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, ys = 0, q = 1, g = 1, r = 1;
        const std::uint64_t block = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(block, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    if (iterations_left == 0) return 0;
                    --iterations_left;
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                if (iterations_left == 0) return 0;
                --iterations_left;
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle collapsed for this c; retry with the next increment
    }
}

inline Int pollard_brent_big(const Int& n, std::uint64_t& iterations_left) {
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, ys = 0, q = 1, g = 1;
        std::uint64_t r = 1;
        const std::uint64_t block = 128;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(block, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    if (iterations_left == 0) return 0;
                    --iterations_left;
                    y = (y * y + c) % n;
                    q = (q * abs_int(x - y)) % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                if (iterations_left == 0) return 0;
                --iterations_left;
                ys = (ys * ys + c) % n;
                g = gcd(abs_int(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

} // namespace detail

// Trial division with a Pollard-rho extension. The desk-scale target is
// n <= 10^12; anything the budget cannot crack raises budget_error rather
// than stalling.
inline Factorization factorize(const Int& n, const FactorBudget& budget = {}) {
    if (n < 1) throw domain_error("factorize: input must be >= 1");
    std::vector<Int> primes;  // with multiplicity
    std::vector<Int> pending{n};
    std::uint64_t iterations_left = budget.rho_iterations;
    while (!pending.empty()) {
        Int m = pending.back();
        pending.pop_back();
        if (m == 1) continue;
        if (fits_u64(m)) {
            std::uint64_t v = m.convert_to<std::uint64_t>();
            for (std::uint64_t p = 2; p <= budget.trial_limit && p <= v / p; p += (p == 2 ? 1 : 2)) {
                while (v % p == 0) { primes.push_back(Int(p)); v /= p; }
            }
            if (v == 1) continue;
            if (v / budget.trial_limit < budget.trial_limit || detail::miller_rabin_u64(v)) {
                primes.push_back(Int(v));  // below trial_limit^2 or passed the test
                continue;
            }
            std::uint64_t f = detail::pollard_brent_u64(v, iterations_left);
            if (f == 0) throw budget_error("factorize: work budget exhausted");
            pending.push_back(Int(f));
            pending.push_back(Int(v / f));
        } else {
            bool reduced = false;
            for (std::uint64_t p = 2; p <= budget.trial_limit; p += (p == 2 ? 1 : 2)) {
                if (m % p == 0) {
                    primes.push_back(Int(p));
                    pending.push_back(m / p);
                    reduced = true;
                    break;
                }
            }
            if (reduced) continue;
            if (is_prime(m)) {
                primes.push_back(m);
                continue;
            }
            Int f = detail::pollard_brent_big(m, iterations_left);
            if (f == 0) throw budget_error("factorize: work budget exhausted");
            pending.push_back(f);
            pending.push_back(m / f);
        }
    }
    std::sort(primes.begin(), primes.end());
    Factorization out;
    for (std::size_t i = 0; i < primes.size();) {
        std::size_t j = i;
        while (j < primes.size() && primes[j] == primes[i]) ++j;
        out.push_back({primes[i], static_cast<unsigned>(j - i)});
        i = j;
    }
    return out;
}

// Square root of a modulo a prime p: the smaller root s in [0, p) with
// s^2 = a (mod p), or nothing when a is a non-residue. Strategy: the
// a^((p-1)/2) residue test, then the a^((p+1)/4) shortcut for p = 3 (mod 4), else
// exhaustive search for p < 2^20. Larger p = 1 (mod 4) are outside desk
// scope and raise budget_error.
inline std::optional<Int> sqrt_mod(const Int& a, const Int& p) {
    if (!is_prime(p)) throw domain_error("sqrt_mod: modulus must be prime");
    Int a0 = a % p;
    if (a0 < 0) a0 += p;
    if (p == 2) return a0;
    if (a0 == 0) return Int(0);
    if (mod_pow(a0, (p - 1) / 2, p) != 1) return std::nullopt;
    Int s;
    if (p % 4 == 3) {
        s = mod_pow(a0, (p + 1) / 4, p);
    } else if (p < (Int(1) << 20)) {
        std::uint64_t pp = p.convert_to<std::uint64_t>();
        std::uint64_t target = a0.convert_to<std::uint64_t>();
        std::uint64_t root = 0;
        for (std::uint64_t k = 1; k <= pp / 2; ++k) {
            if (k * k % pp == target) { root = k; break; }
        }
        s = root;
    } else {
        throw budget_error("sqrt_mod: p = 1 (mod 4) beyond the exhaustive-search budget");
    }
    Int other = p - s;
    return s <= other ? s : other;
}

} // namespace sqforms
