#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "sqforms/arith.hpp"
#include "sqforms/errors.hpp"

namespace sqforms {

// Quadratic residues ("first class") and non-residues ("second class")
// modulo an odd prime N. Both lists are sorted; together they partition
// [1, N-1] and each has (N-1)/2 elements.
struct SquareClasses {
    Int N;
    std::vector<Int> residues;
    std::vector<Int> nonresidues;
};

// A solution of lambda*x^2 + mu*y^2 + nu*z^2 = 0 (mod N), (x,y,z) != 0.
// coprime is true iff none of x, y, z is divisible by N.
struct TernarySolution {
    Int x;
    Int y;
    Int z;
    Int lambda;
    Int mu;
    Int nu;
    Int N;
    bool coprime = false;

    bool verifies() const {
        if (N < 1) return false;
        Int v = (lambda * x * x + mu * y * y + nu * z * z) % N;
        bool nonzero = x % N != 0 || y % N != 0 || z % N != 0;
        return v == 0 && nonzero;
    }
};

namespace detail {

// Residue tables materialize O(N) memory; cap well above desk scale.
constexpr std::uint64_t kTableLimit = std::uint64_t(1) << 22;

inline std::uint64_t table_modulus(const Int& N, const char* who) {
    if (!is_prime(N) || N == 2)
        throw domain_error(std::string(who) + ": modulus must be an odd prime");
    if (N > kTableLimit)
        throw budget_error(std::string(who) + ": modulus exceeds the residue-table budget");
    return N.convert_to<std::uint64_t>();
}

constexpr std::uint32_t kNoRoot = std::numeric_limits<std::uint32_t>::max();

// smallest_root[r] = least k in [0, (N-1)/2] with k^2 = r (mod N), or kNoRoot
inline std::vector<std::uint32_t> smallest_root_table(std::uint64_t N) {
    std::vector<std::uint32_t> tbl(N, kNoRoot);
    for (std::uint64_t k = 0; k <= (N - 1) / 2; ++k) {
        std::uint64_t r = mulmod_u64(k, k, N);
        if (tbl[r] == kNoRoot) tbl[r] = static_cast<std::uint32_t>(k);
    }
    return tbl;
}

inline std::uint64_t reduce_mod(const Int& v, std::uint64_t N) {
    Int r = v % N;
    if (r < 0) r += N;
    return r.convert_to<std::uint64_t>();
}

} // namespace detail

// Exact residue/non-residue partition of [1, N-1] for an odd prime N.
inline SquareClasses square_classes(const Int& N) {
    std::uint64_t n = detail::table_modulus(N, "square_classes");
    std::vector<bool> is_res(n, false);
    for (std::uint64_t k = 1; k <= (n - 1) / 2; ++k)
        is_res[detail::mulmod_u64(k, k, n)] = true;
    SquareClasses out;
    out.N = N;
    out.residues.reserve((n - 1) / 2);
    out.nonresidues.reserve((n - 1) / 2);
    for (std::uint64_t v = 1; v < n; ++v)
        (is_res[v] ? out.residues : out.nonresidues).push_back(Int(v));
    return out;
}

// Three squares, not all zero, with x^2 + y^2 + z^2 = 0 (mod N). Prefers a
// fully coprime triple; when none exists (N = 5) falls back to the z = 0
// pattern with x, y >= 1. Search is deterministic: smallest x, then y, and
// for each target the smaller square root.
inline TernarySolution find_three_squares(const Int& N) {
    std::uint64_t n = detail::table_modulus(N, "find_three_squares");
    auto tbl = detail::smallest_root_table(n);
    TernarySolution out;
    out.lambda = out.mu = out.nu = 1;
    out.N = N;
    const std::uint64_t h = (n - 1) / 2;
    for (std::uint64_t x = 1; x <= h; ++x) {
        std::uint64_t x2 = detail::mulmod_u64(x, x, n);
        for (std::uint64_t y = x; y <= h; ++y) {
            std::uint64_t t = (n - (x2 + detail::mulmod_u64(y, y, n)) % n) % n;
            std::uint32_t z = tbl[t];
            if (z != detail::kNoRoot && z != 0) {
                out.x = Int(x);
                out.y = Int(y);
                out.z = Int(z);
                out.coprime = true;
                return out;
            }
        }
    }
    for (std::uint64_t x = 1; x <= h; ++x) {
        std::uint64_t t = (n - detail::mulmod_u64(x, x, n)) % n;
        std::uint32_t y = tbl[t];
        if (y != detail::kNoRoot && y != 0) {
            out.x = Int(x);
            out.y = Int(y);
            out.z = 0;
            out.coprime = false;
            return out;
        }
    }
    // unreachable: x^2 + y^2 + 1 = 0 (mod N) is always solvable, and when
    // every solution has a zero entry the fallback above finds it
    throw no_solution_error("find_three_squares: no solution found");
}

// Smallest (p, q) with p^2 - B*q^2 - C = 0 (mod A), A an odd prime:
// q ascends from 0 and p is the smaller root of B*q^2 + C when that value
// is a square. The trivial pair (0, 0) is excluded. Solvability follows
// from the pigeonhole intersection of {p^2} and {B*q^2 + C}, each of size
// (A+1)/2, whenever B is prime to A.
inline std::pair<Int, Int> solve_lagrange(const Int& B, const Int& C, const Int& A) {
    std::uint64_t a = detail::table_modulus(A, "solve_lagrange");
    auto tbl = detail::smallest_root_table(a);
    std::uint64_t b = detail::reduce_mod(B, a);
    std::uint64_t c = detail::reduce_mod(C, a);
    for (std::uint64_t q = 0; q <= (a - 1) / 2; ++q) {
        std::uint64_t t = (detail::mulmod_u64(b, detail::mulmod_u64(q, q, a), a) + c) % a;
        std::uint32_t p = tbl[t];
        if (p == detail::kNoRoot) continue;
        if (p == 0 && q == 0) continue;
        return {Int(p), Int(q)};
    }
    // only reachable when B = 0 (mod A) and C is a non-residue
    throw no_solution_error("solve_lagrange: no nontrivial solution exists");
}

// Solve lambda*x^2 + mu*y^2 + nu*z^2 = 0 (mod N) for an odd prime N and
// coefficients prime to N. A fully coprime solution is searched first
// (smallest z, then y, then the smaller root for x). If none exists:
// with require_coprime the confirmed absence is reported as an error,
// otherwise z is fixed to 1 and {x^2} is pigeonholed against
// {-mu*y^2 - nu} with y from 0, which always intersects.
inline TernarySolution solve_ternary(const Int& lambda, const Int& mu, const Int& nu,
                                     const Int& N, bool require_coprime = false) {
    std::uint64_t n = detail::table_modulus(N, "solve_ternary");
    std::uint64_t lam = detail::reduce_mod(lambda, n);
    std::uint64_t m = detail::reduce_mod(mu, n);
    std::uint64_t u = detail::reduce_mod(nu, n);
    if (lam == 0 || m == 0 || u == 0)
        throw domain_error("solve_ternary: coefficients must be prime to the modulus");
    auto tbl = detail::smallest_root_table(n);
    std::uint64_t lam_inv = detail::powmod_u64(lam, n - 2, n);
    TernarySolution out;
    out.lambda = lambda;
    out.mu = mu;
    out.nu = nu;
    out.N = N;
    const std::uint64_t h = (n - 1) / 2;
    for (std::uint64_t z = 1; z <= h; ++z) {
        std::uint64_t uz = detail::mulmod_u64(u, detail::mulmod_u64(z, z, n), n);
        for (std::uint64_t y = 1; y <= h; ++y) {
            std::uint64_t s = (uz + detail::mulmod_u64(m, detail::mulmod_u64(y, y, n), n)) % n;
            std::uint64_t w = detail::mulmod_u64((n - s) % n, lam_inv, n);
            std::uint32_t x = tbl[w];
            if (x != detail::kNoRoot && x != 0) {
                out.x = Int(x);
                out.y = Int(y);
                out.z = Int(z);
                out.coprime = true;
                return out;
            }
        }
    }
    if (require_coprime)
        throw no_solution_error("solve_ternary: no fully coprime solution exists");
    for (std::uint64_t y = 0; y <= h; ++y) {
        std::uint64_t s = (u + detail::mulmod_u64(m, detail::mulmod_u64(y, y, n), n)) % n;
        std::uint64_t w = detail::mulmod_u64((n - s) % n, lam_inv, n);
        std::uint32_t x = tbl[w];
        if (x != detail::kNoRoot) {
            out.x = Int(x);
            out.y = Int(y);
            out.z = 1;
            out.coprime = x != 0 && y != 0;
            return out;
        }
    }
    throw no_solution_error("solve_ternary: pigeonhole search failed");  // unreachable
}

// Prescribe the third square: from a solution with z prime to N and any f
// prime to N, multiply through by v = f * z^{-1}; then (vx, vy, f) still
// solves the congruence and its third entry is exactly f.
inline TernarySolution rescale_solution(const TernarySolution& s, const Int& f) {
    if (!is_prime(s.N) || s.N == 2)
        throw domain_error("rescale_solution: modulus must be an odd prime");
    if (!s.verifies())
        throw domain_error("rescale_solution: input does not solve its congruence");
    Int zr = s.z % s.N;
    if (zr < 0) zr += s.N;
    if (zr == 0)
        throw domain_error("rescale_solution: not rescalable, z is divisible by the modulus");
    Int fr = f % s.N;
    if (fr < 0) fr += s.N;
    if (fr == 0)
        throw domain_error("rescale_solution: f must be prime to the modulus");
    Int v = (fr * mod_inverse(zr, s.N)) % s.N;
    TernarySolution out = s;
    out.x = (v * s.x) % s.N;
    if (out.x < 0) out.x += s.N;
    out.y = (v * s.y) % s.N;
    if (out.y < 0) out.y += s.N;
    out.z = fr;
    out.coprime = out.x != 0 && out.y != 0;
    return out;
}

// Scale the coefficients by lambda^{-1} so the first becomes 1. The
// solution sets mod N of the original and the normalized form coincide.
inline std::array<Int, 3> normalize_coefficients(const Int& lambda, const Int& mu,
                                                 const Int& nu, const Int& N) {
    if (!is_prime(N) || N == 2)
        throw domain_error("normalize_coefficients: modulus must be an odd prime");
    Int lam = lambda % N;
    if (lam < 0) lam += N;
    if (lam == 0)
        throw domain_error("normalize_coefficients: lambda must be prime to the modulus");
    Int theta = mod_inverse(lam, N);
    auto scale = [&](const Int& v) {
        Int r = (theta * (v % N)) % N;
        if (r < 0) r += N;
        return r;
    };
    return {Int(1), scale(mu), scale(nu)};
}

} // namespace sqforms
