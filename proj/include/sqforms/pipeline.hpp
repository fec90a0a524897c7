#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sqforms/arith.hpp"
#include "sqforms/congruence.hpp"
#include "sqforms/descent.hpp"
#include "sqforms/errors.hpp"
#include "sqforms/forms.hpp"

namespace sqforms {

// Four squares for a prime p, with the verifying trace. p = 2 is the
// immediate 1+1; odd p is seeded from solve_lagrange(-1, -1, p), which
// returns (u, v) with u^2 + v^2 + 1 = 0 (mod p), so (u, v, 1, 0) is a
// seed multiple with n < p/2.
inline std::pair<QuadRep, DescentTrace> decompose_prime(const Int& p) {
    if (!is_prime(p)) throw domain_error("decompose_prime: input must be prime");
    if (p == 2) {
        SeedMultiple seed = make_seed(TargetForm::four_squares(), p, {1, 1, 0, 0});
        return descend_four(seed);
    }
    auto [u, v] = solve_lagrange(-1, -1, p);
    SeedMultiple seed = make_seed(TargetForm::four_squares(), p, {u, v, 1, 0});
    return descend_four(seed);
}

struct FourSquaresResult {
    QuadRep rep;
    std::vector<DescentTrace> traces;  // one per distinct prime factor
};

// Any N >= 0 as a sum of four squares: factor N, decompose each prime by
// descent, and fold the prime representations together with the
// four-square composition (ascending primes, exponents left to right).
// The only failure mode is a work-budget overrun, never a wrong answer.
inline FourSquaresResult four_squares(const Int& N) {
    if (N < 0) throw domain_error("four_squares: N must be >= 0");
    FourSquaresResult out;
    if (N == 0) {
        out.rep = QuadRep{0, 0, 0, 0, 0};
        return out;
    }
    Quad acc{1, 0, 0, 0};
    for (const FactorPower& fp : factorize(N)) {
        auto [prep, trace] = decompose_prime(fp.prime);
        out.traces.push_back(std::move(trace));
        Quad prime_quad{prep.a, prep.b, prep.c, prep.d};
        for (unsigned e = 0; e < fp.exponent; ++e) acc = compose_four(acc, prime_quad);
    }
    out.rep = canonical_quad_rep(acc.a, acc.b, acc.c, acc.d);
    return out;
}

struct FormRepResult {
    FormRep rep;
    std::vector<DescentTrace> traces;  // one per representable prime factor
};

// N = x^2 + D*y^2 when such a representation exists. A prime p counts as
// representable iff the seed search succeeds, i.e. sqrt_mod(-D, p) exists
// (p = 2 under D = 3 is excluded: x^2 + 3y^2 is never an oddly even
// number). Representable primes are descended from the seed (s, 1) and
// folded in ascending order; a non-representable prime is admissible only
// with an even exponent, where p^(e/2) scales straight into the x slot.
// An odd exponent on a non-representable prime means no representation of
// N exists: every divisor of a representable number is itself
// representable, applied contrapositively to the coprime part.
inline std::optional<FormRepResult> represent_form(FormKind k, const Int& N) {
    if (N < 1) throw domain_error("represent_form: N must be >= 1");
    const int D = coefficient(k);
    FormRepResult out;
    FormPair acc{1, 0, k};
    for (const FactorPower& fp : factorize(N)) {
        std::optional<Int> s;
        if (!(k == FormKind::d3 && fp.prime == 2))
            s = sqrt_mod(Int(-D), fp.prime);
        if (!s) {
            if (fp.exponent % 2 != 0) return std::nullopt;
            FormPair square{fp.prime, 0, k};
            for (unsigned e = 0; e < fp.exponent / 2; ++e)
                acc = compose_form(k, acc, square);
            continue;
        }
        SeedMultiple seed = make_seed(TargetForm::binary(k), fp.prime, {*s, 1});
        auto [prep, trace] = descend_form(k, seed);
        out.traces.push_back(std::move(trace));
        FormPair prime_pair{prep.x, prep.y, k};
        for (unsigned e = 0; e < fp.exponent; ++e)
            acc = compose_form(k, acc, prime_pair);
    }
    out.rep = canonical_form_rep(k, acc.x, acc.y);
    return out;
}

} // namespace sqforms
