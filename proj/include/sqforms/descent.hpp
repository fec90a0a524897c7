#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqforms/arith.hpp"
#include "sqforms/errors.hpp"
#include "sqforms/forms.hpp"

namespace sqforms {

// The weighted sum of squares a descent works in: one of the binary forms
// x^2 + D*y^2 (tags 1, 2, 3) or the sum of four squares (tag 4).
class TargetForm {
public:
    TargetForm() = default;
    static TargetForm binary(FormKind k) { return TargetForm(coefficient(k)); }
    static TargetForm four_squares() { return TargetForm(4); }
    static TargetForm from_tag(int t) {
        if (t < 1 || t > 4) throw domain_error("descent form tag must be 1, 2, 3 or 4");
        return TargetForm(t);
    }

    bool is_four() const { return tag_ == 4; }
    FormKind kind() const {
        if (is_four()) throw domain_error("four-square target has no binary form kind");
        return form_kind(tag_);
    }
    std::size_t arity() const { return is_four() ? 4 : 2; }
    int tag() const { return tag_; }
    friend bool operator==(const TargetForm&, const TargetForm&) = default;

private:
    explicit TargetForm(int t) : tag_(t) {}
    int tag_ = 4;
};

inline Int weighted_norm(TargetForm form, const std::vector<Int>& roots) {
    if (roots.size() != form.arity())
        throw domain_error("weighted_norm: wrong number of roots");
    if (form.is_four())
        return roots[0] * roots[0] + roots[1] * roots[1] +
               roots[2] * roots[2] + roots[3] * roots[3];
    return roots[0] * roots[0] + coefficient(form.kind()) * roots[1] * roots[1];
}

// An initial relation  weighted-norm(roots) = N * n  from which descent
// starts. Seeds come from the congruence solvers or from user input.
struct SeedMultiple {
    Int N;                   // target divisor
    std::vector<Int> roots;  // 2 entries for binary forms, 4 for four squares
    TargetForm form;
    Int n;                   // quotient
};

inline SeedMultiple make_seed(TargetForm form, Int N, std::vector<Int> roots) {
    if (N < 1) throw seed_error("seed: N must be >= 1");
    if (roots.size() != form.arity()) throw seed_error("seed: wrong number of roots");
    Int norm = weighted_norm(form, roots);
    if (norm % N != 0) throw seed_error("seed: N does not divide the weighted norm of the roots");
    SeedMultiple s;
    s.N = std::move(N);
    s.roots = std::move(roots);
    s.form = form;
    s.n = norm / s.N;
    if (s.n < 1) throw seed_error("seed: quotient must be >= 1");
    return s;
}

enum class StepKind { standard, halve, quarter, gcd_reduce };

inline const char* to_string(StepKind k) {
    switch (k) {
        case StepKind::standard: return "standard";
        case StepKind::halve: return "halve";
        case StepKind::quarter: return "quarter";
        case StepKind::gcd_reduce: return "gcd_reduce";
    }
    return "?";
}

// One descent move from N*n down to N*n_next. For standard steps the
// fields record the full identity instance:
//   residues[i]  = centered_rem(roots_in[i], n)
//   roots_in[i]  = residues[i] + n * quotients[i]
//   n * n_next   = weighted norm of the residues
//   composed     = composition of residues with quotients
//   roots_out    = (n_next + composed[0], composed[1], ...)
// halve records the parity pairing in `residues`, quarter records the
// (4m+1)-normalized roots in `residues` and (r, s) in `quotients`, and
// gcd_reduce records the common factor as the single `quotients` entry.
struct DescentStep {
    StepKind kind = StepKind::standard;
    Int n;
    std::vector<Int> roots_in;
    std::vector<Int> residues;
    std::vector<Int> quotients;
    std::vector<Int> composed;
    Int n_next;
    std::vector<Int> roots_out;
};

// Complete, independently checkable record of one descent run.
struct DescentTrace {
    TargetForm form;
    Int N;
    SeedMultiple seed;
    std::vector<DescentStep> steps;
    std::vector<Int> result;  // canonical roots, weighted norm exactly N
};

inline std::vector<Int> canonical_roots(TargetForm form, const std::vector<Int>& roots) {
    if (form.is_four()) {
        QuadRep r = canonical_quad_rep(roots[0], roots[1], roots[2], roots[3]);
        return {r.a, r.b, r.c, r.d};
    }
    FormRep r = canonical_form_rep(form.kind(), roots[0], roots[1]);
    return {r.x, r.y};
}

namespace detail {

inline bool is_odd(const Int& v) { return v % 2 != 0; }

inline std::vector<Int> compose_step(TargetForm form, const std::vector<Int>& residues,
                                     const std::vector<Int>& quotients) {
    if (form.is_four()) {
        Quad c = compose_four({residues[0], residues[1], residues[2], residues[3]},
                              {quotients[0], quotients[1], quotients[2], quotients[3]});
        return {c.a, c.b, c.c, c.d};
    }
    FormKind k = form.kind();
    FormPair c = compose_form(k, {residues[0], residues[1], k},
                              {quotients[0], quotients[1], k});
    return {c.x, c.y};
}

inline DescentStep standard_step(TargetForm form, const Int& n, const std::vector<Int>& roots) {
    DescentStep st;
    st.kind = StepKind::standard;
    st.n = n;
    st.roots_in = roots;
    const std::size_t k = roots.size();
    st.residues.resize(k);
    st.quotients.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        st.residues[i] = centered_rem(roots[i], n);
        st.quotients[i] = (roots[i] - st.residues[i]) / n;
    }
    Int wn = weighted_norm(form, st.residues);
    // residues = roots (mod n), so n divides their weighted norm
    st.n_next = wn / n;
    st.composed = compose_step(form, st.residues, st.quotients);
    st.roots_out.resize(k);
    st.roots_out[0] = st.n_next + st.composed[0];
    for (std::size_t i = 1; i < k; ++i) st.roots_out[i] = st.composed[i];
    return st;
}

inline DescentStep halve_step(const Int& n, const std::vector<Int>& roots) {
    DescentStep st;
    st.kind = StepKind::halve;
    st.n = n;
    st.roots_in = roots;
    std::array<Int, 4> paired;
    if (!parity_partition({roots[0], roots[1], roots[2], roots[3]}, paired))
        throw descent_error("halve step on an odd norm");  // norm = N*n is even here
    st.residues.assign(paired.begin(), paired.end());
    Quad h = halve_four({roots[0], roots[1], roots[2], roots[3]});
    st.roots_out = {h.a, h.b, h.c, h.d};
    st.n_next = n / 2;
    return st;
}

inline DescentStep quarter_step(const Int& n, const std::vector<Int>& roots) {
    DescentStep st;
    st.kind = StepKind::quarter;
    st.n = n;
    st.roots_in = roots;
    auto rep_4m1 = [](const Int& v) {
        Int m = v % 4;
        if (m < 0) m += 4;
        return m == 1 ? v : Int(-v);
    };
    Int pr = rep_4m1(roots[0]), qr = rep_4m1(roots[1]);
    st.residues = {pr, qr};
    st.quotients = {(pr - 1) / 4, (qr - 1) / 4};
    FormPair f = quarter_form3(roots[0], roots[1]);
    st.roots_out = {f.x, f.y};
    st.n_next = n / 4;
    return st;
}

inline DescentStep gcd_reduce_step(const Int& n, const std::vector<Int>& roots, const Int& g) {
    DescentStep st;
    st.kind = StepKind::gcd_reduce;
    st.n = n;
    st.roots_in = roots;
    st.quotients = {g};
    st.roots_out.reserve(roots.size());
    for (const Int& r : roots) st.roots_out.push_back(r / g);
    st.n_next = n / (g * g);
    return st;
}

inline Int gcd_of(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

inline DescentTrace run_descent(TargetForm form, const SeedMultiple& seed, bool best_effort) {
    if (seed.form != form) throw seed_error("seed built for a different form");
    if (seed.N < 1 || seed.n < 1 || seed.roots.size() != form.arity() ||
        weighted_norm(form, seed.roots) != seed.N * seed.n)
        throw seed_error("seed does not satisfy its norm invariant");
    if (!best_effort) {
        if (!is_prime(seed.N))
            throw domain_error("descent requires a prime modulus (best-effort mode accepts composites)");
        if (!form.is_four() && form.kind() == FormKind::d3 && seed.N == 2)
            throw domain_error("descent for x^2 + 3y^2 requires an odd prime");
    }
    Int root_gcd = gcd_of(seed.roots);
    if (form.is_four()) {
        if (root_gcd % seed.N == 0 && root_gcd != 0)
            throw seed_error("all roots are divisible by N");
    } else if (gcd(root_gcd, seed.N) != 1) {
        throw seed_error("the roots share a factor with N");
    }

    DescentTrace trace;
    trace.form = form;
    trace.N = seed.N;
    trace.seed = seed;

    const bool d3 = !form.is_four() && form.kind() == FormKind::d3;
    const std::size_t cap = 4 * std::max<std::size_t>(bit_length(seed.n), 1);
    Int n = seed.n;
    std::vector<Int> roots = seed.roots;
    while (n != 1) {
        if (best_effort && trace.steps.size() >= cap)
            throw descent_error("descent did not converge within the iteration cap");
        DescentStep st;
        Int g = gcd_of(roots);
        if ((form.is_four() || d3) && g > 1 && n % (g * g) == 0) {
            st = gcd_reduce_step(n, roots, g);
        } else if (form.is_four() && n % 2 == 0) {
            st = halve_step(n, roots);
        } else if (d3 && n % 2 == 0) {
            // parity of the two roots is equal because the norm N*n is even
            if (!is_odd(roots[0]) || n % 4 != 0)
                throw descent_error("descent stuck on an even multiplier (composite modulus)");
            st = quarter_step(n, roots);
        } else {
            st = standard_step(form, n, roots);
            if (st.n_next == 0)
                throw descent_error("descent stuck: all roots divisible by the multiplier");
            if (st.n_next >= n)
                throw descent_error("descent stuck: multiplier did not decrease");
        }
        n = st.n_next;
        roots = st.roots_out;
        trace.steps.push_back(std::move(st));
    }
    trace.result = canonical_roots(form, roots);
    return trace;
}

} // namespace detail

// Descent for the binary form x^2 + D*y^2: shrink the seed multiple N*n
// to N*1, using the two-square composition at every standard step. Each
// D = 1 step at least halves n; D = 2 steps contract to 3n/4; D = 3 steps
// decrease strictly, with gcd_reduce and quarter steps breaking the even
// cases. Returns the canonical representation and the full trace.
inline std::pair<FormRep, DescentTrace> descend_form(FormKind k, const SeedMultiple& seed,
                                                     bool best_effort = false) {
    DescentTrace trace = detail::run_descent(TargetForm::binary(k), seed, best_effort);
    FormRep rep;
    rep.N = trace.N;
    rep.d = k;
    rep.x = trace.result[0];
    rep.y = trace.result[1];
    return {rep, std::move(trace)};
}

// Four-square descent: standard steps on odd multipliers, the parity
// halving on even ones, so every step strictly decreases n.
inline std::pair<QuadRep, DescentTrace> descend_four(const SeedMultiple& seed,
                                                     bool best_effort = false) {
    DescentTrace trace = detail::run_descent(TargetForm::four_squares(), seed, best_effort);
    QuadRep rep;
    rep.N = trace.N;
    rep.a = trace.result[0];
    rep.b = trace.result[1];
    rep.c = trace.result[2];
    rep.d = trace.result[3];
    return {rep, std::move(trace)};
}

struct Verdict {
    bool accepted = false;
    std::optional<std::size_t> step;  // first failing step, when step-local
    std::string reason;

    explicit operator bool() const { return accepted; }
    static Verdict accept() { return {true, std::nullopt, ""}; }
    static Verdict reject(std::string why, std::optional<std::size_t> at = std::nullopt) {
        return {false, at, std::move(why)};
    }
};

// Independent recheck of a descent trace: every step identity, the chain
// consistency, and the final norm equation are recomputed exactly from the
// recorded fields. Accepts iff everything holds.
inline Verdict verify_trace(const DescentTrace& t) {
    const std::size_t arity = t.form.arity();
    if (t.seed.form != t.form) return Verdict::reject("seed form differs from trace form");
    if (t.N != t.seed.N) return Verdict::reject("trace N differs from seed N");
    if (t.N < 1) return Verdict::reject("N must be >= 1");
    if (t.seed.n < 1) return Verdict::reject("seed multiplier must be >= 1");
    if (t.seed.roots.size() != arity) return Verdict::reject("seed arity mismatch");
    if (weighted_norm(t.form, t.seed.roots) != t.N * t.seed.n)
        return Verdict::reject("seed norm mismatch");

    Int n = t.seed.n;
    std::vector<Int> roots = t.seed.roots;
    const bool d3 = !t.form.is_four() && t.form.kind() == FormKind::d3;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const DescentStep& st = t.steps[i];
        if (st.roots_in != roots) return Verdict::reject("chain broken: roots_in", i);
        if (st.n != n) return Verdict::reject("chain broken: multiplier", i);
        if (st.n < 1) return Verdict::reject("step multiplier must be >= 1", i);
        if (st.roots_out.size() != arity) return Verdict::reject("step shape invalid", i);
        switch (st.kind) {
            case StepKind::standard: {
                if (st.residues.size() != arity || st.quotients.size() != arity ||
                    st.composed.size() != arity)
                    return Verdict::reject("step shape invalid", i);
                for (std::size_t j = 0; j < arity; ++j) {
                    if (st.residues[j] != centered_rem(st.roots_in[j], st.n))
                        return Verdict::reject("residue is not the centered remainder", i);
                    if (st.roots_in[j] != st.residues[j] + st.n * st.quotients[j])
                        return Verdict::reject("quotients inconsistent", i);
                }
                if (weighted_norm(t.form, st.residues) != st.n * st.n_next)
                    return Verdict::reject("step norm mismatch", i);
                if (detail::compose_step(t.form, st.residues, st.quotients) != st.composed)
                    return Verdict::reject("composed values inconsistent", i);
                if (st.roots_out[0] != st.n_next + st.composed[0])
                    return Verdict::reject("output roots inconsistent", i);
                for (std::size_t j = 1; j < arity; ++j)
                    if (st.roots_out[j] != st.composed[j])
                        return Verdict::reject("output roots inconsistent", i);
                break;
            }
            case StepKind::halve: {
                if (!t.form.is_four()) return Verdict::reject("halve step in a binary-form trace", i);
                if (st.residues.size() != 4 || !st.quotients.empty() || !st.composed.empty())
                    return Verdict::reject("step shape invalid", i);
                if (2 * st.n_next != st.n) return Verdict::reject("halve multiplier mismatch", i);
                std::vector<Int> a = st.residues, b = st.roots_in;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (a != b)
                    return Verdict::reject("halve residues are not a permutation of the roots", i);
                if (detail::is_odd(st.residues[0]) != detail::is_odd(st.residues[1]) ||
                    detail::is_odd(st.residues[2]) != detail::is_odd(st.residues[3]))
                    return Verdict::reject("halve parity pairing invalid", i);
                if (st.roots_out[0] != (st.residues[0] + st.residues[1]) / 2 ||
                    st.roots_out[1] != (st.residues[0] - st.residues[1]) / 2 ||
                    st.roots_out[2] != (st.residues[2] + st.residues[3]) / 2 ||
                    st.roots_out[3] != (st.residues[2] - st.residues[3]) / 2)
                    return Verdict::reject("halve arithmetic mismatch", i);
                break;
            }
            case StepKind::quarter: {
                if (!d3) return Verdict::reject("quarter step outside x^2 + 3y^2", i);
                if (st.residues.size() != 2 || st.quotients.size() != 2 || !st.composed.empty())
                    return Verdict::reject("step shape invalid", i);
                if (4 * st.n_next != st.n) return Verdict::reject("quarter multiplier mismatch", i);
                for (std::size_t j = 0; j < 2; ++j) {
                    if (!detail::is_odd(st.roots_in[j]))
                        return Verdict::reject("quarter roots must be odd", i);
                    if (st.residues[j] != st.roots_in[j] && st.residues[j] != -st.roots_in[j])
                        return Verdict::reject("quarter sign normalization invalid", i);
                    Int m = st.residues[j] % 4;
                    if (m < 0) m += 4;
                    if (m != 1)
                        return Verdict::reject("quarter sign normalization invalid", i);
                    if (st.residues[j] != 4 * st.quotients[j] + 1)
                        return Verdict::reject("quarter quotients inconsistent", i);
                }
                const Int& r = st.quotients[0];
                const Int& s = st.quotients[1];
                if (st.roots_out[0] != 1 + r + 3 * s || st.roots_out[1] != r - s)
                    return Verdict::reject("quarter output mismatch", i);
                break;
            }
            case StepKind::gcd_reduce: {
                if (st.quotients.size() != 1 || !st.residues.empty() || !st.composed.empty())
                    return Verdict::reject("step shape invalid", i);
                const Int& g = st.quotients[0];
                if (g < 2) return Verdict::reject("gcd value incorrect", i);
                if (g != detail::gcd_of(st.roots_in))
                    return Verdict::reject("gcd value incorrect", i);
                for (std::size_t j = 0; j < arity; ++j)
                    if (st.roots_in[j] != g * st.roots_out[j])
                        return Verdict::reject("gcd division mismatch", i);
                if (st.n != g * g * st.n_next)
                    return Verdict::reject("gcd multiplier mismatch", i);
                break;
            }
        }
        n = st.n_next;
        roots = st.roots_out;
    }
    if (n != 1) return Verdict::reject("final multiplier is not 1");
    if (t.result.size() != arity) return Verdict::reject("result arity mismatch");
    if (weighted_norm(t.form, t.result) != t.N)
        return Verdict::reject("final norm mismatch");
    if (t.result != canonical_roots(t.form, roots))
        return Verdict::reject("result does not match the descent's final roots");
    return Verdict::accept();
}

} // namespace sqforms
