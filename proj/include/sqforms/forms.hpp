#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "sqforms/arith.hpp"
#include "sqforms/errors.hpp"

namespace sqforms {

// The binary quadratic forms x^2 + D*y^2 with D in {1, 2, 3}. These are
// exactly the coefficients for which the divisor-descent bound n' <= n
// holds; D >= 5 already breaks it and is rejected outright.
enum class FormKind : int { d1 = 1, d2 = 2, d3 = 3 };

constexpr int coefficient(FormKind k) { return static_cast<int>(k); }

inline FormKind form_kind(int d) {
    switch (d) {
        case 1: return FormKind::d1;
        case 2: return FormKind::d2;
        case 3: return FormKind::d3;
        default: throw domain_error("form coefficient must be 1, 2 or 3");
    }
}

// A pair (x, y) read against the form x^2 + D*y^2. Entries may be negative;
// the norm is always exact.
struct FormPair {
    Int x;
    Int y;
    FormKind d = FormKind::d1;

    Int norm() const { return x * x + coefficient(d) * y * y; }
    friend bool operator==(const FormPair&, const FormPair&) = default;
};

// A quadruple (a, b, c, d) with norm a^2 + b^2 + c^2 + d^2.
struct Quad {
    Int a;
    Int b;
    Int c;
    Int d;

    Int norm() const { return a * a + b * b + c * c + d * d; }
    friend bool operator==(const Quad&, const Quad&) = default;
};

// Canonical representation N = x^2 + D*y^2 with x, y >= 0 (and x >= y
// when D = 1, where the form is symmetric).
struct FormRep {
    Int N;
    FormKind d = FormKind::d1;
    Int x;
    Int y;
    friend bool operator==(const FormRep&, const FormRep&) = default;
};

// Canonical representation N = a^2 + b^2 + c^2 + d^2, a >= b >= c >= d >= 0.
struct QuadRep {
    Int N;
    Int a;
    Int b;
    Int c;
    Int d;
    friend bool operator==(const QuadRep&, const QuadRep&) = default;
};

inline FormRep canonical_form_rep(FormKind k, const Int& x, const Int& y) {
    Int ax = abs_int(x), ay = abs_int(y);
    if (k == FormKind::d1 && ax < ay) std::swap(ax, ay);
    FormRep rep;
    rep.d = k;
    rep.x = ax;
    rep.y = ay;
    rep.N = ax * ax + coefficient(k) * ay * ay;
    return rep;
}

inline QuadRep canonical_quad_rep(const Int& a, const Int& b, const Int& c, const Int& d) {
    std::array<Int, 4> v{abs_int(a), abs_int(b), abs_int(c), abs_int(d)};
    std::sort(v.begin(), v.end(), [](const Int& l, const Int& r) { return l > r; });
    QuadRep rep;
    rep.a = v[0];
    rep.b = v[1];
    rep.c = v[2];
    rep.d = v[3];
    rep.N = rep.a * rep.a + rep.b * rep.b + rep.c * rep.c + rep.d * rep.d;
    return rep;
}

// Two-square composition: (a^2 + D b^2)(α^2 + D β^2) = A^2 + D B^2 with
//   A = aα + D bβ,   B = aβ - bα.
// The formulas are returned verbatim, without sign normalization, so that
// descent traces can be rechecked literally.
inline FormPair compose_form(FormKind k, const FormPair& u, const FormPair& v) {
    if (u.d != k || v.d != k)
        throw domain_error("compose_form: operands must carry the same form");
    const int D = coefficient(k);
    FormPair out;
    out.d = k;
    out.x = u.x * v.x + D * u.y * v.y;
    out.y = u.x * v.y - u.y * v.x;
    return out;
}

// Four-square composition:
//   A = aα + bβ + cγ + dδ
//   B = aβ - bα - cδ + dγ
//   C = aγ + bδ - cα - dβ
//   D = aδ - bγ + cβ - dα
// and norm(u) * norm(v) = norm(result), exactly.
inline Quad compose_four(const Quad& u, const Quad& v) {
    Quad out;
    out.a = u.a * v.a + u.b * v.b + u.c * v.c + u.d * v.d;
    out.b = u.a * v.b - u.b * v.a - u.c * v.d + u.d * v.c;
    out.c = u.a * v.c + u.b * v.d - u.c * v.a - u.d * v.b;
    out.d = u.a * v.d - u.b * v.c + u.c * v.b - u.d * v.a;
    return out;
}

namespace detail {

// Stable partition of the quad's entries with the odd ones first. A parity
// pairing exists iff the number of odd entries is 0, 2 or 4, i.e. iff the
// norm is even.
inline bool parity_partition(const std::array<Int, 4>& in, std::array<Int, 4>& out) {
    std::size_t odd = 0, even = 0;
    std::array<Int, 4> evens;
    for (const Int& v : in) {
        if ((abs_int(v) & 1) == 1) out[odd++] = v;
        else evens[even++] = v;
    }
    if (odd == 1 || odd == 3) return false;
    for (std::size_t i = 0; i < even; ++i) out[odd + i] = evens[i];
    return true;
}

} // namespace detail

// Halving identity: if p, q, r, s pair up by parity then
//   (p^2+q^2+r^2+s^2)/2 = ((p+q)/2)^2 + ((p-q)/2)^2 + ((r+s)/2)^2 + ((r-s)/2)^2
// in integers. Pairing is deterministic: odd entries first, ties kept in
// input order. Fails (odd norm) when exactly one or three entries are odd.
inline Quad halve_four(const Quad& q) {
    std::array<Int, 4> sorted;
    if (!detail::parity_partition({q.a, q.b, q.c, q.d}, sorted))
        throw domain_error("halve_four: norm is odd, no parity pairing exists");
    Quad out;
    out.a = (sorted[0] + sorted[1]) / 2;
    out.b = (sorted[0] - sorted[1]) / 2;
    out.c = (sorted[2] + sorted[3]) / 2;
    out.d = (sorted[2] - sorted[3]) / 2;
    return out;
}

// Quarter reduction for x^2 + 3y^2 with both roots odd. Every odd square
// is (4m+1)^2 once negative m are admitted, so write ±p = 4r+1, ±q = 4s+1;
// then (p^2 + 3q^2)/4 = (1+r+3s)^2 + 3(r-s)^2, exactly.
inline FormPair quarter_form3(const Int& p, const Int& q) {
    if ((abs_int(p) & 1) == 0 || (abs_int(q) & 1) == 0)
        throw domain_error("quarter_form3: both roots must be odd");
    auto rep_4m1 = [](const Int& v) {
        // the representative of ±v that is = 1 (mod 4)
        Int m = v % 4;
        if (m < 0) m += 4;
        return m == 1 ? v : Int(-v);
    };
    Int pr = rep_4m1(p), qr = rep_4m1(q);
    Int r = (pr - 1) / 4, s = (qr - 1) / 4;
    FormPair out;
    out.d = FormKind::d3;
    out.x = 1 + r + 3 * s;
    out.y = r - s;
    return out;
}

} // namespace sqforms
