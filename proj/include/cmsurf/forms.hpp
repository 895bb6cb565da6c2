// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef CMSURF_FORMS_HPP
#define CMSURF_FORMS_HPP

#include "cmsurf/numtheory.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace cmsurf {

/// The form a x^2 + b x y + c y^2. Stored verbatim; never auto-reduced.
struct QuadraticForm {
    Int a, b, c;

    Int discriminant() const { return b * b - 4 * a * c; }
    bool is_positive_definite() const { return a > 0 && discriminant() < 0; }
    Int operator()(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }

    bool operator==(const QuadraticForm&) const = default;
    bool operator<(const QuadraticForm& o) const
    {
        if (a != o.a)
            return a < o.a;
        if (b != o.b)
            return b < o.b;
        return c < o.c;
    }

    std::string str() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const QuadraticForm& q) { return os << q.str(); }

inline QuadraticForm operator*(const Int& m, const QuadraticForm& q) { return {m * q.a, m * q.b, m * q.c}; }

inline Int discriminant(const QuadraticForm& q) { return q.discriminant(); }

/// (a, -b, c): improperly equivalent to q, and the inverse class when q is primitive.
inline QuadraticForm conjugate(const QuadraticForm& q) { return {q.a, -q.b, q.c}; }

inline void require_positive_definite(const QuadraticForm& q)
{
    if (!q.is_positive_definite())
        throw math_error("form " + q.str() + " is not positive definite");
}

/// Proper change of variables (x, y) -> (p x + q y, r x + s y).
struct UnimodularMap {
    Int p = 1, q = 0, r = 0, s = 1;

    static UnimodularMap identity() { return {}; }
    static UnimodularMap translation(const Int& k) { return {1, k, 0, 1}; }
    static UnimodularMap rotation() { return {0, -1, 1, 0}; }

    Int det() const { return p * s - q * r; }
    UnimodularMap inverse() const { return {s, -q, -r, p}; }
    bool operator==(const UnimodularMap&) const = default;
};

/// Matrix product; applying `g * h` equals applying g, then h.
inline UnimodularMap operator*(const UnimodularMap& g, const UnimodularMap& h)
{
    return {g.p * h.p + g.q * h.r, g.p * h.q + g.q * h.s, g.r * h.p + g.s * h.r, g.r * h.q + g.s * h.s};
}

/// The form (x, y) -> q(p x + q y, r x + s y).
inline QuadraticForm apply(const QuadraticForm& f, const UnimodularMap& g)
{
    return {f(g.p, g.r), 2 * f.a * g.p * g.q + f.b * (g.p * g.s + g.q * g.r) + 2 * f.c * g.r * g.s, f(g.q, g.s)};
}

struct ContentSplit {
    Int m;
    QuadraticForm primitive;
};

inline ContentSplit content(const QuadraticForm& q)
{
    Int m = gcd(q.a, q.b, q.c);
    return {m, {q.a / m, q.b / m, q.c / m}};
}

inline bool is_primitive(const QuadraticForm& q) { return gcd(q.a, q.b, q.c) == 1; }

inline bool is_reduced(const QuadraticForm& q)
{
    if (!(-q.a < q.b && q.b <= q.a && q.a <= q.c))
        return false;
    return !(q.a == q.c && q.b < 0);
}

struct Reduction {
    QuadraticForm form;
    UnimodularMap map; ///< apply(input, map) == form
};

/// Unique reduced representative of the proper class: -a < b <= a <= c, b >= 0 if a = c.
inline Reduction reduce(const QuadraticForm& input)
{
    require_positive_definite(input);
    QuadraticForm q = input;
    UnimodularMap g;
    for (;;) {
        Int k = floor_div(q.a - q.b, 2 * q.a);
        if (k != 0) {
            auto t = UnimodularMap::translation(k);
            q = apply(q, t);
            g = g * t;
        }
        if (q.a > q.c || (q.a == q.c && q.b < 0)) {
            auto s = UnimodularMap::rotation();
            q = apply(q, s);
            g = g * s;
            continue;
        }
        break;
    }
    return {q, g};
}

inline QuadraticForm reduced(const QuadraticForm& q) { return reduce(q).form; }

inline std::optional<UnimodularMap> is_properly_equivalent(const QuadraticForm& f, const QuadraticForm& g)
{
    auto rf = reduce(f);
    auto rg = reduce(g);
    if (rf.form != rg.form)
        return std::nullopt;
    return rf.map * rg.map.inverse();
}

/// GL2(Z)-equivalence that is not witnessed by a proper map.
inline bool is_improperly_equivalent(const QuadraticForm& f, const QuadraticForm& g)
{
    return reduced(f) == reduced(conjugate(g));
}

inline QuadraticForm principal_form(const Int& D)
{
    if (!is_discriminant(D))
        throw invalid_discriminant(D);
    if (mod(D, 4) == 0)
        return {1, 0, -D / 4};
    return {1, 1, (1 - D) / 4};
}

/// All (x, y) with gcd(x, y) = 1 and q(x, y) = m, q positive definite.
/// Exact: uses 4a q(x, y) = (2a x + b y)^2 + |D| y^2.
inline std::vector<std::pair<Int, Int>> proper_representations(const QuadraticForm& q, const Int& m)
{
    require_positive_definite(q);
    std::vector<std::pair<Int, Int>> out;
    if (m <= 0)
        return out;
    Int D = q.discriminant();
    Int ymax = isqrt(4 * q.a * m / -D);
    for (Int y = -ymax; y <= ymax; ++y) {
        Int disc = D * y * y + 4 * q.a * m;
        if (!is_square(disc))
            continue;
        Int root = isqrt(disc);
        for (int sgn : {-1, 1}) {
            Int num = -q.b * y + sgn * root;
            if (!divides(2 * q.a, num))
                continue;
            Int x = num / (2 * q.a);
            if (gcd(x, y) == 1 && (out.empty() || out.back() != std::pair<Int, Int>{x, y}))
                out.emplace_back(x, y);
            if (root == 0)
                break;
        }
    }
    return out;
}

namespace detail {

/// Canonical choice among representations v and -v: the half plane x > 0 or
/// (x = 0, y > 0); ties broken by (|y|, |x|, y).
inline bool better_representation(const std::pair<Int, Int>& u, const std::pair<Int, Int>& v)
{
    auto key = [](const std::pair<Int, Int>& w) { return std::make_tuple(Int(abs(w.second)), Int(abs(w.first)), w.second); };
    return key(u) < key(v);
}

inline bool in_half_plane(const std::pair<Int, Int>& v) { return v.first > 0 || (v.first == 0 && v.second > 0); }

/// Enumerates over the reduced form (small ellipse) and maps back.
inline std::optional<std::pair<Int, Int>> canonical_representation(const QuadraticForm& q, const Int& m)
{
    auto red = reduce(q);
    const auto& g = red.map;
    std::optional<std::pair<Int, Int>> best;
    for (const auto& [x, y] : proper_representations(red.form, m)) {
        std::pair<Int, Int> v{g.p * x + g.q * y, g.r * x + g.s * y};
        if (in_half_plane(v) && (!best || better_representation(v, *best)))
            best = v;
    }
    return best;
}

} // namespace detail

struct Representation {
    Int x, y, value;
    bool operator==(const Representation&) const = default;
};

inline constexpr long default_search_cap = 1L << 14;

/// Least value coprime to M properly represented by q, with its canonical
/// representation. Searches boxes |x|, |y| <= B (B = 8, 16, ... up to cap)
/// over the reduced form; a hit is accepted once the box covers the whole
/// ellipse below it, so the value is the global minimum.
inline Representation represent_coprime(const QuadraticForm& q, const Int& M, long cap = default_search_cap)
{
    if (gcd(content(q).m, M) != 1)
        throw math_error("represent_coprime: every value of " + q.str() + " shares a factor with " + M.get_str());
    auto red = reduce(q);
    const QuadraticForm& r = red.form;
    Int negD = -r.discriminant();
    for (long box = 8;; box *= 2) {
        std::optional<Int> best;
        for (long y = 0; y <= box; ++y)
            for (long x = -box; x <= box; ++x) {
                if (y == 0 && x <= 0)
                    continue;
                if (gcd(Int(x), Int(y)) != 1)
                    continue;
                Int v = r(x, y);
                if (gcd(v, M) != 1)
                    continue;
                if (!best || v < *best)
                    best = v;
            }
        if (best) {
            // |x|, |y| bounds of the ellipse r <= best
            Int ybound = isqrt(4 * r.a * *best / negD) + 1;
            Int xbound = isqrt(4 * r.c * *best / negD) + 1;
            if (ybound <= box && xbound <= box) {
                auto rep = detail::canonical_representation(q, *best);
                return {rep->first, rep->second, *best};
            }
        }
        if (box >= cap)
            throw search_exhausted("represent_coprime: no value of " + q.str() + " coprime to " + M.get_str() +
                                   " certified within search bound " + std::to_string(cap));
    }
}

/// A form (m, B, C) properly equivalent to q with 0 <= B < 2m, and the map realizing it.
inline std::pair<QuadraticForm, UnimodularMap> with_leading_map(const QuadraticForm& q, const Int& m)
{
    require_positive_definite(q);
    auto rep = detail::canonical_representation(q, m);
    if (!rep)
        throw math_error(m.get_str() + " is not properly represented by " + q.str());
    auto [x, y] = *rep;
    auto [g, u, w] = xgcd(x, y);
    UnimodularMap total{x, -w, y, u};
    QuadraticForm f = apply(q, total);
    Int b = mod(f.b, 2 * m);
    auto t = UnimodularMap::translation((b - f.b) / (2 * m));
    total = total * t;
    return {apply(q, total), total};
}

inline QuadraticForm with_leading(const QuadraticForm& q, const Int& m) { return with_leading_map(q, m).first; }

/// Properly equivalent form whose leading coefficient is coprime to M.
inline QuadraticForm coprime_representative(const QuadraticForm& q, const Int& M)
{
    if (gcd(q.a, M) == 1)
        return q;
    return with_leading(q, represent_coprime(q, M).value);
}

/// re + coeff * sqrt(radicand), radicand < 0 squarefree, coeff > 0.
struct KPoint {
    Rat re, coeff;
    Int radicand;

    bool operator==(const KPoint&) const = default;
    std::string str() const
    {
        return re.get_str() + " + " + coeff.get_str() + "*sqrt(" + radicand.get_str() + ")";
    }
};

/// Writes sqrt(n) = s * sqrt(core) with core squarefree (same sign as n).
inline std::pair<Int, Int> split_square(const Int& n)
{
    Int s = 1, core = sgn(n);
    for (const auto& pp : factorize(abs(n)).prime_powers) {
        s *= pow(pp.prime, pp.exponent / 2);
        if (pp.exponent % 2 == 1)
            core *= pp.prime;
    }
    return {s, core};
}

/// (-b + sqrt(D)) / 2a.
inline KPoint cm_point(const QuadraticForm& q)
{
    require_positive_definite(q);
    auto [s, core] = split_square(q.discriminant());
    return {make_rat(-q.b, 2 * q.a), make_rat(s, 2 * q.a), core};
}

} // namespace cmsurf

#endif // CMSURF_FORMS_HPP
