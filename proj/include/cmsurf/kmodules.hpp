// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Rank-two Z-modules in an imaginary quadratic field K, written in the
// basis {1, w} with w = (d_K + sqrt(d_K)) / 2. Used as the ideal-side
// reference for every form composition in the library.

#ifndef CMSURF_KMODULES_HPP
#define CMSURF_KMODULES_HPP

#include "cmsurf/classgroup.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cmsurf {

/// x + y w in K = Q(sqrt(d_K)).
struct KElement {
    Rat x, y;
    Int d_K;

    static KElement from_int(const Int& n, const Int& d_K) { return {Rat(n), Rat(0), d_K}; }
    static KElement w(const Int& d_K) { return {Rat(0), Rat(1), d_K}; }
    /// r + s sqrt(d_K).
    static KElement from_sqrt_form(const Rat& r, const Rat& s, const Int& d_K)
    {
        Rat y = 2 * s;
        return {r - y * d_K / 2, y, d_K};
    }

    /// Coefficients (r, s) with value r + s sqrt(d_K).
    Rat rational_part() const { return x + y * d_K / 2; }
    Rat sqrt_part() const { return y / 2; }

    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
    bool operator==(const KElement&) const = default;

    std::string str() const { return x.get_str() + " + " + y.get_str() + "*w[" + d_K.get_str() + "]"; }
};

namespace detail {
inline void same_field(const Int& a, const Int& b)
{
    if (a != b)
        throw math_error("elements of different fields: d_K = " + a.get_str() + " vs " + b.get_str());
}
} // namespace detail

inline KElement operator+(const KElement& u, const KElement& v)
{
    detail::same_field(u.d_K, v.d_K);
    return {u.x + v.x, u.y + v.y, u.d_K};
}

inline KElement operator-(const KElement& u, const KElement& v)
{
    detail::same_field(u.d_K, v.d_K);
    return {u.x - v.x, u.y - v.y, u.d_K};
}

inline KElement operator-(const KElement& u) { return {-u.x, -u.y, u.d_K}; }

/// w^2 = d_K w - (d_K^2 - d_K)/4.
inline KElement operator*(const KElement& u, const KElement& v)
{
    detail::same_field(u.d_K, v.d_K);
    Int n = (u.d_K * u.d_K - u.d_K) / 4;
    Rat yy = u.y * v.y;
    return {u.x * v.x - yy * n, u.x * v.y + u.y * v.x + yy * u.d_K, u.d_K};
}

inline KElement operator*(const Rat& s, const KElement& u) { return {s * u.x, s * u.y, u.d_K}; }

inline KElement conj(const KElement& u) { return {u.x + u.y * u.d_K, -u.y, u.d_K}; }

inline Rat norm(const KElement& u)
{
    Int n = (u.d_K * u.d_K - u.d_K) / 4;
    return u.x * u.x + u.x * u.y * u.d_K + u.y * u.y * n;
}

inline Rat trace(const KElement& u) { return 2 * u.x + u.y * u.d_K; }

inline KElement operator/(const KElement& u, const KElement& v)
{
    if (v.is_zero())
        throw math_error("division by zero in K");
    return (Rat(1) / norm(v)) * (u * conj(v));
}

/// Sign of Im(u / v) for nonzero v, i.e. of the sqrt(d_K) part of u * conj(v).
inline int im_sign_of_quotient(const KElement& u, const KElement& v) { return sgn((u * conj(v)).sqrt_part()); }

inline KElement to_kelement(const KPoint& p)
{
    // sqrt(r) = sqrt(d_K) when r = 1 mod 4, else sqrt(d_K) / 2
    Int d_K = mod(p.radicand, 4) == 1 ? p.radicand : 4 * p.radicand;
    Rat s = d_K == p.radicand ? p.coeff : p.coeff / 2;
    return KElement::from_sqrt_form(p.re, s, d_K);
}

/// scale * span_Z{ p, q + r w } with p, r > 0, 0 <= q < p, gcd(p, q, r) = 1.
class KModule {
public:
    /// Z-span of the given elements; they must span a rank-two module.
    static KModule span(const std::vector<KElement>& gens)
    {
        if (gens.empty())
            throw math_error("KModule::span: no generators");
        Int d_K = gens.front().d_K;
        Int den = 1;
        for (const auto& g : gens) {
            detail::same_field(d_K, g.d_K);
            den = lcm(den, lcm(g.x.get_den(), g.y.get_den()));
        }
        std::vector<std::array<Int, 2>> rows;
        for (const auto& g : gens)
            rows.push_back({to_int(g.x * den), to_int(g.y * den)});
        auto [p, q, r] = hermite(rows);
        Int content = gcd(p, q, r);
        KModule m;
        m.d_K_ = d_K;
        m.scale_ = make_rat(content, den);
        m.p_ = p / content;
        m.q_ = q / content;
        m.r_ = r / content;
        return m;
    }

    static KModule from_basis(const KElement& e1, const KElement& e2) { return span({e1, e2}); }
    static KModule maximal_order(const Int& d_K) { return order(d_K, 1); }
    static KModule order(const Int& d_K, const Int& f)
    {
        return span({KElement::from_int(1, d_K), Rat(f) * KElement::w(d_K)});
    }

    const Int& d_K() const { return d_K_; }
    const Rat& scale() const { return scale_; }
    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }

    /// Canonical basis (alpha, beta) with alpha rational > 0 and Im(beta / alpha) > 0.
    KElement first() const { return {scale_ * p_, Rat(0), d_K_}; }
    KElement second() const { return {scale_ * q_, scale_ * r_, d_K_}; }

    /// Smallest k > 0 with k * v in the module.
    Int order_of(const KElement& v) const
    {
        detail::same_field(d_K_, v.d_K);
        Rat X = v.x / scale_, Y = v.y / scale_;
        Rat beta = Y / r_;
        Rat alpha = (X - beta * q_) / p_;
        return lcm(alpha.get_den(), beta.get_den());
    }

    bool contains(const KElement& v) const { return order_of(v) == 1; }

    bool operator==(const KModule&) const = default;

    std::string str() const
    {
        return scale_.get_str() + "*[" + p_.get_str() + ", " + q_.get_str() + " + " + r_.get_str() + "w]" +
               " (d_K=" + d_K_.get_str() + ")";
    }

private:
    /// Row Hermite form of an integer lattice of rank two in Z^2.
    static std::tuple<Int, Int, Int> hermite(std::vector<std::array<Int, 2>> rows)
    {
        // eliminate the second coordinate into a single row
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][1] == 0)
                continue;
            if (pivot == rows.size()) {
                pivot = i;
                continue;
            }
            auto& a = rows[pivot];
            auto& b = rows[i];
            auto [g, u, v] = xgcd(a[1], b[1]);
            Int ca = a[1] / g, cb = b[1] / g;
            std::array<Int, 2> na{u * a[0] + v * b[0], g};
            std::array<Int, 2> nb{cb * a[0] - ca * b[0], Int(0)};
            a = na;
            b = nb;
        }
        if (pivot == rows.size())
            throw math_error("KModule: generators do not span a rank-two module");
        Int r = rows[pivot][1], q = rows[pivot][0];
        if (r < 0) {
            r = -r;
            q = -q;
        }
        Int p = 0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != pivot)
                p = gcd(p, rows[i][0]);
        if (p == 0)
            throw math_error("KModule: generators do not span a rank-two module");
        return {p, mod(q, p), r};
    }

    Int d_K_;
    Rat scale_;
    Int p_, q_, r_;
};

inline KModule module_product(const KModule& m1, const KModule& m2)
{
    detail::same_field(m1.d_K(), m2.d_K());
    KElement a1 = m1.first(), b1 = m1.second(), a2 = m2.first(), b2 = m2.second();
    return KModule::span({a1 * a2, a1 * b2, b1 * a2, b1 * b2});
}

inline KModule scale(const KElement& lambda, const KModule& m)
{
    return KModule::from_basis(lambda * m.first(), lambda * m.second());
}

/// Conductor of the CM ring {x : x M in M} = Z + f w Z.
inline Int cm_ring(const KModule& m)
{
    KElement w = KElement::w(m.d_K());
    return lcm(m.order_of(w * m.first()), m.order_of(w * m.second()));
}

/// [a, (-b + sqrt(D))/2] for a primitive form (a, b, c).
inline KModule form_to_module(const QuadraticForm& q)
{
    require_positive_definite(q);
    if (!is_primitive(q))
        throw math_error("form_to_module: form " + q.str() + " is not primitive; pass its primitive part");
    auto [d_K, f] = split_discriminant(q.discriminant());
    KElement alpha = KElement::from_int(q.a, d_K);
    KElement beta = KElement::from_sqrt_form(make_rat(-q.b, 2), make_rat(f, 2), d_K);
    return KModule::from_basis(alpha, beta);
}

/// Primitive part of the norm form N(alpha x - beta y) of an oriented basis.
inline QuadraticForm norm_form(const KElement& alpha, const KElement& beta)
{
    Rat A = norm(alpha), B = -trace(alpha * conj(beta)), C = norm(beta);
    Int den = lcm(A.get_den(), lcm(B.get_den(), C.get_den()));
    Int a = to_int(A * den), b = to_int(B * den), c = to_int(C * den);
    Int g = gcd(a, b, c);
    return {a / g, b / g, c / g};
}

struct ModuleClass {
    Int f;
    FormClass cls;
    bool operator==(const ModuleClass&) const = default;
};

inline ModuleClass module_to_class(const KModule& m)
{
    QuadraticForm q = norm_form(m.first(), m.second());
    Int f = cm_ring(m);
    FormClass cls = make_class(q);
    if (split_discriminant(cls.D).f != f)
        throw std::logic_error("module_to_class: norm-form conductor disagrees with CM ring for " + m.str());
    return {f, cls};
}

/// Witness lambda with lambda * m1 = m2, if the modules are homothetic.
inline std::optional<KElement> is_homothetic(const KModule& m1, const KModule& m2)
{
    detail::same_field(m1.d_K(), m2.d_K());
    auto basis_reduced = [](const KModule& m) {
        KElement alpha = m.first(), beta = m.second();
        auto g = reduce(norm_form(alpha, beta)).map;
        // q(p x + q y, r x + s y) comes from the basis (p alpha - r beta, -q alpha + s beta)
        KElement a2 = Rat(g.p) * alpha - Rat(g.r) * beta;
        KElement b2 = Rat(g.s) * beta - Rat(g.q) * alpha;
        return std::pair{a2, b2};
    };
    if (cm_ring(m1) != cm_ring(m2) || reduced(norm_form(m1.first(), m1.second())) != reduced(norm_form(m2.first(), m2.second())))
        return std::nullopt;
    auto [a1, b1] = basis_reduced(m1);
    auto [a2, b2] = basis_reduced(m2);
    KElement lambda = a2 / a1;
    if (scale(lambda, m1) != m2)
        throw std::logic_error("is_homothetic: reconstructed witness does not map " + m1.str() + " to " + m2.str());
    return lambda;
}

} // namespace cmsurf

#endif // CMSURF_KMODULES_HPP
