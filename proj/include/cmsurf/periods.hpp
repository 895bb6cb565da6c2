// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Period map of a product of two CM elliptic curves E_t1 x E_t2 and the
// resulting Neron-Severi and transcendental lattices, in exact arithmetic.
//
// H^2(A, Z) has basis u12, u13, u14, u23, u24, u34 (indices 0..5) and the
// wedge pairing (u12,u34) = 1, (u13,u24) = -1, (u14,u23) = 1.

#ifndef CMSURF_PERIODS_HPP
#define CMSURF_PERIODS_HPP

#include "cmsurf/kmodules.hpp"
#include "cmsurf/lattice.hpp"

#include <array>

namespace cmsurf {

inline const IntMatrix& wedge_pairing()
{
    static const IntMatrix w = [] {
        IntMatrix m(6, IntVector(6, 0));
        auto set = [&](int i, int j, int v) { m[i][j] = v; m[j][i] = v; };
        set(0, 5, 1);
        set(1, 4, -1);
        set(2, 3, 1);
        return m;
    }();
    return w;
}

struct PeriodVector {
    std::array<KElement, 6> coeffs;

    const Int& d_K() const { return coeffs[0].d_K; }

    /// (p, v) for an integral class v.
    KElement evaluate(const IntVector& v) const
    {
        const auto& w = wedge_pairing();
        KElement s = KElement::from_int(0, d_K());
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if (w[i][j] != 0 && v[j] != 0)
                    s = s + Rat(w[i][j] * v[j]) * coeffs[i];
        return s;
    }
};

/// p = u12 + t2 u14 + t1 u23 - t1 t2 u34.
inline PeriodVector period_vector(const KPoint& t1, const KPoint& t2)
{
    if (sgn(t1.coeff) <= 0 || sgn(t2.coeff) <= 0)
        throw math_error("period_vector: points must lie in the upper half plane");
    KElement a = to_kelement(t1), b = to_kelement(t2);
    detail::same_field(a.d_K, b.d_K);
    KElement zero = KElement::from_int(0, a.d_K), one = KElement::from_int(1, a.d_K);
    return {{one, zero, b, a, zero, -(a * b)}};
}

/// (p, p) = 0 and (p, conj p) > 0, both exactly.
inline bool check_period_relations(const PeriodVector& p)
{
    const auto& w = wedge_pairing();
    KElement pp = KElement::from_int(0, p.d_K());
    KElement pbar = pp;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (w[i][j] != 0) {
                pp = pp + Rat(w[i][j]) * (p.coeffs[i] * p.coeffs[j]);
                pbar = pbar + Rat(w[i][j]) * (p.coeffs[i] * conj(p.coeffs[j]));
            }
    // (p, conj p) is real
    return pp.is_zero() && sgn(pbar.sqrt_part()) == 0 && sgn(pbar.rational_part()) > 0;
}

/// Saturated integral kernel of v -> (p, v), in Hermite form (4 rows).
inline IntMatrix neron_severi(const PeriodVector& p)
{
    const auto& w = wedge_pairing();
    // v -> (p, v) has coefficient vector sum_i p_i w_ij; split into the
    // coordinates on {1, w_K} and clear denominators
    std::array<KElement, 6> functional;
    for (int j = 0; j < 6; ++j) {
        KElement s = KElement::from_int(0, p.d_K());
        for (int i = 0; i < 6; ++i)
            if (w[i][j] != 0)
                s = s + Rat(w[i][j]) * p.coeffs[i];
        functional[j] = s;
    }
    IntMatrix eqs(2, IntVector(6));
    for (int part = 0; part < 2; ++part) {
        Int den = 1;
        for (const auto& f : functional)
            den = lcm(den, (part == 0 ? f.x : f.y).get_den());
        for (int j = 0; j < 6; ++j)
            eqs[part][j] = to_int((part == 0 ? functional[j].x : functional[j].y) * den);
    }
    IntMatrix ns = integer_kernel(eqs, 6);
    if (ns.size() != 4)
        throw std::logic_error("neron_severi: kernel has rank " + std::to_string(ns.size()) + ", expected 4");
    return ns;
}

/// Positively oriented rank-two lattice with its Gram matrix under the wedge pairing.
struct OrientedLattice2 {
    std::array<IntVector, 2> basis;
    std::array<std::array<Int, 2>, 2> gram;

    QuadraticForm form() const { return {gram[0][0] / 2, gram[0][1], gram[1][1] / 2}; }
};

/// Orthogonal complement of NS, basis ordered so Im(p(t1)/p(t2)) > 0, then
/// properly reduced.
inline OrientedLattice2 transcendental_lattice(const PeriodVector& p)
{
    const auto& w = wedge_pairing();
    IntMatrix ns = neron_severi(p);
    IntMatrix constraints;
    for (const auto& v : ns)
        constraints.push_back(mat_vec(w, v)); // w symmetric: (v, x) = (w v) . x
    IntMatrix t = integer_kernel(constraints, 6);
    if (t.size() != 2)
        throw std::logic_error("transcendental_lattice: complement has rank " + std::to_string(t.size()));
    IntVector t1 = t[0], t2 = t[1];
    int orient = im_sign_of_quotient(p.evaluate(t1), p.evaluate(t2));
    if (orient == 0)
        throw std::logic_error("transcendental_lattice: degenerate period values");
    if (orient < 0)
        for (auto& x : t2)
            x = -x;
    QuadraticForm q{bilinear(w, t1, t1) / 2, bilinear(w, t1, t2), bilinear(w, t2, t2) / 2};
    auto red = reduce(q);
    const auto& g = red.map;
    OrientedLattice2 out;
    for (int k = 0; k < 6; ++k) {
        out.basis[0].push_back(g.p * t1[k] + g.r * t2[k]);
        out.basis[1].push_back(g.q * t1[k] + g.s * t2[k]);
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.gram[i][j] = bilinear(w, out.basis[i], out.basis[j]);
    return out;
}

inline OrientedLattice2 transcendental_lattice(const KPoint& t1, const KPoint& t2)
{
    return transcendental_lattice(period_vector(t1, t2));
}

/// Reduced oriented form of T(E_t1 x E_t2).
inline QuadraticForm transcendental_form(const KPoint& t1, const KPoint& t2)
{
    return transcendental_lattice(t1, t2).form();
}

inline KPoint scale(const KPoint& t, const Int& s)
{
    if (s <= 0)
        throw math_error("KPoint scale factor must be positive");
    return {t.re * s, t.coeff * s, t.radicand};
}

/// CM points (-B + sqrt D)/(2A), (-B + sqrt D)/(2A') of representatives (A, B, .),
/// (A', B, .) of the classes of m Q and m' Q' sharing the middle coefficient B;
/// A/m and A'/m' are prime to M. Needs gcd(m, m') = 1.
inline std::pair<KPoint, KPoint> united_points(const QuadraticForm& f, const QuadraticForm& g, const Int& M)
{
    auto [m1, q1] = content(f);
    auto [m2, q2] = content(g);
    if (gcd(m1, m2) != 1)
        throw math_error("united_points: contents " + m1.get_str() + " and " + m2.get_str() + " are not coprime");
    QuadraticForm r1 = m1 * coprime_representative(q1, M * m1 * m2);
    QuadraticForm r2 = m2 * coprime_representative(q2, M * m1 * m2 * r1.a);
    QuadraticForm h = dirichlet_compose(r1, r2);
    QuadraticForm u1{r1.a, h.b, (h.b * h.b - h.discriminant()) / (4 * r1.a)};
    QuadraticForm u2{r2.a, h.b, (h.b * h.b - h.discriminant()) / (4 * r2.a)};
    return {cm_point(u1), cm_point(u2)};
}

/// (tau(Q), a tau(Q) + b): the product surface whose oriented transcendental lattice is Q.
inline std::pair<KPoint, KPoint> surface_from_form(const QuadraticForm& q)
{
    KPoint t = cm_point(q);
    return {t, {t.re * q.a + q.b, t.coeff * q.a, t.radicand}};
}

} // namespace cmsurf

#endif // CMSURF_PERIODS_HPP
