// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Composition across discriminants f^2 d_K sharing the same field, the
// resulting action of C(D) on C(D0) for D0 | D, and its stabilizers.

#ifndef CMSURF_GCOMP_HPP
#define CMSURF_GCOMP_HPP

#include "cmsurf/kmodules.hpp"

#include <algorithm>
#include <vector>

namespace cmsurf {

/// A class of C(f^2 d_K), tagged with its conductor.
struct ExtendedClass {
    Int f;
    FormClass cls;
    Int d_K;

    static ExtendedClass of(const FormClass& c)
    {
        auto [d_K, f] = split_discriminant(c.D);
        return {f, c, d_K};
    }
    static ExtendedClass principal(const Int& d_K, const Int& f) { return of(principal_class(f * f * d_K)); }

    bool operator==(const ExtendedClass&) const = default;
    bool operator<(const ExtendedClass& o) const
    {
        if (d_K != o.d_K)
            return d_K < o.d_K;
        if (f != o.f)
            return f < o.f;
        return cls.repr < o.cls.repr;
    }
    std::string str() const { return cls.str() + "@f=" + f.get_str(); }
};

/// (n Q) * (m Q') with gcd(n, m) = 1 and equal discriminants; the result has content n m.
inline QuadraticForm compose_imprimitive(const QuadraticForm& nq, const QuadraticForm& mq)
{
    require_positive_definite(nq);
    require_positive_definite(mq);
    Int D = nq.discriminant();
    if (mq.discriminant() != D)
        throw math_error("compose_imprimitive: n^2 disc Q != m^2 disc Q' for " + nq.str() + ", " + mq.str());
    auto [n, q] = content(nq);
    auto [m, qq] = content(mq);
    if (gcd(n, m) != 1)
        throw math_error("compose_imprimitive: contents " + n.get_str() + " and " + m.get_str() + " are not coprime");
    QuadraticForm q1 = coprime_representative(q, 2 * m * D);
    QuadraticForm q2 = coprime_representative(qq, 2 * n * q1.a * D);
    return dirichlet_compose(n * q1, m * q2);
}

/// Product of the attached modules; the result lives at conductor gcd(f_A, f_B).
inline ExtendedClass gcompose(const ExtendedClass& x, const ExtendedClass& y)
{
    if (x.d_K != y.d_K)
        throw math_error("gcompose: classes over different fields " + x.str() + ", " + y.str());
    auto mc = module_to_class(module_product(form_to_module(x.cls.repr), form_to_module(y.cls.repr)));
    return {mc.f, mc.cls, x.d_K};
}

/// Same class via forms: d_A Q_A * d_B Q_B at the common discriminant, content dropped.
inline ExtendedClass gcompose_via_forms(const ExtendedClass& x, const ExtendedClass& y)
{
    if (x.d_K != y.d_K)
        throw math_error("gcompose: classes over different fields " + x.str() + ", " + y.str());
    Int f = lcm(x.f, y.f);
    QuadraticForm composed = compose_imprimitive((f / x.f) * x.cls.repr, (f / y.f) * y.cls.repr);
    auto [m, prim] = content(composed);
    if (m != (f / x.f) * (f / y.f))
        throw std::logic_error("gcompose_via_forms: unexpected content " + m.get_str());
    return ExtendedClass::of(make_class(prim));
}

/// A class of C(D) mapping to `base` under composition with the principal class of D0.
inline FormClass lift_class(const FormClass& base, const Int& D)
{
    auto [d_K, f0] = split_discriminant(base.D);
    auto [d_K2, f] = split_discriminant(D);
    if (d_K != d_K2 || !divides(f0, f))
        throw math_error("lift_class: " + D.get_str() + " is not a multiple f^2 d_K of " + base.D.get_str());
    Int d = f / f0;
    QuadraticForm r = coprime_representative(base.repr, 2 * D);
    QuadraticForm lifted{r.a, d * r.b, d * d * r.c};
    if (!is_primitive(lifted))
        throw std::logic_error("lift_class: lifted form " + lifted.str() + " is not primitive");
    return make_class(lifted);
}

/// R in C(D) acting on a class at a conductor dividing f(D).
inline ExtendedClass act(const FormClass& r, const ExtendedClass& x)
{
    auto ext = ExtendedClass::of(r);
    if (ext.d_K != x.d_K || !divides(x.f, ext.f))
        throw math_error("act: conductor " + x.f.get_str() + " does not divide " + ext.f.get_str());
    return gcompose(ext, x);
}

struct StabilizerSubgroup {
    Int D;
    std::vector<FormClass> members; // sorted

    std::size_t order() const { return members.size(); }
};

/// Classes of C(D) fixing C(D0) pointwise, i.e. fixing its principal class.
inline StabilizerSubgroup stabilizer(const ClassGroup& group, const Int& D0)
{
    auto [d_K, f] = split_discriminant(group.discriminant());
    auto [d_K0, f0] = split_discriminant(D0);
    if (d_K != d_K0 || !divides(f0, f))
        throw math_error("stabilizer: " + D0.get_str() + " does not divide " + group.discriminant().get_str());
    auto p0 = ExtendedClass::principal(d_K, f0);
    StabilizerSubgroup s{group.discriminant(), {}};
    for (const auto& u : group.elements())
        if (act(u, p0) == p0)
            s.members.push_back(u);
    return s;
}

inline StabilizerSubgroup stabilizer(const Int& D, const Int& D0) { return stabilizer(ClassGroup(D), D0); }

/// Stab C(D1) and Stab C(D2) intersected inside C(D); lcm of the conductors must be f(D).
inline StabilizerSubgroup stab_intersection(const Int& D, const Int& D1, const Int& D2)
{
    auto f = split_discriminant(D).f;
    auto f1 = split_discriminant(D1).f, f2 = split_discriminant(D2).f;
    if (lcm(f1, f2) != f)
        throw math_error("stab_intersection: lcm of conductors " + f1.get_str() + ", " + f2.get_str() +
                         " is not " + f.get_str());
    ClassGroup group(D);
    auto s1 = stabilizer(group, D1);
    auto s2 = stabilizer(group, D2);
    StabilizerSubgroup out{D, {}};
    for (const auto& u : s1.members)
        if (std::find(s2.members.begin(), s2.members.end(), u) != s2.members.end())
            out.members.push_back(u);
    return out;
}

} // namespace cmsurf

#endif // CMSURF_GCOMP_HPP
