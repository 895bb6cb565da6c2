// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef CMSURF_CLASSGROUP_HPP
#define CMSURF_CLASSGROUP_HPP

#include "cmsurf/forms.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace cmsurf {

/// Proper class of a primitive positive definite form, held by its reduced representative.
struct FormClass {
    QuadraticForm repr;
    Int D;

    bool operator==(const FormClass&) const = default;
    bool operator<(const FormClass& o) const { return D != o.D ? D < o.D : repr < o.repr; }
    std::string str() const { return "[" + repr.str() + "]"; }
};

inline FormClass make_class(const QuadraticForm& q)
{
    require_positive_definite(q);
    if (!is_primitive(q))
        throw math_error("form " + q.str() + " is not primitive");
    return {reduced(q), q.discriminant()};
}

inline FormClass principal_class(const Int& D) { return {principal_form(D), D}; }

inline bool is_principal(const FormClass& x) { return x.repr.a == 1; }

/// Dirichlet composition (a a', B, C) for forms of equal discriminant with
/// gcd(a, a', (b + b')/2) = 1; B is the least nonnegative solution of
/// B = b mod 2a, B = b' mod 2a', B^2 = D mod 4aa'.
inline QuadraticForm dirichlet_compose(const QuadraticForm& f, const QuadraticForm& g)
{
    Int D = f.discriminant();
    if (g.discriminant() != D)
        throw math_error("composition of forms with different discriminants " + f.str() + ", " + g.str());
    Int s = (f.b + g.b) / 2;
    auto [e1, u1, v1] = xgcd(f.a, g.a);
    auto [e, u2, w] = xgcd(e1, s);
    if (e != 1)
        throw std::logic_error("dirichlet_compose: gcd(a, a', (b+b')/2) != 1 for " + f.str() + ", " + g.str());
    Int u = u2 * u1, v = u2 * v1;
    Int A = f.a * g.a;
    Int B = mod(u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + D) / 2, 2 * A);
    Int num = B * B - D;
    if (!divides(4 * A, num) || !divides(2 * f.a, B - f.b) || !divides(2 * g.a, B - g.b))
        throw std::logic_error("dirichlet_compose: congruence system failed for " + f.str() + ", " + g.str());
    return {A, B, num / (4 * A)};
}

/// Composition in C(D). When gcd(a, a', (b + b')/2) != 1 the second form is
/// first replaced by an equivalent one with leading coefficient prime to 2aD.
inline FormClass compose(const QuadraticForm& f, const QuadraticForm& g)
{
    if (f.discriminant() != g.discriminant())
        throw math_error("compose: discriminants differ: " + f.str() + ", " + g.str());
    if (!is_primitive(f) || !is_primitive(g))
        throw math_error("compose: forms must be primitive: " + f.str() + ", " + g.str());
    require_positive_definite(f);
    require_positive_definite(g);
    QuadraticForm h = g;
    if (gcd(f.a, g.a, (f.b + g.b) / 2) != 1)
        h = coprime_representative(g, 2 * f.a * f.discriminant());
    return make_class(dirichlet_compose(f, h));
}

inline FormClass compose(const FormClass& x, const FormClass& y) { return compose(x.repr, y.repr); }

inline FormClass inverse(const FormClass& x) { return {reduced(conjugate(x.repr)), x.D}; }

inline FormClass power(const FormClass& x, Int k)
{
    FormClass result = principal_class(x.D);
    FormClass base = x;
    if (k < 0) {
        base = inverse(base);
        k = -k;
    }
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t()))
            result = compose(result, base);
        k /= 2;
        if (k > 0)
            base = compose(base, base);
    }
    return result;
}

/// Reduced primitive forms of discriminant D in lexicographic (a, b, c) order.
inline std::vector<QuadraticForm> reduced_forms(const Int& D)
{
    if (!is_discriminant(D))
        throw invalid_discriminant(D);
    std::vector<QuadraticForm> out;
    Int amax = isqrt(-D / 3);
    for (Int a = 1; a <= amax; ++a)
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (!divides(4 * a, num))
                continue;
            Int c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (gcd(a, b, c) == 1)
                out.push_back({a, b, c});
        }
    return out;
}

inline std::size_t class_number(const Int& D) { return reduced_forms(D).size(); }

class ClassGroup {
public:
    explicit ClassGroup(const Int& D) : D_(D)
    {
        for (const auto& q : reduced_forms(D)) {
            index_.emplace(q, elements_.size());
            elements_.push_back({q, D});
        }
        structure_ = compute_structure();
    }

    const Int& discriminant() const { return D_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<FormClass>& elements() const { return elements_; }
    /// Invariant factors n1 | n2 | ...; empty for the trivial group.
    const std::vector<Int>& structure() const { return structure_; }

    FormClass identity() const { return principal_class(D_); }

    std::size_t index_of(const FormClass& x) const
    {
        auto it = index_.find(x.repr);
        if (x.D != D_ || it == index_.end())
            throw std::out_of_range("class " + x.str() + " is not in C(" + D_.get_str() + ")");
        return it->second;
    }
    bool contains(const FormClass& x) const { return x.D == D_ && index_.count(x.repr) > 0; }

    Int element_order(const FormClass& x) const
    {
        FormClass y = x;
        Int k = 1;
        while (!is_principal(y)) {
            y = compose(y, x);
            ++k;
        }
        return k;
    }

private:
    std::vector<Int> compute_structure() const
    {
        Int h = Int(elements_.size());
        // for each prime p | h, cyclic p-factor exponents in decreasing order
        std::vector<std::vector<std::pair<Int, unsigned long>>> columns;
        for (const auto& pp : factorize(h).prime_powers) {
            std::vector<unsigned long> counts{0}; // log_p #{x : p^j x = 0}
            std::vector<FormClass> current = elements_;
            for (unsigned long j = 1; j <= pp.exponent; ++j) {
                std::size_t killed = 0;
                for (auto& x : current) {
                    x = power(x, pp.prime);
                    if (is_principal(x))
                        ++killed;
                }
                unsigned long s = 0;
                for (Int n = killed; n > 1; n /= pp.prime)
                    ++s;
                counts.push_back(s);
            }
            // number of factors with exponent >= j is counts[j] - counts[j-1]
            std::vector<std::pair<Int, unsigned long>> exps;
            for (unsigned long j = pp.exponent; j >= 1; --j) {
                unsigned long at_least_j = counts[j] - counts[j - 1];
                unsigned long at_least_next = j < pp.exponent ? counts[j + 1] - counts[j] : 0;
                for (unsigned long k = at_least_next; k < at_least_j; ++k)
                    exps.push_back({pp.prime, j});
            }
            columns.push_back(exps);
        }
        std::size_t rank = 0;
        for (const auto& c : columns)
            rank = std::max(rank, c.size());
        std::vector<Int> factors(rank, 1);
        for (const auto& c : columns)
            for (std::size_t i = 0; i < c.size(); ++i)
                factors[i] *= pow(c[i].first, c[i].second);
        std::reverse(factors.begin(), factors.end());
        return factors;
    }

    Int D_;
    std::vector<FormClass> elements_;
    std::map<QuadraticForm, std::size_t> index_;
    std::vector<Int> structure_;
};

inline ClassGroup enumerate_class_group(const Int& D) { return ClassGroup(D); }

/// h(O_{K,f}) = h(O_K) f / [O_K^x : O_{K,f}^x] * prod_{p | f} (1 - (d_K/p)/p), in exact rationals.
inline Int class_number_formula(const Int& d_K, const Int& f)
{
    if (!is_fundamental(d_K))
        throw math_error("class_number_formula: " + d_K.get_str() + " is not a fundamental discriminant");
    if (f < 1)
        throw math_error("class_number_formula: conductor must be positive");
    Rat h = Rat(Int(class_number(d_K))) * Rat(f);
    if (f > 1)
        h /= unit_count(d_K) / 2;
    for (const auto& pp : factorize(f).prime_powers)
        h *= Rat(1) - make_rat(kronecker(d_K, pp.prime), pp.prime);
    h.canonicalize();
    return to_int(h);
}

} // namespace cmsurf

#endif // CMSURF_CLASSGROUP_HPP
