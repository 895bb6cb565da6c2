// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef CMSURF_INTEGER_HPP
#define CMSURF_INTEGER_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <tuple>

namespace cmsurf {

using Int = mpz_class;
using Rat = mpq_class;

/// Base of every mathematical-precondition failure (CLI exit code 1).
class math_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_discriminant : public math_error {
public:
    explicit invalid_discriminant(const Int& d)
        : math_error("invalid discriminant " + d.get_str()) {}
};

class search_exhausted : public math_error {
public:
    using math_error::math_error;
};

inline Int gcd(const Int& a, const Int& b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcd(const Int& a, const Int& b, const Int& c) { return gcd(gcd(a, b), c); }

inline Int lcm(const Int& a, const Int& b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

/// Returns (g, u, v) with u*a + v*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> xgcd(const Int& a, const Int& b)
{
    Int g, u, v;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, u, v};
}

inline Int floor_div(const Int& a, const Int& b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Least nonnegative residue of a modulo |m|.
inline Int mod(const Int& a, const Int& m)
{
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

inline Int isqrt(const Int& n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline Int pow(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline int sign(const Int& a) { return sgn(a); }
inline int sign(const Rat& a) { return sgn(a); }

inline Int numerator(const Rat& q) { return q.get_num(); }
inline Int denominator(const Rat& q) { return q.get_den(); }

inline Rat make_rat(const Int& n, const Int& d = 1)
{
    Rat q(n, d);
    q.canonicalize();
    return q;
}

/// Throws if a rational is not integral; returns its value otherwise.
inline Int to_int(const Rat& q)
{
    if (q.get_den() != 1)
        throw std::logic_error("non-integral rational " + q.get_str());
    return q.get_num();
}

inline long to_long(const Int& a)
{
    if (!a.fits_slong_p())
        throw std::overflow_error("integer does not fit in long: " + a.get_str());
    return a.get_si();
}

} // namespace cmsurf

#endif // CMSURF_INTEGER_HPP
