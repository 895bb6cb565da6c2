// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef CMSURF_NUMTHEORY_HPP
#define CMSURF_NUMTHEORY_HPP

#include "cmsurf/integer.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace cmsurf {

struct PrimePower {
    Int prime;
    unsigned long exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Prime factorization with strictly increasing primes; empty for 1.
struct Factorization {
    std::vector<PrimePower> prime_powers;

    Int value() const
    {
        Int v = 1;
        for (const auto& pp : prime_powers)
            v *= pow(pp.prime, pp.exponent);
        return v;
    }
    std::size_t distinct_primes() const { return prime_powers.size(); }
};

inline constexpr unsigned long default_trial_bound = 1000000;

/// Trial division up to `bound`. A cofactor left without factors below the
/// bound is accepted only if it passes a probabilistic primality test;
/// otherwise the call fails rather than return a partial answer.
inline Factorization factorize(const Int& n, unsigned long bound = default_trial_bound)
{
    if (n < 1)
        throw math_error("factorize: argument must be positive, got " + n.get_str());
    Factorization f;
    Int m = n;
    auto strip = [&](unsigned long p) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e > 0)
            f.prime_powers.push_back({Int(p), e});
    };
    strip(2);
    unsigned long p = 3;
    for (; p <= bound && Int(p) * p <= m; p += 2)
        strip(p);
    if (m > 1) {
        bool prime = Int(p) * p > m || mpz_probab_prime_p(m.get_mpz_t(), 30) > 0;
        if (!prime)
            throw math_error("factorize: " + n.get_str() + " has a composite cofactor " + m.get_str() +
                             " beyond the trial-division bound " + std::to_string(bound));
        f.prime_powers.push_back({m, 1});
    }
    return f;
}

/// Number of distinct prime divisors, with tau(1) = 1.
inline unsigned long tau(const Int& n)
{
    if (n == 1)
        return 1;
    return factorize(n).distinct_primes();
}

/// Number of ordered splittings n = e1*e2 with gcd(e1, e2) = 1.
inline unsigned long coprime_splittings(const Int& n)
{
    return 1ul << factorize(n).distinct_primes();
}

inline int kronecker(const Int& a, const Int& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline bool is_discriminant(const Int& d)
{
    if (d >= 0)
        return false;
    Int r = mod(d, 4);
    return r == 0 || r == 1;
}

inline bool is_squarefree(const Int& n)
{
    for (const auto& pp : factorize(abs(n)).prime_powers)
        if (pp.exponent > 1)
            return false;
    return true;
}

inline bool is_fundamental(const Int& d)
{
    if (!is_discriminant(d))
        return false;
    if (mod(d, 4) == 1)
        return is_squarefree(d);
    Int m = d / 4;
    Int r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
}

/// D = f^2 * d_K with d_K fundamental.
struct SplitDiscriminant {
    Int d_K;
    Int f;

    bool operator==(const SplitDiscriminant&) const = default;
};

inline SplitDiscriminant split_discriminant(const Int& D)
{
    if (!is_discriminant(D))
        throw invalid_discriminant(D);
    Int square_part = 1;
    Int core = -1;
    for (const auto& pp : factorize(-D).prime_powers) {
        square_part *= pow(pp.prime, pp.exponent / 2);
        if (pp.exponent % 2 == 1)
            core *= pp.prime;
    }
    if (mod(core, 4) == 1)
        return {core, square_part};
    return {4 * core, square_part / 2};
}

/// Number of units of the maximal order of discriminant d_K < 0.
inline int unit_count(const Int& d_K)
{
    if (d_K == -4)
        return 4;
    if (d_K == -3)
        return 6;
    return 2;
}

/// Positive divisors in increasing order.
inline std::vector<Int> divisors(const Int& n)
{
    std::vector<Int> ds{1};
    for (const auto& pp : factorize(n).prime_powers) {
        std::size_t base = ds.size();
        Int pk = 1;
        for (unsigned long e = 1; e <= pp.exponent; ++e) {
            pk *= pp.prime;
            for (std::size_t i = 0; i < base; ++i)
                ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// Ordered pairs (e1, e2) with e1*e2 = n and gcd(e1, e2) = 1, listed as
/// (e1, e2), (e2, e1) for increasing e1 < e2; n = 1 gives the single pair (1, 1).
inline std::vector<std::pair<Int, Int>> unitary_splittings(const Int& n)
{
    if (n == 1)
        return {{1, 1}};
    std::vector<std::pair<Int, Int>> out;
    for (const auto& e1 : divisors(n)) {
        Int e2 = n / e1;
        if (e1 >= e2)
            break;
        if (gcd(e1, e2) != 1)
            continue;
        out.emplace_back(e1, e2);
        out.emplace_back(e2, e1);
    }
    return out;
}

} // namespace cmsurf

#endif // CMSURF_NUMTHEORY_HPP
