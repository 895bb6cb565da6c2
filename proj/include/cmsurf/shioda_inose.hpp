// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Numerical j-invariants of CM points and the K3 elliptic fibration
//   y^2 = x^3 - 3AB t^4 x + AB t^5 (B t^2 - 2B t + 1),  A = j1 j2, B = (1-j1)(1-j2),
// attached to each decomposition. The only floating point in the library.

#ifndef CMSURF_SHIODA_INOSE_HPP
#define CMSURF_SHIODA_INOSE_HPP

#include "cmsurf/decomposer.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace cmsurf {

using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned default_precision_bits = 256;
inline constexpr unsigned max_series_terms = 4000;

/// Sets the working precision of newly created Reals for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision())
    {
        Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

struct Complex {
    Real re, im;
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator/(const Complex& a, const Complex& b)
{
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline Real abs(const Complex& a) { return sqrt(a.re * a.re + a.im * a.im); }

inline Real to_real(const Int& n) { return Real(n.get_str()); }
inline Real to_real(const Rat& q) { return to_real(q.get_num()) / to_real(q.get_den()); }

struct JValue {
    Complex value;
    Real error_bound; ///< absolute bound on |computed - j|
    unsigned precision_bits = default_precision_bits;
    std::size_t terms = 0;
};

/// Moves a CM point into |Re| <= 1/2, |tau| >= 1 using exact arithmetic.
inline KPoint to_fundamental_domain(KPoint t)
{
    for (;;) {
        Int k = floor_div(2 * t.re.get_num() + t.re.get_den(), 2 * t.re.get_den()); // round(re)
        t.re -= k;
        Rat n2 = t.re * t.re + t.coeff * t.coeff * Rat(-t.radicand);
        if (n2 >= 1)
            return t;
        t.re = -t.re / n2;
        t.coeff = t.coeff / n2;
    }
}

/// j(t) = E4^3 / Delta from the q-expansions, truncated where the tail of both
/// series falls below 2^-(bits + 8) relative to their leading terms.
inline JValue j_invariant(const KPoint& tau, unsigned bits = default_precision_bits)
{
    if (sgn(tau.coeff) <= 0)
        throw math_error("j_invariant: point not in the upper half plane");
    PrecisionScope scope(bits + 32);
    KPoint t = to_fundamental_domain(tau);
    const Real pi = boost::math::constants::pi<Real>();
    Real x = to_real(t.re);
    Real y = to_real(t.coeff) * sqrt(to_real(Int(-t.radicand)));
    Real qabs = exp(-2 * pi * y);
    Complex q{qabs * cos(2 * pi * x), qabs * sin(2 * pi * x)};

    // tails: E4 beyond N is at most 300 (N+1)^3 |q|^(N+1) / (1 - 2|q|), the log of
    // the eta product at most 24 |q|^(N+1) / (1 - |q|)^2
    auto unattainable = [&] {
        return math_error("j_invariant: precision " + std::to_string(bits) + " bits unattainable within " +
                          std::to_string(max_series_terms) + " series terms");
    };
    // |q|^N must reach 2^-bits
    if ((bits + 8) * 0.6931471805599453 / (2 * 3.141592653589793 * y.convert_to<double>()) > max_series_terms)
        throw unattainable();
    const Real target = pow(Real(2), -static_cast<int>(bits) - 8);
    std::size_t terms = 1;
    Real tail_e4, tail_delta;
    Real qpow = qabs * qabs; // |q|^(terms + 1)
    for (;; ++terms, qpow *= qabs) {
        if (terms > max_series_terms)
            throw unattainable();
        Real m = static_cast<double>(terms + 1);
        tail_e4 = 300 * m * m * m * qpow / (1 - 2 * qabs);
        tail_delta = 24 * qpow / ((1 - qabs) * (1 - qabs));
        if (tail_e4 < target && tail_delta < target)
            break;
    }

    Complex e4{1, 0};
    Complex eta{1, 0};
    Complex qn{1, 0};
    for (std::size_t n = 1; n <= terms; ++n) {
        qn = qn * q;
        unsigned long long sigma3 = 0;
        for (std::size_t d = 1; d <= n; ++d)
            if (n % d == 0)
                sigma3 += static_cast<unsigned long long>(d) * d * d;
        Real coef = 240 * Real(sigma3);
        e4 = e4 + Complex{coef * qn.re, coef * qn.im};
        eta = eta * (Complex{1, 0} - qn);
    }
    Complex eta2 = eta * eta, eta4 = eta2 * eta2, eta8 = eta4 * eta4, eta16 = eta8 * eta8;
    Complex delta = q * eta16 * eta8;
    Complex j = e4 * e4 * e4 / delta;

    // relative error: 3 |tail E4| / |E4| + |tail log Delta| + rounding
    Real rel = 3 * tail_e4 / (abs(e4) - tail_e4) + 2 * tail_delta + Real(terms) * pow(Real(2), -static_cast<int>(bits) - 24);
    return {j, abs(j) * rel + pow(Real(2), -static_cast<int>(bits)), bits, terms};
}

struct SandwichModel {
    CurveClass first, second;
    JValue j1, j2;
    Complex A, B;
    Real error_bound;

    std::string fibration(int digits = 20) const
    {
        auto c = [&](const Complex& z) {
            std::string s = "(" + z.re.str(digits) + (z.im < 0 ? " - " : " + ") + Real(abs(z.im)).str(digits) + "*i)";
            return s;
        };
        std::string a = c(A), b = c(B);
        return "y^2 = x^3 - 3*" + a + "*" + b + "*t^4*x + " + a + "*" + b + "*t^5*(" + b + "*t^2 - 2*" + b +
               "*t + 1)";
    }
};

inline SandwichModel sandwich_model(const CurveClass& e1, const CurveClass& e2, unsigned bits = default_precision_bits)
{
    if (e1.d_K != e2.d_K)
        throw math_error("sandwich_model: curves over different fields");
    JValue j1 = j_invariant(cm_point(e1.cls.repr), bits);
    JValue j2 = j_invariant(cm_point(e2.cls.repr), bits);
    PrecisionScope scope(bits + 32);
    Complex one{1, 0};
    Complex A = j1.value * j2.value;
    Complex B = (one - j1.value) * (one - j2.value);
    Real m1 = abs(j1.value) + 1, m2 = abs(j2.value) + 1;
    Real err = m1 * j2.error_bound + m2 * j1.error_bound + j1.error_bound * j2.error_bound;
    return {e1, e2, j1, j2, A, B, err};
}

/// One model per unordered decomposition; A and B are symmetric in (j1, j2).
inline std::vector<SandwichModel> shioda_inose_models(const Int& n, const QuadraticForm& q0,
                                                      unsigned bits = default_precision_bits)
{
    auto report = enumerate_decompositions(n, q0);
    std::vector<SandwichModel> out;
    std::set<std::pair<CurveClass, CurveClass>> seen;
    for (const auto& p : report.pairs) {
        auto key = p.second < p.first ? std::pair{p.second, p.first} : std::pair{p.first, p.second};
        if (!seen.insert(key).second)
            continue;
        out.push_back(sandwich_model(key.first, key.second, bits));
    }
    return out;
}

/// Bits needed to resolve every coefficient of the class polynomial of D to
/// 2^-margin: log2 of prod (1 + |j|) bounds the coefficient height.
inline unsigned class_polynomial_bits(const Int& D, unsigned margin = 64)
{
    PrecisionScope scope(64);
    Real height = 0;
    for (const auto& q : reduced_forms(D))
        height += log2(abs(j_invariant(cm_point(q), 64).value) + 1);
    return static_cast<unsigned>(ceil(height).convert_to<double>()) + margin;
}

/// Max distance of the coefficients of prod (X - j(Q)) over C(D) from the
/// nearest (real) integers.
inline Real class_polynomial_defect(const Int& D, unsigned bits = default_precision_bits)
{
    std::vector<JValue> js;
    for (const auto& q : reduced_forms(D))
        js.push_back(j_invariant(cm_point(q), bits));
    PrecisionScope scope(bits + 32);
    std::vector<Complex> poly{{1, 0}}; // coefficients, lowest degree first
    for (const auto& j : js) {
        std::vector<Complex> next(poly.size() + 1, Complex{0, 0});
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] = next[k + 1] + poly[k];
            next[k] = next[k] - poly[k] * j.value;
        }
        poly = std::move(next);
    }
    Real worst = 0;
    for (const auto& c : poly) {
        Real d = abs(c.re - round(c.re));
        worst = std::max(worst, std::max(d, Real(abs(c.im))));
    }
    return worst;
}

} // namespace cmsurf

#endif // CMSURF_SHIODA_INOSE_HPP
