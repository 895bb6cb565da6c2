// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Decompositions A = E1 x E2 of a singular abelian surface with oriented
// transcendental lattice n Q0: brute-force enumeration through the period
// oracle, construction through the class group action, and the closed-form
// counts they are checked against.

#ifndef CMSURF_DECOMPOSER_HPP
#define CMSURF_DECOMPOSER_HPP

#include "cmsurf/gcomp.hpp"
#include "cmsurf/periods.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cmsurf {

/// The curve E_tau(cls) with CM by the order of conductor f.
using CurveClass = ExtendedClass;

/// Ordered pair (strict isomorphism).
struct DecompositionPair {
    CurveClass first, second;

    bool operator==(const DecompositionPair&) const = default;
    bool operator<(const DecompositionPair& o) const
    {
        if (!(first == o.first))
            return first < o.first;
        return second < o.second;
    }
};

enum class CountFormula {
    unique,    ///< T = (1,0,1) or (1,1,1): a single self-product
    primitive, ///< n = 1: h(D)
    scaled,    ///< 2^tau(n) h(n^2 D)
    gaussian,  ///< Q0 = (1,0,1), n > 1: (1 + 2^(tau(n)-1)) h(O_{K,n})
    hexagonal, ///< Q0 = (1,1,1), n > 1: (2/3)(2 + 2^(tau(n)-1)) h(O_{K,n})
};

inline std::string to_string(CountFormula f)
{
    switch (f) {
    case CountFormula::unique: return "unique";
    case CountFormula::primitive: return "primitive";
    case CountFormula::scaled: return "scaled";
    case CountFormula::gaussian: return "gaussian";
    case CountFormula::hexagonal: return "hexagonal";
    }
    return "?";
}

struct FormulaCount {
    Int value;
    CountFormula formula;
};

struct DecompositionReport {
    Int n;
    QuadraticForm q0; ///< reduced primitive part of the target
    std::vector<DecompositionPair> pairs;
    std::size_t delta_tilde = 0; ///< ordered pairs
    std::size_t delta = 0;       ///< unordered pairs
    std::size_t delta0 = 0;      ///< self-products
    std::optional<FormulaCount> predicted;
    bool possibly_incomplete = false;

    /// Survivors per conductor pair (f1, f2).
    std::map<std::pair<Int, Int>, std::size_t> per_conductors() const
    {
        std::map<std::pair<Int, Int>, std::size_t> out;
        for (const auto& p : pairs)
            ++out[{p.first.f, p.second.f}];
        return out;
    }
};

inline void tally(DecompositionReport& r)
{
    std::sort(r.pairs.begin(), r.pairs.end());
    r.pairs.erase(std::unique(r.pairs.begin(), r.pairs.end()), r.pairs.end());
    r.delta_tilde = r.pairs.size();
    r.delta0 = 0;
    std::set<std::pair<CurveClass, CurveClass>> unordered;
    for (const auto& p : r.pairs) {
        if (p.first == p.second)
            ++r.delta0;
        unordered.insert(p.second < p.first ? std::pair{p.second, p.first} : std::pair{p.first, p.second});
    }
    r.delta = unordered.size();
}

/// Ordered (f1, f2) with gcd(f1, f2) = f0 and f1 f2 = n f0^2.
inline std::vector<std::pair<Int, Int>> admissible_conductor_pairs(const Int& n, const Int& f0)
{
    if (n < 1 || f0 < 1)
        throw math_error("admissible_conductor_pairs: n and f0 must be positive");
    std::vector<std::pair<Int, Int>> out;
    for (const auto& [e1, e2] : unitary_splittings(n))
        out.emplace_back(f0 * e1, f0 * e2);
    return out;
}

namespace detail {

struct Target {
    Int d_K, f0;
    QuadraticForm q0;      // reduced primitive
    QuadraticForm scaled;  // n q0, reduced
};

inline Target make_target(const Int& n, const QuadraticForm& q0)
{
    if (n < 1)
        throw math_error("decomposition target: n must be positive");
    if (!is_primitive(q0))
        throw math_error("decomposition target: Q0 = " + q0.str() + " must be primitive");
    require_positive_definite(q0);
    auto [d_K, f0] = split_discriminant(q0.discriminant());
    auto r = reduced(q0);
    return {d_K, f0, r, n * r};
}

inline bool is_unit_lattice(const QuadraticForm& q0)
{
    Int D = q0.discriminant();
    return D == -3 || D == -4;
}

} // namespace detail

/// Oriented T(E_X x E_Y) for every (X, Y) in C(f1^2 d_K) x C(f2^2 d_K).
class SurvivorTable {
public:
    SurvivorTable(const Int& d_K, const Int& f1, const Int& f2)
    {
        auto curves = [&](const Int& f) {
            std::vector<std::pair<CurveClass, KPoint>> out;
            for (const auto& q : reduced_forms(f * f * d_K))
                out.push_back({CurveClass{f, {q, f * f * d_K}, d_K}, cm_point(q)});
            return out;
        };
        auto c1 = curves(f1), c2 = curves(f2);
        for (const auto& [x, tx] : c1)
            for (const auto& [y, ty] : c2)
                by_form_[transcendental_form(tx, ty)].push_back({x, y});
    }

    const std::vector<DecompositionPair>& survivors(const QuadraticForm& target) const
    {
        static const std::vector<DecompositionPair> none;
        auto it = by_form_.find(target);
        return it == by_form_.end() ? none : it->second;
    }
    const std::map<QuadraticForm, std::vector<DecompositionPair>>& all() const { return by_form_; }

private:
    std::map<QuadraticForm, std::vector<DecompositionPair>> by_form_;
};

/// Memoizes survivor tables by (d_K, f1, f2) across a sweep.
class SurvivorCache {
public:
    const SurvivorTable& get(const Int& d_K, const Int& f1, const Int& f2)
    {
        auto key = std::make_tuple(d_K, f1, f2);
        auto it = tables_.find(key);
        if (it == tables_.end())
            it = tables_.emplace(key, SurvivorTable(d_K, f1, f2)).first;
        return it->second;
    }

private:
    std::map<std::tuple<Int, Int, Int>, SurvivorTable> tables_;
};

inline FormulaCount ma_count(const Int& n, const QuadraticForm& q0)
{
    auto t = detail::make_target(n, q0);
    Int D0 = q0.discriminant();
    if (n == 1) {
        if (detail::is_unit_lattice(q0))
            return {1, CountFormula::unique};
        return {Int(class_number(D0)), CountFormula::primitive};
    }
    unsigned long k = tau(n);
    if (D0 == -4)
        return {(1 + pow(Int(2), k - 1)) * class_number_formula(-4, n), CountFormula::gaussian};
    if (D0 == -3) {
        Rat v = make_rat(2, 3) * Rat(2 + pow(Int(2), k - 1)) * Rat(class_number_formula(-3, n));
        v.canonicalize();
        return {to_int(v), CountFormula::hexagonal};
    }
    return {pow(Int(2), k) * Int(class_number(n * n * D0)), CountFormula::scaled};
}

/// Brute force: every candidate pair over every admissible conductor pair,
/// kept iff its oriented transcendental lattice is n Q0.
inline DecompositionReport enumerate_decompositions(const Int& n, const QuadraticForm& q0, SurvivorCache* cache = nullptr)
{
    auto t = detail::make_target(n, q0);
    DecompositionReport r{n, t.q0, {}};
    SurvivorCache local;
    SurvivorCache& c = cache ? *cache : local;
    for (const auto& [f1, f2] : admissible_conductor_pairs(n, t.f0)) {
        const auto& s = c.get(t.d_K, f1, f2).survivors(t.scaled);
        r.pairs.insert(r.pairs.end(), s.begin(), s.end());
    }
    tally(r);
    r.predicted = ma_count(n, t.q0);
    return r;
}

/// Pairs (Q1 * R, Q2 * R^-1) for R in C(D), (Q1, Q2) the lifts of (Q0, P0) to
/// each admissible conductor pair. Complete unless Q0 is (1,0,1) or (1,1,1).
inline DecompositionReport classify_via_action(const Int& n, const QuadraticForm& q0)
{
    auto t = detail::make_target(n, q0);
    DecompositionReport r{n, t.q0, {}};
    r.possibly_incomplete = detail::is_unit_lattice(t.q0);
    FormClass base = make_class(t.q0);
    FormClass unit = principal_class(base.D);
    Int f = n * t.f0;
    ClassGroup group(f * f * t.d_K);
    for (const auto& [f1, f2] : admissible_conductor_pairs(n, t.f0)) {
        auto x = ExtendedClass::of(lift_class(base, f1 * f1 * t.d_K));
        auto y = ExtendedClass::of(lift_class(unit, f2 * f2 * t.d_K));
        for (const auto& rc : group.elements())
            r.pairs.push_back({act(rc, x), act(inverse(rc), y)});
    }
    tally(r);
    r.predicted = ma_count(n, t.q0);
    return r;
}

struct SweepRow {
    Int d_K, f0;
    QuadraticForm q0;
    Int n;
    std::size_t delta_tilde;
    FormulaCount predicted;

    bool match() const { return Int(delta_tilde) == predicted.value; }
};

/// Brute force against the closed-form count for every primitive reduced Q0
/// with conductor <= f0_max and every n <= n_max.
inline std::vector<SweepRow> verify_ma(const Int& d_K, const Int& f0_max, const Int& n_max, SurvivorCache* cache = nullptr)
{
    if (!is_fundamental(d_K))
        throw math_error("verify_ma: " + d_K.get_str() + " is not a fundamental discriminant");
    if (f0_max < 1 || n_max < 1)
        throw math_error("verify_ma: bounds must be positive");
    SurvivorCache local;
    SurvivorCache& c = cache ? *cache : local;
    std::vector<SweepRow> rows;
    for (Int f0 = 1; f0 <= f0_max; ++f0)
        for (const auto& q0 : reduced_forms(f0 * f0 * d_K))
            for (Int n = 1; n <= n_max; ++n) {
                auto rep = enumerate_decompositions(n, q0, &c);
                rows.push_back({d_K, f0, q0, n, rep.delta_tilde, *rep.predicted});
            }
    return rows;
}

/// 2^tau(n) h(f) h(f0) against the sum of h(f1) h(f2) over admissible pairs,
/// with f = n f0. For n = 1 the single pair (f0, f0) is the whole sum.
/// nullopt when d_K is -3 or -4 and f0 = 1 (not covered).
inline std::optional<bool> verify_sum_identity(const Int& d_K, const Int& f0, const Int& n)
{
    if ((d_K == -3 || d_K == -4) && f0 == 1)
        return std::nullopt;
    auto pairs = admissible_conductor_pairs(n, f0);
    Int lhs = Int(pairs.size()) * class_number_formula(d_K, n * f0) * class_number_formula(d_K, f0);
    Int rhs = 0;
    for (const auto& [f1, f2] : pairs)
        rhs += class_number_formula(d_K, f1) * class_number_formula(d_K, f2);
    return lhs == rhs;
}

} // namespace cmsurf

#endif // CMSURF_DECOMPOSER_HPP
