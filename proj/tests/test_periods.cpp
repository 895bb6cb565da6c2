// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include "cmsurf/periods.hpp"

#include <gtest/gtest.h>

using namespace cmsurf;

namespace {

using Q = QuadraticForm;

const KPoint i_pt{0, 1, -1};
const KPoint omega{make_rat(-1, 2), make_rat(1, 2), -3};

IntVector unit(int k)
{
    IntVector v(6, 0);
    v[k] = 1;
    return v;
}

IntVector combo(int j, int k, long sk)
{
    IntVector v = unit(j);
    v[k] += sk;
    return v;
}

std::array<std::array<Int, 2>, 2> gram(long a, long b, long c) { return {{{Int(a), Int(b)}, {Int(b), Int(c)}}}; }

} // namespace

TEST(PeriodVector, Coordinates)
{
    auto p = period_vector(i_pt, i_pt);
    KElement i = to_kelement(i_pt), one = KElement::from_int(1, -4), zero = KElement::from_int(0, -4);
    std::array<KElement, 6> want{one, zero, i, i, zero, one};
    EXPECT_EQ(p.coeffs, want);

    auto q = period_vector(omega, omega);
    KElement w = to_kelement(omega);
    EXPECT_EQ(q.coeffs[2], w);
    EXPECT_EQ(q.coeffs[3], w);
    EXPECT_EQ(q.coeffs[5], -(w * w));
}

TEST(PeriodVector, Relations)
{
    EXPECT_TRUE(check_period_relations(period_vector(i_pt, i_pt)));
    EXPECT_TRUE(check_period_relations(period_vector(omega, scale(omega, 2))));
    PeriodVector zero;
    for (auto& c : zero.coeffs)
        c = KElement::from_int(0, -3);
    EXPECT_FALSE(check_period_relations(zero));
    EXPECT_THROW(period_vector(i_pt, omega), math_error);
}

TEST(NeronSeveri, SquareOfGaussianCurve)
{
    auto p = period_vector(i_pt, i_pt);
    auto ns = neron_severi(p);
    EXPECT_EQ(ns.size(), 4u);
    for (const auto& v : {unit(1), unit(4), combo(2, 3, -1), combo(0, 5, -1)}) {
        EXPECT_TRUE(p.evaluate(v).is_zero());
        // membership: appending v leaves the Hermite form unchanged
        IntMatrix m = ns;
        m.push_back(v);
        EXPECT_EQ(hermite_normal_form(m), ns);
    }
    for (const auto& v : ns)
        EXPECT_TRUE(p.evaluate(v).is_zero());
}

TEST(NeronSeveri, RankFour)
{
    auto [t1, t2] = surface_from_form({1, 1, 6});
    EXPECT_EQ(neron_severi(period_vector(t1, t2)).size(), 4u);
}

TEST(TranscendentalLattice, Examples)
{
    EXPECT_EQ(transcendental_lattice(i_pt, i_pt).gram, gram(2, 0, 2));
    EXPECT_EQ(transcendental_lattice(omega, scale(omega, 2)).gram, gram(4, 2, 4));
    KPoint t = cm_point({2, 1, 3});
    KPoint t2{t.re * 2 + 1, t.coeff * 2, t.radicand};
    EXPECT_EQ(transcendental_form(t, t2), Q(2, 1, 3));
}

TEST(TranscendentalLattice, OrientationDistinguishesConjugates)
{
    auto [a1, a2] = surface_from_form({2, 1, 3});
    auto [b1, b2] = surface_from_form({2, -1, 3});
    EXPECT_EQ(transcendental_form(a1, a2), Q(2, 1, 3));
    EXPECT_EQ(transcendental_form(b1, b2), Q(2, -1, 3));
}

TEST(SurfaceFromForm, Points)
{
    EXPECT_EQ(surface_from_form({1, 0, 1}), std::pair(i_pt, i_pt));
    KPoint shifted{make_rat(1, 2), make_rat(1, 2), -3};
    EXPECT_EQ(surface_from_form({1, 1, 1}), std::pair(omega, shifted));
    KPoint s3{0, 1, -3};
    EXPECT_EQ(surface_from_form({6, 0, 18}), std::pair(s3, KPoint{0, 6, -3}));
}

TEST(TranscendentalLattice, RoundTripAndLatticeInvariants)
{
    const auto& w = wedge_pairing();
    std::size_t n = 0;
    for (long D = -3; D >= -2000; --D) {
        if (!is_discriminant(D))
            continue;
        for (long a = 1; 3 * a * a <= -D; ++a)
            for (long b = -a + 1; b <= a; ++b) {
                long num = b * b - D;
                if (num % (4 * a) != 0)
                    continue;
                long c = num / (4 * a);
                if (c < a || (c == a && b < 0))
                    continue;
                Q q{a, b, c};
                auto [t1, t2] = surface_from_form(q);
                auto p = period_vector(t1, t2);
                auto T = transcendental_lattice(p);
                ++n;
                ASSERT_EQ(T.form(), q) << "D=" << D;
                const auto& g = T.gram;
                EXPECT_EQ(g[0][0] % 2, 0);
                EXPECT_EQ(g[1][1] % 2, 0);
                EXPECT_GT(g[0][0], 0);
                EXPECT_EQ(g[0][0] * g[1][1] - g[0][1] * g[0][1], -D);
                for (const auto& v : neron_severi(p))
                    for (const auto& t : T.basis)
                        EXPECT_EQ(bilinear(w, v, t), 0);
            }
    }
    EXPECT_GT(n, 4000u);
}

TEST(UnitedPoints, SharedMiddleCoefficient)
{
    // for disc -23 the points are (-B + sqrt(-23)) / 2A
    auto [p1, p2] = united_points({2, 1, 3}, {2, 1, 3}, 6);
    EXPECT_EQ(p1.re / p1.coeff, p2.re / p2.coeff);
    Int a1 = to_int(1 / (2 * p1.coeff)), a2 = to_int(1 / (2 * p2.coeff));
    EXPECT_EQ(gcd(a1, Int(6)), 1);
    EXPECT_EQ(gcd(a2, 6 * a1), 1);
    EXPECT_THROW(united_points(Q(2, 2, 2), Q(4, 4, 4), 1), math_error);
}
