// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#include "cmsurf/forms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cmsurf;

namespace {

using Q = QuadraticForm;

std::vector<Q> reduced_up_to(long bound)
{
    std::vector<Q> out;
    for (long D = -3; D >= -bound; --D)
        for (long a = 1; 3 * a * a <= -D; ++a)
            for (long b = -a + 1; b <= a; ++b) {
                long num = b * b - D;
                if (num % (4 * a) != 0)
                    continue;
                long c = num / (4 * a);
                if (c < a || (c == a && b < 0))
                    continue;
                out.push_back({a, b, c});
            }
    return out;
}

UnimodularMap random_map(std::mt19937& rng)
{
    std::uniform_int_distribution<int> pick(0, 2), k(-4, 4);
    UnimodularMap g;
    for (int i = 0; i < 6; ++i)
        g = g * (pick(rng) == 0 ? UnimodularMap::rotation() : UnimodularMap::translation(k(rng)));
    return g;
}

} // namespace

TEST(Forms, Discriminant)
{
    EXPECT_EQ(Q(1, 0, 1).discriminant(), -4);
    EXPECT_EQ(Q(1, 0, 3).discriminant(), -12);
    EXPECT_EQ(Q(2, 1, 3).discriminant(), -23);
}

TEST(Forms, Content)
{
    auto c = content({6, 0, 18});
    EXPECT_EQ(c.m, 6);
    EXPECT_EQ(c.primitive, Q(1, 0, 3));
    EXPECT_EQ(content({1, 1, 1}).m, 1);
    c = content({4, 2, 6});
    EXPECT_EQ(c.m, 2);
    EXPECT_EQ(c.primitive, Q(2, 1, 3));
}

TEST(Forms, ContentScalesDiscriminant)
{
    for (const auto& q : reduced_up_to(300))
        for (long m = 1; m <= 5; ++m) {
            auto c = content(Int(m) * q);
            EXPECT_EQ((Int(m) * q).discriminant(), c.m * c.m * c.primitive.discriminant());
        }
}

TEST(Forms, ReduceExamples)
{
    auto r = reduce({1, 4, 5});
    EXPECT_EQ(r.form, Q(1, 0, 1));
    EXPECT_EQ(apply({1, 4, 5}, r.map), r.form);
    r = reduce({2, -1, 3});
    EXPECT_EQ(r.form, Q(2, -1, 3));
    EXPECT_EQ(r.map, UnimodularMap::identity());
    r = reduce({4, 5, 3});
    EXPECT_EQ(r.form, Q(2, -1, 3));
    EXPECT_EQ(r.map.det(), 1);
    EXPECT_EQ(apply({4, 5, 3}, r.map), r.form);
}

TEST(Forms, ReduceIsIdempotentAndWitnessed)
{
    std::mt19937 rng(7);
    for (const auto& q : reduced_up_to(400)) {
        EXPECT_TRUE(is_reduced(q));
        auto g = random_map(rng);
        Q moved = apply(q, g);
        auto r = reduce(moved);
        EXPECT_EQ(r.form, q) << moved;
        EXPECT_EQ(r.map.det(), 1);
        EXPECT_EQ(apply(moved, r.map), q);
        EXPECT_EQ(reduced(r.form), r.form);
    }
}

TEST(Forms, DiscriminantInvariantUnderMaps)
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> a(1, 40), b(-40, 40);
    int n = 0;
    while (n < 1000) {
        Q q{a(rng), b(rng), a(rng)};
        if (!q.is_positive_definite())
            continue;
        ++n;
        EXPECT_EQ(apply(q, random_map(rng)).discriminant(), q.discriminant());
    }
}

TEST(Forms, ProperEquivalence)
{
    EXPECT_FALSE(is_properly_equivalent({2, 1, 3}, {2, -1, 3}));
    EXPECT_TRUE(is_improperly_equivalent({2, 1, 3}, {2, -1, 3}));
    auto g = is_properly_equivalent({1, 4, 5}, {1, 0, 1});
    ASSERT_TRUE(g);
    EXPECT_EQ(apply({1, 4, 5}, *g), Q(1, 0, 1));
    EXPECT_EQ(*is_properly_equivalent({2, 1, 3}, {2, 1, 3}), UnimodularMap::identity());
}

TEST(Forms, EquivalenceWitnessesAreCorrect)
{
    std::mt19937 rng(3);
    for (const auto& q : reduced_up_to(200)) {
        Q x = apply(q, random_map(rng)), y = apply(q, random_map(rng));
        auto g = is_properly_equivalent(x, y);
        ASSERT_TRUE(g);
        EXPECT_EQ(g->det(), 1);
        EXPECT_EQ(apply(x, *g), y);
    }
}

TEST(Forms, RepresentCoprime)
{
    EXPECT_EQ(represent_coprime({2, 1, 3}, 6), (Representation{2, 1, 13}));
    EXPECT_EQ(represent_coprime({1, 0, 1}, 1), (Representation{1, 0, 1}));
    EXPECT_EQ(represent_coprime({1, 1, 6}, 1), (Representation{1, 0, 1}));
    EXPECT_THROW(represent_coprime({2, 2, 2}, 6), math_error);
}

TEST(Forms, RepresentCoprimeAlwaysSucceeds)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<long> M(1, 10000);
    for (const auto& q : reduced_up_to(300)) {
        if (!is_primitive(q))
            continue;
        Int m = M(rng);
        auto r = represent_coprime(q, m);
        EXPECT_EQ(gcd(r.x, r.y), 1);
        EXPECT_EQ(q(r.x, r.y), r.value);
        EXPECT_EQ(gcd(r.value, m), 1);
    }
}

TEST(Forms, WithLeading)
{
    Q f = with_leading({2, 1, 3}, 3);
    EXPECT_EQ(f.a, 3);
    EXPECT_TRUE(is_properly_equivalent(f, {2, 1, 3}));
    EXPECT_EQ(with_leading({1, 0, 1}, 1), Q(1, 0, 1));
    f = with_leading({1, 1, 6}, 6);
    EXPECT_EQ(f.a, 6);
    EXPECT_EQ(f.discriminant(), -23);
    EXPECT_TRUE(f.b >= 0 && f.b < 12);
    EXPECT_THROW(with_leading({2, 1, 3}, 5), math_error);
}

TEST(Forms, CmPoint)
{
    EXPECT_EQ(cm_point({1, 0, 1}), (KPoint{0, 1, -1}));
    EXPECT_EQ(cm_point({1, 1, 1}), (KPoint{make_rat(-1, 2), make_rat(1, 2), -3}));
    EXPECT_EQ(cm_point({1, 0, 3}), (KPoint{0, 1, -3}));
}

TEST(Forms, PrincipalForm)
{
    EXPECT_EQ(principal_form(-4), Q(1, 0, 1));
    EXPECT_EQ(principal_form(-23), Q(1, 1, 6));
    EXPECT_EQ(principal_form(-432), Q(1, 0, 108));
    EXPECT_THROW(principal_form(-6), invalid_discriminant);
}
