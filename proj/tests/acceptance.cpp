// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cmsurf/cmsurf.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace cmsurf;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& what)
    {
        if (ok)
            detail << what;
        ok = false;
    }
};

int failures = 0;

void run(int id, const std::string& name, const std::function<void(Outcome&)>& body, double limit_s = 0)
{
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        std::ostringstream m;
        m << "runtime " << secs << " s exceeds " << limit_s << " s";
        out.fail(m.str());
    }
    if (!out.ok)
        ++failures;
    std::printf("[%s] criterion %2d  %-44s %8.2f s  %s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                out.detail.str().c_str());
    std::fflush(stdout);
}

std::string str(const Int& v) { return v.get_str(); }

} // namespace

int main()
{
    run(1, "decompose n=6 Q0=(1,0,3)", [](Outcome& o) {
        auto r = enumerate_decompositions(6, {1, 0, 3});
        if (r.delta_tilde != 24)
            o.fail("delta_tilde = " + std::to_string(r.delta_tilde));
        std::map<std::pair<Int, Int>, std::size_t> want{{{2, 12}, 6}, {{12, 2}, 6}, {{4, 6}, 6}, {{6, 4}, 6}};
        if (r.per_conductors() != want)
            o.fail("survivor distribution differs");
        o.detail << "delta~=" << r.delta_tilde << " delta=" << r.delta << " delta0=" << r.delta0;
    }, 5.0);

    run(2, "decompose n=30 Q0=(1,0,3)", [](Outcome& o) {
        auto r = enumerate_decompositions(30, {1, 0, 3});
        if (r.delta_tilde != 288)
            o.fail("delta_tilde = " + std::to_string(r.delta_tilde));
        const std::pair<int, int> h[] = {{4, 2}, {30, 18}, {6, 3}, {20, 12}, {10, 6}, {12, 6}};
        for (auto [f, want] : h) {
            Int byform = class_number_formula(-3, f);
            std::size_t byenum = class_number(Int(f * f) * -3);
            if (byform != want || byenum != static_cast<std::size_t>(want))
                o.fail("h(O_f) mismatch at f=" + std::to_string(f));
        }
        o.detail << "delta~=" << r.delta_tilde;
    }, 60.0);

    run(3, "n=1 sweep |disc| <= 1000", [](Outcome& o) {
        SurvivorCache cache;
        std::size_t rows = 0;
        for (Int D = -3; D >= -1000; --D) {
            if (!is_discriminant(D))
                continue;
            std::size_t h = class_number(D);
            for (const auto& q0 : reduced_forms(D)) {
                auto r = enumerate_decompositions(1, q0, &cache);
                ++rows;
                if (r.delta_tilde != h)
                    o.fail("Q0=" + q0.str() + " delta~=" + std::to_string(r.delta_tilde) + " h=" + std::to_string(h));
            }
        }
        o.detail << rows << " targets";
    });

    run(4, "scaled count sweep f0<=2 n<=12", [](Outcome& o) {
        std::size_t rows = 0;
        for (int d_K : {-7, -8, -11, -15, -20, -23}) {
            SurvivorCache cache;
            for (Int f0 = 1; f0 <= 2; ++f0)
                for (const auto& q0 : reduced_forms(f0 * f0 * d_K))
                    for (Int n = 2; n <= 12; ++n) {
                        auto r = enumerate_decompositions(n, q0, &cache);
                        Int want = pow(Int(2), tau(n)) * Int(class_number(n * n * q0.discriminant()));
                        ++rows;
                        if (Int(r.delta_tilde) != want)
                            o.fail("d_K=" + std::to_string(d_K) + " Q0=" + q0.str() + " n=" + str(n));
                    }
        }
        o.detail << rows << " targets";
    });

    run(5, "Q0=(1,0,1),(1,1,1) for 2<=n<=30", [](Outcome& o) {
        SurvivorCache cache;
        for (Int n = 2; n <= 30; ++n) {
            Int half = pow(Int(2), tau(n) - 1);
            auto g = enumerate_decompositions(n, {1, 0, 1}, &cache);
            if (Int(g.delta_tilde) != (1 + half) * class_number_formula(-4, n))
                o.fail("gaussian n=" + str(n));
            auto e = enumerate_decompositions(n, {1, 1, 1}, &cache);
            Rat want = make_rat(2, 3) * Rat(2 + half) * Rat(class_number_formula(-3, n));
            want.canonicalize();
            if (Rat(Int(e.delta_tilde)) != want)
                o.fail("hexagonal n=" + str(n));
        }
        o.detail << "29 values of n each";
    });

    run(6, "lattice oracle vs composition grids", [](Outcome& o) {
        std::size_t same = 0, mixed = 0;
        for (Int D0 = -3; D0 >= -300; --D0) {
            if (!is_discriminant(D0))
                continue;
            auto forms = reduced_forms(D0);
            for (const auto& q : forms)
                for (const auto& q2 : forms)
                    for (Int s = 1; s <= 12; ++s)
                        for (Int t = 1; s * t <= 12; ++t) {
                            if (gcd(s, t) != 1)
                                continue;
                            auto [p1, p2] = united_points(q, q2, 2 * s * t * D0);
                            auto T = transcendental_form(scale(p1, s), scale(p2, t));
                            ++same;
                            if (T != reduced((s * t) * compose(q, q2).repr))
                                o.fail("equal-disc mismatch " + q.str() + q2.str() + " s=" + str(s) + " t=" + str(t));
                        }
        }
        for (int d_K : {-3, -4, -7, -8, -11, -15, -20, -23})
            for (Int f0 = 1; f0 <= 8; ++f0)
                for (Int g0 = 1; g0 <= 8; ++g0) {
                    Int f = lcm(f0, g0), d = f / f0, dd = f / g0;
                    for (const auto& q : reduced_forms(f0 * f0 * d_K))
                        for (const auto& q2 : reduced_forms(g0 * g0 * d_K)) {
                            auto [p1, p2] = united_points(d * q, dd * q2, 2 * f * f * d_K);
                            auto T = transcendental_form(p1, p2);
                            auto G = gcompose(ExtendedClass::of(make_class(q)), ExtendedClass::of(make_class(q2)));
                            ++mixed;
                            if (T != reduced((d * dd) * G.cls.repr))
                                o.fail("mixed mismatch " + q.str() + q2.str());
                        }
                }
        o.detail << same << " equal-disc, " << mixed << " mixed cases";
    });

    run(7, "class number formula |f^2 d_K| <= 10^4", [](Outcome& o) {
        std::size_t rows = 0;
        for (Int d_K = -3; d_K >= -10000; --d_K) {
            if (!is_fundamental(d_K))
                continue;
            for (Int f = 1; f * f * -d_K <= 10000; ++f) {
                ++rows;
                if (Int(class_number(f * f * d_K)) != class_number_formula(d_K, f))
                    o.fail("D=" + str(f * f * d_K));
            }
        }
        o.detail << rows << " discriminants";
    });

    run(8, "stabilizer intersections", [](Outcome& o) {
        const int fields[] = {-7, -8, -11, -15, -20};
        const std::pair<int, int> pairs[] = {{2, 3}, {3, 4}, {2, 5}, {3, 5}, {2, 4}, {4, 6}, {6, 9}, {1, 6}, {1, 4}, {5, 1}};
        std::size_t cases = 0;
        for (int d_K : fields)
            for (auto [f1, f2] : pairs) {
                Int f = lcm(Int(f1), Int(f2));
                auto s = stab_intersection(f * f * d_K, Int(f1 * f1 * d_K), Int(f2 * f2 * d_K));
                ++cases;
                if (s.order() != 1)
                    o.fail("d_K=" + std::to_string(d_K) + " f1=" + std::to_string(f1) + " f2=" + std::to_string(f2));
            }
        const std::pair<int, int> coprime[] = {{2, 3}, {3, 4}, {2, 5}, {3, 5}, {4, 5}};
        for (auto [d_K, want] : {std::pair{-4, 2}, std::pair{-3, 3}})
            for (auto [f1, f2] : coprime) {
                Int f = f1 * f2;
                auto s = stab_intersection(f * f * d_K, Int(f1 * f1 * d_K), Int(f2 * f2 * d_K));
                if (s.order() != static_cast<std::size_t>(want))
                    o.fail("d_K=" + std::to_string(d_K) + " order " + std::to_string(s.order()));
            }
        o.detail << cases << " trivial cases, 10 unit-field cases";
    });

    run(9, "class number sum identity", [](Outcome& o) {
        std::size_t checked = 0, skipped = 0;
        for (int d_K : {-3, -4, -7, -8, -15})
            for (Int f0 = 1; f0 <= 3; ++f0)
                for (Int n = 1; n <= 12; ++n) {
                    auto v = verify_sum_identity(d_K, f0, n);
                    if (!v) {
                        ++skipped;
                        continue;
                    }
                    ++checked;
                    if (!*v)
                        o.fail("d_K=" + std::to_string(d_K) + " f0=" + str(f0) + " n=" + str(n));
                }
        o.detail << checked << " checked, " << skipped << " excluded";
    });

    run(10, "j-invariants and fibration models", [](Outcome& o) {
        const Real tol("1e-20");
        PrecisionScope scope(256);
        auto ji = j_invariant(cm_point({1, 0, 1}), 256);
        if (abs(ji.value - Complex{1728, 0}) >= tol)
            o.fail("j(i)");
        auto jw = j_invariant(cm_point({1, 1, 1}), 256);
        if (abs(jw.value) >= tol)
            o.fail("j(omega)");
        auto j2 = j_invariant(cm_point({1, 0, 4}), 256);
        if (round(j2.value.re) != 287496)
            o.fail("j(2i)");
        auto models = shioda_inose_models(6, {1, 0, 3});
        if (models.size() != 12)
            o.fail("model count " + std::to_string(models.size()));
        o.detail << "|j(i)-1728|=" << Real(abs(ji.value - Complex{1728, 0})).str(3) << " models=" << models.size();
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
