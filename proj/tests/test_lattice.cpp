#include <hcont/lattice.hpp>

#include "support/support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hcont;

namespace {

SpacePtr grid(std::size_t n = 41)
{
    return make_space(SampledMetricSpace::grid1d(-1, 1, n));
}

IntervalFunction ramp(const SpacePtr &s, double k)
{
    std::vector<ExtReal> v;
    for (std::size_t i = 0; i < s->size(); ++i) {
        v.push_back(std::clamp(k * s->coordinate(i)[0], 0.0, 1.0));
    }
    return IntervalFunction::point_valued(s, v);
}

// Test-side sup: pointwise max, then ball max / min by distance scan.
IntervalFunction scan_sup(const std::vector<IntervalFunction> &fs, double r)
{
    const auto &s = fs.front().space().metric_space();
    const auto n = s.size();
    std::vector<double> g(n, -1e300);
    for (const auto &f : fs) {
        for (std::size_t x = 0; x < n; ++x) {
            g[x] = std::max(g[x], f[x].lo().value());
        }
    }
    std::vector<double> u(n, -1e300);
    std::vector<double> l(n, 1e300);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (s.distance(x, y) <= r) {
                u[x] = std::max(u[x], g[y]);
            }
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (s.distance(x, y) <= r) {
                l[x] = std::min(l[x], u[y]);
            }
        }
    }
    std::vector<Interval> out;
    for (std::size_t x = 0; x < n; ++x) {
        out.emplace_back(l[x], u[x]);
    }
    return IntervalFunction(fs.front().space_ptr(), out);
}

} // namespace

TEST(FamilySup, Constants)
{
    const auto s = make_space(FiniteTopology::sierpinski());
    const auto zero = IntervalFunction::constant(s, {0.0, 0.0});
    const auto one = IntervalFunction::constant(s, {1.0, 1.0});
    EXPECT_EQ(family_sup(FunctionFamily({zero, one}), one), one);
    EXPECT_EQ(family_inf(FunctionFamily({zero, one}), zero), zero);
}

TEST(FamilySup, RampsOnGrid)
{
    const auto s = grid();
    std::vector<IntervalFunction> fs;
    for (int k = 1; k <= 8; ++k) {
        fs.push_back(ramp(s, k));
    }
    const auto bound = IntervalFunction::constant(s, {1.0, 1.0});
    const auto u = family_sup(FunctionFamily(fs), bound);
    EXPECT_EQ(u, scan_sup(fs, s->metric_space().finest_radius()));
    EXPECT_TRUE(is_h_continuous(u).verdict());
    for (const auto &f : fs) {
        EXPECT_TRUE(func_leq(f, u));
    }
    EXPECT_EQ(u[0], Interval(0.0, 0.0));
    EXPECT_EQ(u[40], Interval(1.0, 1.0));
}

TEST(FamilySup, RampsOnKhalimskyLineGiveStep)
{
    // the sup of clamp(n x, 0, 1) is 0 left of 0, 1 right of it and [0,1] at 0
    const auto k = support::khalimsky(-4, 4);
    std::vector<IntervalFunction> fs;
    for (int n = 1; n <= 8; ++n) {
        fs.push_back(ramp(k, n));
    }
    const auto u = family_sup(FunctionFamily(fs), IntervalFunction::constant(k, {1.0, 1.0}));
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = k->coordinate(i)[0];
        const Interval want = x > 0 ? Interval(1.0, 1.0) : x < 0 ? Interval(0.0, 0.0) : Interval(0.0, 1.0);
        EXPECT_EQ(u[i], want) << x;
    }
    std::vector<IntervalFunction> dual;
    for (const auto &f : fs) {
        dual.push_back(IntervalFunction::point_valued(k, [&] {
            std::vector<ExtReal> v;
            for (auto e : f.lower_values()) {
                v.push_back(1.0 - e.value());
            }
            return v;
        }()));
    }
    const auto v = family_inf(FunctionFamily(dual), IntervalFunction::constant(k, {0.0, 0.0}));
    EXPECT_EQ(v[4], Interval(0.0, 1.0));
    EXPECT_EQ(v[5], Interval(0.0, 0.0));
    EXPECT_EQ(v[3], Interval(1.0, 1.0));
}

TEST(FamilySup, Singleton)
{
    support::Rng rng(10);
    for (int i = 0; i < 100; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = regularize_lower(support::random_function(rng, s, support::chain012()));
        const auto top = IntervalFunction::constant(s, {2.0, 2.0});
        const auto bottom = IntervalFunction::constant(s, {0.0, 0.0});
        EXPECT_EQ(family_sup(FunctionFamily({f}), top), f);
        EXPECT_EQ(family_inf(FunctionFamily({f}), bottom), f);
    }
}

TEST(FamilySup, Errors)
{
    const auto s = make_space(FiniteTopology::sierpinski());
    const auto one = IntervalFunction::constant(s, {1.0, 1.0});
    const auto two = IntervalFunction::constant(s, {2.0, 2.0});
    EXPECT_THROW(family_sup(FunctionFamily({two}), one), PreconditionError);
    EXPECT_THROW(family_inf(FunctionFamily({one}), two), PreconditionError);
    EXPECT_THROW(family_sup(FunctionFamily({one}), IntervalFunction::constant(s, {0.0, 5.0})), PreconditionError);
    EXPECT_THROW(family_sup(FunctionFamily({one}), IntervalFunction::constant(s, {5.0, ExtReal::inf()})),
                 PreconditionError);
    EXPECT_THROW(family_sup(FunctionFamily({one}), IntervalFunction::constant(grid(5), {2.0, 2.0})), SpaceMismatch);
}

TEST(LatticeProperty, SupOfLowerSemicontinuousIsLowerSemicontinuous)
{
    support::Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto s = support::random_topology(rng);
        std::vector<ExtReal> g(s->size(), ExtReal::neg_inf());
        for (int k = 0; k < 3; ++k) {
            const auto f = lower_baire(support::random_point_function(rng, s, support::chain012()));
            for (std::size_t x = 0; x < g.size(); ++x) {
                g[x] = std::max(g[x], f[x].lo());
            }
        }
        EXPECT_TRUE(is_lower_semicontinuous(IntervalFunction::point_valued(s, g)).valid());
    }
}

TEST(LatticeProperty, SupIsLeastUpperBoundOnSmallTopologies)
{
    // every topology on <= 3 points, random families of H-continuous functions
    support::Rng rng(12);
    const std::vector<ExtReal> chain{0.0, 1.0, 2.0};
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto &t : enumerate_topologies(n)) {
            const auto s = make_space(t);
            const auto top = IntervalFunction::constant(s, {2.0, 2.0});
            for (int k = 0; k < 5; ++k) {
                std::vector<IntervalFunction> fs;
                for (int m = 0; m < 1 + k % 3; ++m) {
                    fs.push_back(regularize_lower(support::random_function(rng, s, chain)));
                }
                const FunctionFamily F(fs);
                const auto u = family_sup(F, top);
                EXPECT_TRUE(is_h_continuous(u).verdict());
                const auto r = least_upper_bound_check(F, u, chain);
                EXPECT_TRUE(r.valid()) << (r.witnesses.empty() ? "" : r.witnesses.front());
            }
        }
    }
}

TEST(LatticeProperty, Duality)
{
    support::Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const auto s = support::random_topology(rng);
        std::vector<IntervalFunction> fs;
        for (int m = 0; m < 3; ++m) {
            fs.push_back(support::random_function(rng, s, support::chain012()));
        }
        const FunctionFamily F(fs);
        const auto bottom = IntervalFunction::constant(s, {0.0, 0.0});
        EXPECT_EQ(family_inf(F, bottom), negate(family_sup(negate(F), negate(bottom))));
    }
}

TEST(LatticeProperty, BoundedClassClosure)
{
    support::Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        const auto s = support::random_topology(rng);
        std::vector<IntervalFunction> fs;
        double M = 0.0;
        for (int m = 0; m < 3; ++m) {
            fs.push_back(regularize_lower(support::random_function(rng, s, {-3.0, -1.0, 0.0, 2.0})));
            M = std::max(M, *classify(fs.back()).hb.bound);
        }
        const auto bound = IntervalFunction::constant(s, {2.0, 2.0});
        M = std::max(M, *classify(bound).hb.bound);
        const auto c = classify(family_sup(FunctionFamily(fs), bound));
        ASSERT_TRUE(*c.hb.verdict);
        EXPECT_LE(*c.hb.bound, M);
    }
}

TEST(LatticeProperty, ContinuousMinorantClassClosure)
{
    support::Rng rng(15);
    const auto s = make_space(SampledMetricSpace::grid2d(0, 1, 12, 0, 1, 12));
    for (int i = 0; i < 5; ++i) {
        std::vector<IntervalFunction> fs;
        for (int m = 0; m < 3; ++m) {
            fs.push_back(regularize_lower(support::random_real_function(rng, s, 10.0)));
            const auto c = classify(fs.back());
            ASSERT_TRUE(*c.hcm.verdict);
            ASSERT_TRUE(*c.discrete_h_continuous);
        }
        const auto bound = IntervalFunction::constant(s, {10.0, 10.0});
        ASSERT_TRUE(*classify(bound).hcm.verdict);
        const auto u = family_sup(FunctionFamily(fs), bound);
        const auto c = classify(u);
        EXPECT_TRUE(*c.hcm.verdict);
        EXPECT_TRUE(*c.discrete_h_continuous);
        EXPECT_TRUE(func_leq(*c.hcm.minorant, u.lower()));
        EXPECT_TRUE(func_leq(u.upper(), *c.hcm.majorant));
    }
}

TEST(Classify, Step)
{
    const auto c = classify(make_example("step", grid()));
    EXPECT_TRUE(*c.hft.verdict);
    EXPECT_TRUE(*c.hb.verdict);
    EXPECT_EQ(*c.hb.bound, 1.0);
    EXPECT_TRUE(*c.hcm.verdict);
    EXPECT_TRUE(c.hcm.minorant.has_value());
    EXPECT_FALSE(c.hft.bound.has_value());
}

TEST(Classify, InfiniteAndNotApplicable)
{
    const auto s = make_space(FiniteTopology::sierpinski());
    const auto c = classify(IntervalFunction::constant(s, {ExtReal::neg_inf(), ExtReal::neg_inf()}));
    EXPECT_FALSE(*c.hft.verdict);
    EXPECT_FALSE(*c.hb.verdict);
    EXPECT_FALSE(c.hb.bound.has_value());
    EXPECT_FALSE(c.hcm.verdict.has_value());
}

TEST(Classify, ReciprocalSampledAwayFromZero)
{
    const auto s = make_space(SampledMetricSpace::grid1d(0.1, 2.0, 20));
    std::vector<ExtReal> v;
    for (std::size_t i = 0; i < s->size(); ++i) {
        v.push_back(1.0 / std::abs(s->coordinate(i)[0]));
    }
    const auto c = classify(IntervalFunction::point_valued(s, v));
    EXPECT_TRUE(*c.hft.verdict);
    EXPECT_TRUE(*c.hb.verdict);
    EXPECT_DOUBLE_EQ(*c.hb.bound, 10.0);
    EXPECT_FALSE(*c.discrete_h_continuous);
}

TEST(Classify, RejectsNonHContinuousOnFiniteTopology)
{
    const auto s = make_space(FiniteTopology::sierpinski());
    EXPECT_THROW(classify(IntervalFunction::constant(s, {0.0, 1.0})), PreconditionError);
}

TEST(LeastUpperBoundCheck, Examples)
{
    const auto sier = make_space(FiniteTopology::sierpinski());
    const auto zero = IntervalFunction::constant(sier, {0.0, 0.0});
    EXPECT_TRUE(least_upper_bound_check(FunctionFamily({zero}), zero, {0.0, 1.0}).valid());

    const auto d = make_space(FiniteTopology::discrete(2));
    const FunctionFamily F({IntervalFunction::point_valued(d, {0.0, 1.0}), IntervalFunction::point_valued(d, {1.0, 0.0})});
    EXPECT_TRUE(least_upper_bound_check(F, IntervalFunction::point_valued(d, {1.0, 1.0}), {0.0, 1.0}).valid());
    const auto bad = least_upper_bound_check(F, IntervalFunction::point_valued(d, {0.0, 1.0}), {0.0, 1.0});
    ASSERT_FALSE(bad.valid());
    EXPECT_EQ(bad.witnesses.front().rfind("(A)", 0), 0U);
}

TEST(LeastUpperBoundCheck, DetectsNonMinimalBound)
{
    const auto d = make_space(FiniteTopology::discrete(2));
    const FunctionFamily F({IntervalFunction::point_valued(d, {0.0, 1.0})});
    const auto r = least_upper_bound_check(F, IntervalFunction::point_valued(d, {1.0, 1.0}), {0.0, 1.0});
    ASSERT_FALSE(r.valid());
    EXPECT_EQ(r.witnesses.front().rfind("(B)", 0), 0U);
}

TEST(LeastUpperBoundCheck, Guards)
{
    const auto s = make_space(FiniteTopology::discrete(5));
    const auto z = IntervalFunction::constant(s, {0.0, 0.0});
    EXPECT_THROW(least_upper_bound_check(FunctionFamily({z}), z, {0.0}), BudgetError);
    const auto g = IntervalFunction::constant(grid(5), {0.0, 0.0});
    EXPECT_THROW(least_upper_bound_check(FunctionFamily({g}), g, {0.0}), PreconditionError);
}
