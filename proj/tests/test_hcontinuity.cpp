#include <hcont/hcontinuity.hpp>

#include "support/support.hpp"

#include <gtest/gtest.h>

using namespace hcont;

namespace {

SpacePtr sierpinski()
{
    return make_space(FiniteTopology::sierpinski());
}

SpacePtr grid(std::size_t n = 21)
{
    return make_space(SampledMetricSpace::grid1d(-1, 1, n));
}

IntervalFunction point_step(const SpacePtr &s)
{
    return IntervalFunction::point_valued(s, make_example("step", s).upper_values());
}

} // namespace

TEST(IsHContinuous, StepOnGridIsDiscretelyHContinuous)
{
    const auto r = is_h_continuous(make_example("step", grid()));
    EXPECT_TRUE(r.verdict());
    EXPECT_EQ(r.qualifier().rfind("discrete-H-continuous at radius", 0), 0U);
    EXPECT_EQ(r.backend, Backend::sampled);
}

TEST(IsHContinuous, PointValuedStepFailsAtZero)
{
    for (const auto &s : {grid(), support::khalimsky(-4, 4)}) {
        const auto f = point_step(s);
        const auto r = is_h_continuous(f);
        ASSERT_FALSE(r.verdict());
        bool saw = false;
        for (const auto &fail : r.failures) {
            if (fail.equality == "I(upper)=lower" && f.space().coordinate(fail.point)[0] == 0.0) {
                EXPECT_EQ(fail.lhs, ExtReal(-1.0));
                EXPECT_EQ(fail.rhs, ExtReal(1.0));
                saw = true;
            }
        }
        EXPECT_TRUE(saw);
    }
}

TEST(IsHContinuous, Constants)
{
    for (const auto &s : {sierpinski(), grid()}) {
        EXPECT_TRUE(is_h_continuous(IntervalFunction::constant(s, {2.0, 2.0})).verdict());
    }
}

TEST(IsHContinuous, QualifierOnFiniteTopology)
{
    const auto r = is_h_continuous(IntervalFunction::constant(sierpinski(), {0.0, 1.0}));
    EXPECT_FALSE(r.verdict());
    EXPECT_EQ(r.qualifier(), "not H-continuous");
}

TEST(ByDefinition, Sierpinski)
{
    const auto s = sierpinski();
    EXPECT_TRUE(is_h_continuous_by_definition(IntervalFunction::constant(s, {0.0, 0.0}), {0.0, 1.0}).verdict());
    const IntervalFunction f(s, {Interval(0.0, 1.0), Interval(1.0, 1.0)});
    EXPECT_FALSE(is_h_continuous_by_definition(f, {0.0, 1.0}).verdict());
    // the completion of g = (0, 1) is (a↦[0,0], b↦[0,1])
    const auto g = IntervalFunction::point_valued(s, {0.0, 1.0});
    EXPECT_EQ(graph_completion(g), IntervalFunction(s, {Interval(0.0, 0.0), Interval(0.0, 1.0)}));
}

TEST(ByDefinition, DiscretePointValued)
{
    const auto s = make_space(FiniteTopology::discrete(2));
    for (double a : {0.0, 1.0, 2.0}) {
        for (double b : {0.0, 1.0, 2.0}) {
            EXPECT_TRUE(is_h_continuous_by_definition(IntervalFunction::point_valued(s, {a, b}), {0.0, 1.0, 2.0})
                            .verdict());
        }
    }
}

TEST(ByDefinition, Preconditions)
{
    EXPECT_THROW(is_h_continuous_by_definition(make_example("step", grid(5)), {-1.0, 1.0}), PreconditionError);
    const auto s = sierpinski();
    EXPECT_THROW(is_h_continuous_by_definition(IntervalFunction::constant(s, {0.0, 3.0}), {0.0, 1.0}),
                 PreconditionError);
    EXPECT_THROW(is_h_continuous_by_definition(IntervalFunction::constant(s, {0.0, 0.0}), {0, 1, 2, 3, 4, 5}),
                 PreconditionError);
}

TEST(CriteriaProperty, AgreeOnAllSmallTopologies)
{
    // Every interval function with endpoints in {0, 1, 2} on every topology
    // with at most 3 points, and a sample on 4 points.
    const std::vector<ExtReal> chain{0.0, 1.0, 2.0};
    const auto opts = oracle::chain_intervals(chain);
    std::size_t checked = 0;
    for (const auto &t : support::topologies_up_to_4()) {
        const auto s = make_space(t);
        const auto n = t.size();
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) {
            total *= opts.size();
        }
        const std::size_t stride = n == 4 ? 97 : 1;
        for (std::size_t code = 0; code < total; code += stride) {
            std::vector<Interval> v(n);
            auto c = code;
            for (std::size_t x = 0; x < n; ++x) {
                v[x] = opts[c % opts.size()];
                c /= opts.size();
            }
            const IntervalFunction f(s, v);
            const bool vc = is_h_continuous(f).verdict();
            const bool vb = check_criterion_b(f).verdict();
            const bool va = is_h_continuous_by_definition(f, chain).verdict();
            ASSERT_EQ(va, vc) << "topology with " << t.opens().size() << " opens";
            ASSERT_EQ(vb, vc);
            ++checked;
        }
    }
    EXPECT_GT(checked, 10000U);
}

TEST(Regularize, PointValuedStepOnKhalimskyLine)
{
    const auto k = support::khalimsky(-4, 4);
    const auto step = make_example("step", k);
    EXPECT_EQ(regularize_lower(point_step(k)), step);
    const auto low = IntervalFunction::point_valued(k, step.lower_values());
    EXPECT_EQ(regularize_upper(low), step);
}

TEST(Regularize, PointValuedStepOnGrid)
{
    const auto s = grid(41);
    const auto step = make_example("step", s);
    EXPECT_EQ(regularize_lower(point_step(s)), step);
    EXPECT_EQ(regularize_upper(IntervalFunction::point_valued(s, step.lower_values())), step);
}

TEST(Regularize, FixesHContinuousAndConstants)
{
    support::Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = regularize_lower(support::random_function(rng, s, support::chain012()));
        ASSERT_TRUE(is_h_continuous(f).verdict());
        EXPECT_EQ(regularize_lower(f), f);
        EXPECT_EQ(regularize_upper(f), f);
    }
    const auto c = IntervalFunction::constant(grid(), {1.5, 1.5});
    EXPECT_EQ(regularize_lower(c), c);
    EXPECT_EQ(regularize_upper(c), c);
}

TEST(Regularize, LiteralCompositionOnFiniteTopologies)
{
    // the reduced evaluation equals F(S(I f)) and F(I(S f)) where S, I are idempotent
    support::Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = support::random_function(rng, s, support::chain012());
        EXPECT_EQ(regularize_lower(f), graph_completion(upper_baire(lower_baire(f))));
        EXPECT_EQ(regularize_upper(f), graph_completion(lower_baire(upper_baire(f))));
    }
}

TEST(RegularizeProperty, OutputsAreHContinuous)
{
    support::Rng rng(6);
    for (int i = 0; i < 500; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = support::random_function(rng, s, support::chain012());
        EXPECT_TRUE(is_h_continuous(regularize_lower(f)).verdict());
        EXPECT_TRUE(is_h_continuous(regularize_upper(f)).verdict());
    }
    // on ball stencils as well
    const auto g = make_space(SampledMetricSpace::grid2d(0, 1, 15, 0, 1, 15));
    for (int i = 0; i < 10; ++i) {
        const auto f = support::random_real_function(rng, g);
        EXPECT_TRUE(is_h_continuous(regularize_lower(f)).verdict());
        EXPECT_TRUE(is_h_continuous(regularize_upper(f)).verdict());
    }
}

TEST(HContinuityProperty, EndpointsSemicontinuous)
{
    support::Rng rng(7);
    for (int i = 0; i < 300; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = regularize_upper(support::random_function(rng, s, support::chain012()));
        EXPECT_TRUE(is_lower_semicontinuous(f.lower()).valid());
        EXPECT_TRUE(is_upper_semicontinuous(f.upper()).valid());
    }
}

TEST(ContinuityPoints, StepOnKhalimskyAndGrid)
{
    for (const auto &s : {support::khalimsky(-4, 4), grid()}) {
        const auto f = make_example("step", s);
        const auto cp = continuity_points(f);
        for (std::size_t a = 0; a < f.size(); ++a) {
            const bool zero = s->coordinate(a)[0] == 0.0;
            EXPECT_EQ(cp[a].cls == PointClass::interval_valued, zero) << a;
        }
    }
}

TEST(ContinuityPoints, Constant)
{
    const auto cp = continuity_points(IntervalFunction::constant(sierpinski(), {1.0, 1.0}));
    for (const auto &p : cp) {
        EXPECT_EQ(p.cls, PointClass::continuous_point);
        EXPECT_TRUE(p.lower_continuous && p.upper_continuous);
    }
}

TEST(ContinuityPoints, ShockLocusOnGrid)
{
    const auto s = make_space(SampledMetricSpace::grid2d(-2, 2, 33, 0, 4, 33));
    const auto f = make_example("shock", s);
    const auto cp = continuity_points(f);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const auto i = static_cast<long>(k % 33);
        const auto j = static_cast<long>(k / 33);
        // x = -2 + i/8, t = j/8 lies on 2x = t - 1 (t >= 1) iff 2i - j = 24, j >= 8
        EXPECT_EQ(cp[k].cls == PointClass::interval_valued, 2 * i - j == 24 && j >= 8) << k;
    }
}

TEST(ContinuityPoints, RequiresHContinuityOnFiniteTopology)
{
    EXPECT_THROW(continuity_points(IntervalFunction::constant(sierpinski(), {0.0, 1.0})), PreconditionError);
}

TEST(ContinuityPoints, WidthTolerance)
{
    const auto s = grid(5);
    const IntervalFunction f(s, std::vector<Interval>(5, Interval(1.0, 1.0 + 1e-13)));
    for (const auto &p : continuity_points(f)) {
        EXPECT_EQ(p.cls, PointClass::continuous_point);
    }
}

TEST(ContinuityPointsProperty, Dichotomy)
{
    support::Rng rng(8);
    for (int i = 0; i < 300; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = regularize_lower(support::random_function(rng, s, support::chain012()));
        const auto cp = continuity_points(f);
        for (std::size_t a = 0; a < f.size(); ++a) {
            EXPECT_EQ(cp[a].cls == PointClass::continuous_point, cp[a].lower_continuous && cp[a].upper_continuous);
        }
    }
}

TEST(DenseAgreement, EqualOnDenseSet)
{
    const auto s = sierpinski();
    const auto f = IntervalFunction::constant(s, {1.0, 1.0});
    const auto r = dense_agreement(f, f, PointSet::single(0));
    EXPECT_TRUE(r.valid());
    EXPECT_EQ(r.qualifier, "f <= g on dense set");
}

TEST(DenseAgreement, Preconditions)
{
    const auto s = sierpinski();
    const auto f = IntervalFunction::constant(s, {1.0, 1.0});
    EXPECT_THROW(dense_agreement(f, f, PointSet::single(1)), PreconditionError);
    EXPECT_THROW(dense_agreement(IntervalFunction::constant(s, {0.0, 1.0}), f, PointSet::single(0)),
                 PreconditionError);
}

TEST(DenseAgreementProperty, RandomInstances)
{
    support::Rng rng(9);
    int exercised = 0;
    for (int i = 0; i < 2000 && exercised < 500; ++i) {
        const auto s = support::random_topology(rng);
        const auto f = regularize_lower(support::random_function(rng, s, support::chain012()));
        const auto g = regularize_upper(support::random_function(rng, s, support::chain012()));
        const auto &t = s->topology();
        const PointSet d(std::uniform_int_distribution<std::uint64_t>(1, t.full().bits())(rng));
        if (!is_dense(t, d)) {
            continue;
        }
        const auto r = dense_agreement(f, g, d);
        EXPECT_TRUE(r.valid());
        if (r.qualifier != "hypothesis not met") {
            ++exercised;
        }
    }
    EXPECT_GT(exercised, 50);
}
