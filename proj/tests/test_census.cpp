#include <gtest/gtest.h>

#include "dimfn/census.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/parser.hpp"

using namespace dimfn;

namespace {

const ModelId kDlo = ModelId::dlo();
const ModelId kCat2 = ModelId::concat(2);

Formula dlo(const std::string& s) { return parse(s, kDlo); }

}  // namespace

TEST(GeneratingSystem, SegmentsAreValid) {
    for (int m = 1; m <= 3; ++m) {
        auto gs = GeneratingSystem::segments(m);
        EXPECT_TRUE(gs.finite_intersections);
        EXPECT_TRUE(gs.cofinite_union);
        EXPECT_NO_THROW(gs.validate());
    }
}

TEST(GeneratingSystem, InvalidSystemsReported) {
    auto overlap = GeneratingSystem::make(kCat2, {parse("x1 < c1", kCat2), parse("x1 < c1 | x1 = c1", kCat2)});
    EXPECT_FALSE(overlap.finite_intersections);
    EXPECT_THROW(overlap.validate(), UserError);

    auto gap = GeneratingSystem::make(kCat2, {parse("x1 < c1", kCat2)});
    EXPECT_TRUE(gap.finite_intersections);
    EXPECT_FALSE(gap.cofinite_union);
    EXPECT_THROW(census(gap), UserError);
}

TEST(EngineFromSubset, Construction) {
    auto gs = GeneratingSystem::segments(2);
    EXPECT_THROW(engine_from_subset({}, gs), UserError);
    EXPECT_THROW(engine_from_subset({3}, gs), UserError);

    auto lower = engine_from_subset({1}, gs);
    EXPECT_EQ(lower.kind(), DimEngine::Kind::I);
    EXPECT_EQ(dim(parse("x1 < c1", kCat2), 1, lower), DimValue::of(1));
    EXPECT_EQ(dim(parse("c1 < x1", kCat2), 1, lower), DimValue::of(0));

    // The union misses only c1, so it agrees with dim_top on every probe.
    auto both = engine_from_subset({1, 2}, gs);
    auto probes = default_census_probes(gs);
    EXPECT_EQ(signature(both, probes), signature(DimEngine::top(kCat2), probes));
}

TEST(Census, CountsForSegmentSystems) {
    const std::size_t expected[] = {1, 3, 7};
    for (int m = 1; m <= 3; ++m) {
        auto r = census(GeneratingSystem::segments(m));
        EXPECT_EQ(r.engines.size(), (1u << m) - 1);
        EXPECT_EQ(r.distinct_count, expected[m - 1]) << "m = " << m;
    }
}

TEST(Census, EnlargingProbesNeverMergesSignatures) {
    auto gs = GeneratingSystem::segments(3);
    auto probes = default_census_probes(gs);
    auto base = census(gs, probes);
    probes.push_back(parse("c1 < x1 & x1 < c2 | x1 = c1", ModelId::concat(3)));
    probes.push_back(Formula::bottom());
    auto bigger = census(gs, probes);
    EXPECT_GE(bigger.distinct_count, base.distinct_count);
    for (std::size_t i = 0; i < base.engines.size(); ++i)
        for (std::size_t j = i + 1; j < base.engines.size(); ++j)
            if (distinguishing_probe(base.engines[i].signature, base.engines[j].signature))
                EXPECT_TRUE(distinguishing_probe(bigger.engines[i].signature, bigger.engines[j].signature));
}

TEST(Census, JsonIsStable) {
    auto gs = GeneratingSystem::segments(2);
    std::string a = to_json(census(gs));
    EXPECT_EQ(a, to_json(census(gs)));
    EXPECT_NE(a.find("\"distinct_count\": 3"), std::string::npos);
    EXPECT_NE(a.find("\"subset\""), std::string::npos);
}

TEST(Halfline, SingleParameter) {
    auto r = dlo_halfline_report({Rat(0)}, {dlo("-2 < x1 & x1 < -1")});
    ASSERT_EQ(r.engines.size(), 2u);
    EXPECT_EQ(r.engines[0].signature, Signature{DimValue::of(0)});
    EXPECT_EQ(r.engines[1].engine, "top");
    EXPECT_EQ(r.engines[1].signature, Signature{DimValue::of(1)});
}

TEST(Halfline, TwoParameters) {
    auto r = dlo_halfline_report({Rat(0), Rat(1)}, {dlo("0 < x1 & x1 < 1")});
    EXPECT_EQ(r.engines[0].signature, Signature{DimValue::of(1)});
    EXPECT_EQ(r.engines[1].signature, Signature{DimValue::of(0)});
}

TEST(Halfline, ThreeParametersGiveFourFunctions) {
    auto r = dlo_halfline_report({Rat(-1), Rat(0), Rat(1)});
    EXPECT_EQ(r.engines.size(), 4u);
    EXPECT_EQ(r.distinct_count, 4u);
    // For a < b the probe (a, b) separates Dim[I_a] (1) from Dim[I_b] (0).
    for (std::size_t i = 0; i + 1 < 3; ++i) {
        EXPECT_EQ(r.engines[i].signature[i + 1], DimValue::of(1));
        EXPECT_EQ(r.engines[i + 1].signature[i + 1], DimValue::of(0));
    }
}

TEST(Halfline, BadParameters) {
    EXPECT_THROW(dlo_halfline_report({Rat(0), Rat(0)}), UserError);
    EXPECT_THROW(dlo_halfline_report({Rat(1), Rat(0)}), UserError);
    EXPECT_THROW(dlo_halfline_report({}), UserError);
}

TEST(WomEngines, PairwiseDistinct) {
    for (int m = 1; m <= 3; ++m) {
        auto r = wom_engine_report(m);
        EXPECT_EQ(r.engines.size(), static_cast<std::size_t>(m + 1));
        EXPECT_EQ(r.distinct_count, static_cast<std::size_t>(m + 1));
    }
}
