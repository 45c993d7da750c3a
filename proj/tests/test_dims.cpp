#include <gtest/gtest.h>

#include "dimfn/dims.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/parser.hpp"

using namespace dimfn;

namespace {

const ModelId kDlo = ModelId::dlo();
const ModelId kWom1 = ModelId::wom(1);
const ModelId kWom2 = ModelId::wom(2);
const ModelId kCat2 = ModelId::concat(2);

const FiberShape& only_fiber(const std::vector<Piece>& ps) {
    EXPECT_EQ(ps.size(), 1u);
    return ps.at(0).fiber;
}

/// Some open interval (a, b) inside X with a, b in different kappa-classes
/// (kappa = 0: any a < b).
bool has_wide_interval(const Formula& x, int kappa, const ModelId& m) {
    const int a = 1001, b = 1002, y = 1003;
    Term ta = Term::var(a), tb = Term::var(b), ty = Term::var(y);
    Formula inside = Formula::disj(Formula::neg(Formula::conj(Formula::less(ta, ty, m), Formula::less(ty, tb, m))),
                                   rename(x, {{1, y}}, m));
    Formula body = Formula::conj({Formula::less(ta, tb, m), Formula::forall(y, inside)});
    if (kappa > 0) body = Formula::conj(body, Formula::neg(Formula::in_u(kappa, sub(tb, ta, m), m)));
    return eval(Formula::exists(a, Formula::exists(b, body)), {}, m);
}

}  // namespace

TEST(DimValue, OrderAndPrinting) {
    EXPECT_EQ(DimValue::neg_inf().str(), "-inf");
    EXPECT_EQ(DimValue::of(2).str(), "2");
    EXPECT_TRUE(DimValue::neg_inf() < DimValue::of(0));
    EXPECT_TRUE(DimValue::of(1) < DimValue::of(2));
    EXPECT_EQ(DimValue::neg_inf().plus(1), DimValue::neg_inf());
    EXPECT_EQ(max(DimValue::of(1), DimValue::neg_inf()), DimValue::of(1));
    EXPECT_THROW(DimValue::neg_inf().value(), PreconditionError);
}

TEST(DimEngine, Parse) {
    EXPECT_EQ(DimEngine::parse("top", kDlo).name(), "top");
    EXPECT_EQ(DimEngine::parse("w:2", kWom2).name(), "w:2");
    EXPECT_EQ(DimEngine::parse("I:x1 > 0", kDlo).kind(), DimEngine::Kind::I);
    EXPECT_THROW(DimEngine::parse("w:3", kWom2), UserError);
    EXPECT_THROW(DimEngine::parse("w:1", kDlo), UserError);
    EXPECT_THROW(DimEngine::parse("w:x", kWom2), UserError);
    EXPECT_THROW(DimEngine::parse("I:x1 > 0", kWom2), UserError);
    EXPECT_THROW(DimEngine::parse("I:x1 = 0", kDlo), UserError);
    EXPECT_THROW(DimEngine::parse("I:x2 > 0", kDlo), UserError);
    EXPECT_THROW(DimEngine::parse("lebesgue", kDlo), UserError);
}

TEST(FiberVerdicts, DimW) {
    auto v = [](const std::string& s, int kappa) {
        auto ps = pieces(parse(s, kWom2), 1, kWom2);
        return fiber_dim_w(only_fiber(ps), kappa, ps.at(0).certificate);
    };
    EXPECT_EQ(v("U1(x1)", 1), 0);
    EXPECT_EQ(v("U2(x1)", 1), 1);
    EXPECT_EQ(v("x1 > [0,0,0] & !U1(x1) & x1 < [1,0,0] & !U1(x1 - [1,0,0])", 1), 1);
    EXPECT_EQ(v("x1 > [0,1,0] & !U1(x1 - [0,1,0]) & x1 < [0,2,0] & !U1(x1 - [0,2,0])", 1), 1);
    EXPECT_EQ(v("x1 > [0,1,0] & !U1(x1 - [0,1,0]) & x1 < [0,2,0] & !U1(x1 - [0,2,0])", 2), 0);
    EXPECT_EQ(v("x1 = [0,0,1]", 2), 0);
}

TEST(FiberVerdicts, DimTopAndInterval) {
    EXPECT_EQ(fiber_dim_top(only_fiber(pieces(parse("x1 = 3", kDlo), 1, kDlo))), 0);
    EXPECT_EQ(fiber_dim_top(only_fiber(pieces(parse("x1 > 3", kDlo), 1, kDlo))), 1);

    Formula I = parse("x1 > 0", kDlo);
    auto ps = pieces(parse("x2 < x1", kDlo), 2, kDlo);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_EQ(fiber_dim_I(ps[0].fiber, {{1, LexVector({Rat(-2)})}}, 2, I, kDlo), 0);
    EXPECT_EQ(fiber_dim_I(ps[0].fiber, {{1, LexVector({Rat(1, 2)})}}, 2, I, kDlo), 1);
}

TEST(Dim, IntervalEngine) {
    auto e = DimEngine::interval(kDlo, parse("x1 > 0", kDlo));
    EXPECT_EQ(dim(parse("-2 < x1 & x1 < -1", kDlo), 1, e), DimValue::of(0));
    EXPECT_EQ(dim(parse("1 < x1 & x1 < 2", kDlo), 1, e), DimValue::of(1));
    EXPECT_EQ(dim(parse("-1 < x1 & x1 < 1", kDlo), 1, e), DimValue::of(1));
    EXPECT_EQ(dim(Formula::bottom(), 1, e), DimValue::neg_inf());
}

TEST(Dim, FullSpace) {
    const std::vector<DimEngine> engines = {DimEngine::top(kDlo), DimEngine::top(kWom2), DimEngine::w(kWom2, 1),
                                            DimEngine::w(kWom2, 2), DimEngine::top(kCat2)};
    for (const auto& e : engines)
        for (int n = 0; n <= 3; ++n) EXPECT_EQ(dim(Formula::top(), n, e), DimValue::of(n)) << e.name();
}

TEST(Dim, ClassGraphInWom1) {
    Formula x = parse("U1(x2 - x1)", kWom1);
    EXPECT_EQ(dim(x, 2, DimEngine::top(kWom1)), DimValue::of(2));
    EXPECT_EQ(dim(x, 2, DimEngine::w(kWom1, 1)), DimValue::of(1));
    auto c = classify(x, 2, DimEngine::w(kWom1, 1));
    EXPECT_TRUE(c.x1.is_false());
    EXPECT_TRUE(c.x0.is_true());
}

TEST(Dim, SubgroupTable) {
    for (int m = 1; m <= 3; ++m) {
        const ModelId wm = ModelId::wom(m);
        for (int j = 1; j <= m; ++j) {
            Formula u = parse("U" + std::to_string(j) + "(x1)", wm);
            EXPECT_EQ(dim(u, 1, DimEngine::top(wm)), DimValue::of(1));
            for (int k = 1; k <= m; ++k) EXPECT_EQ(dim(u, 1, DimEngine::w(wm, k)), DimValue::of(j <= k ? 0 : 1));
        }
    }
}

TEST(Dim, ArityChecked) { EXPECT_THROW(dim(parse("x2 < 0", kDlo), 1, DimEngine::top(kDlo)), ArityError); }

TEST(Dim, OneVariableAgreesWithIntervalOracle) {
    const std::vector<std::string> wom = {
        "U1(x1)",
        "U2(x1)",
        "!U1(x1)",
        "U2(x1) & !U1(x1)",
        "x1 > [0,0,0] & x1 < [0,0,3]",
        "x1 > [0,0,0] & x1 < [0,1,0]",
        "x1 > [0,0,0] & x1 < [0,1,0] & !U1(x1) & !U1(x1 - [0,1,0])",
        "x1 > [0,0,0] & x1 < [1,0,0] & !U1(x1) & !U1(x1 - [1,0,0])",
        "x1 > [0,0,0] & x1 < [1,0,0] & !U2(x1) & !U2(x1 - [1,0,0])",
        "x1 = [0,0,1] | x1 = [1,0,0]",
        "U1(x1 - [0,1,0]) | U1(x1 - [0,2,0])",
        "x1 > [0,5,0] & U2(x1) & !U1(x1 - [0,6,0])",
        "U2(x1) & x1 > [0,0,0] & !U1(x1)",
    };
    for (const auto& s : wom) {
        Formula f = parse(s, kWom2);
        EXPECT_EQ(dim(f, 1, DimEngine::top(kWom2)) == DimValue::of(1), has_wide_interval(f, 0, kWom2)) << s;
        for (int k = 1; k <= 2; ++k) {
            const DimEngine e = DimEngine::w(kWom2, k);
            EXPECT_EQ(dim(f, 1, e) == DimValue::of(1), has_wide_interval(f, k, kWom2)) << s << " kappa " << k;
            EXPECT_EQ(dim(f, 1, e), dim_by_cells(f, 1, e)) << s;
        }
    }
}

TEST(Dim, CellsAgreeWithSymbolicFibers) {
    const std::vector<std::pair<std::string, ModelId>> cases = {
        {"x1 < x2 & x2 < 3", kDlo},
        {"x1 = x2 | (x1 < 0 & x2 = 0)", kDlo},
        {"U1(x2 - x1)", kWom2},
        {"U2(x2 - x1) & !U1(x2 - x1) & x2 > x1", kWom2},
        {"!U1(x2 - x1) & !U1(x2) & x2 < x1 & x2 > [0,0,0]", kWom2},
        {"x2 = x1 + [0,1,0] | U1(x1)", kWom2},
        {"c1 < x2 & x2 < x1", kCat2},
        {"x1 = x2 | x2 = c1", kCat2},
    };
    for (const auto& [s, m] : cases) {
        Formula f = parse(s, m);
        std::vector<DimEngine> engines = {DimEngine::top(m)};
        if (m.kind == ModelId::Kind::Wom)
            for (int k = 1; k <= m.m; ++k) engines.push_back(DimEngine::w(m, k));
        if (m.kind != ModelId::Kind::Wom)
            engines.push_back(DimEngine::interval(m, parse(m.kind == ModelId::Kind::Dlo ? "x1 > 0" : "x1 > c1", m)));
        for (const auto& e : engines) EXPECT_EQ(dim(f, 2, e), dim_by_cells(f, 2, e)) << s << " " << e.name();
    }
}
