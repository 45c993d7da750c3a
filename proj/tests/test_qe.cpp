#include <gtest/gtest.h>

#include "dimfn/errors.hpp"
#include "dimfn/parser.hpp"
#include "dimfn/qe.hpp"

using namespace dimfn;

namespace {

const ModelId kDlo = ModelId::dlo();
const ModelId kWom2 = ModelId::wom(2);
const ModelId kCat2 = ModelId::concat(2);

LexVector wv(Rat a, Rat b, Rat c) { return LexVector({a, b, c}); }

std::string qe(const std::string& s, const ModelId& m) { return to_string(eliminate(parse(s, m), m), m); }

}  // namespace

TEST(Eliminate, Examples) {
    EXPECT_EQ(qe("E y. x1 < y & y < x2", kDlo), "x1 < x2");
    EXPECT_EQ(qe("E y. U1(y - x1) & y > x1", kWom2), "true");
    EXPECT_EQ(qe("E y. y > [0,0,0] & y < [0,1,0] & !U2(y)", kWom2), "false");
    EXPECT_EQ(qe("A y. U1(y - x1) -> U2(y - x1)", kWom2), "true");
    EXPECT_EQ(qe("E y. x1 < y & y < x1", kDlo), "false");
    EXPECT_EQ(qe("E y. c1 < y & y < x1", kCat2), "c1 < x1");
    EXPECT_EQ(qe("E y. y < x1", kDlo), "true");
    EXPECT_EQ(qe("A y. x1 < y", kDlo), "false");
}

TEST(Eliminate, ResultIsQuantifierFree) {
    Formula f = parse("A y. E z. (y < z & z < x1) | y = x2", kDlo);
    EXPECT_TRUE(eliminate(f, kDlo).quantifier_free());
}

TEST(Eliminate, DenseOrderFacts) {
    EXPECT_EQ(qe("A y. E z. y < z", kDlo), "true");
    EXPECT_EQ(qe("E y. A z. z < y | z = y", kDlo), "false");
    EXPECT_EQ(qe("E y. A z. z < y | z = y", kCat2), "false");
    EXPECT_EQ(qe("E y. c1 < y & y < c1 + c1", kCat2), "false");
    EXPECT_EQ(qe("E y. y = 2*y & y < c1", kCat2), "true");
}

TEST(Eliminate, ClassesInWom) {
    // Every class C^1(x) is unbounded in both directions inside C^2(x).
    EXPECT_EQ(qe("A x1. E y. U1(y - x1) & y > x1 + [0,0,5]", kWom2), "true");
    // Between two points of different 1-classes lies a point in neither.
    EXPECT_EQ(qe("A x1. A x2. x1 < x2 & !U1(x2 - x1) -> E y. x1 < y & y < x2 & !U1(y - x1) & !U1(y - x2)", kWom2),
              "true");
    // A 1-class has no largest element.
    EXPECT_EQ(qe("E y. U1(y - x1) & A z. U1(z - x1) -> z < y | z = y", kWom2), "false");
}

TEST(Eval, QuantifiedFormula) {
    Formula f = parse("E y. x1 < y & y < x2", kDlo);
    EXPECT_FALSE(eval(f, {{1, LexVector({Rat(0)})}, {2, LexVector({Rat(0)})}}, kDlo));
    EXPECT_TRUE(eval(f, {{1, LexVector({Rat(0)})}, {2, LexVector({Rat(1)})}}, kDlo));
    EXPECT_THROW(eval(f, {{1, LexVector({Rat(0)})}}, kDlo), EvalError);
}

TEST(SatOneVar, Examples) {
    using L = NLit<Element>;
    const Element zero = wv(0, 0, 0);
    const Element b = wv(0, 1, 0);
    auto w = sat_one_var({L{Shape::Gt, 0, zero}, L{Shape::In, 1, zero}}, kWom2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->point, Element(wv(0, 0, 1)));
    EXPECT_FALSE(sat_one_var({L{Shape::In, 1, zero}, L{Shape::NotIn, 1, zero}}, kWom2));
    w = sat_one_var({L{Shape::Gt, 0, zero}, L{Shape::Lt, 0, b}, L{Shape::NotIn, 1, zero}, L{Shape::NotIn, 1, b}},
                    kWom2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->point, Element(wv(0, Rat(1, 2), 0)));
    EXPECT_EQ(w->rule, SatWitness::Rule::Midpoint);
}

TEST(SatOneVar, Concat) {
    using L = NLit<Element>;
    auto w = sat_one_var({L{Shape::Gt, 0, ConcatElem::separator(1)}}, kCat2);
    ASSERT_TRUE(w);
    EXPECT_TRUE(compare(w->point, ConcatElem::separator(1)) > 0);
    EXPECT_FALSE(sat_one_var({L{Shape::Gt, 0, ConcatElem::separator(1)}, L{Shape::Lt, 0, ConcatElem::segment(2, Rat(-100))},
                              L{Shape::Lt, 0, ConcatElem::separator(1)}},
                             kCat2));
}

TEST(SatFormula, MatchesElimination) {
    const char* dlo[] = {"x1 < 1 & x1 > 0 & !(x1 = 1/2)", "x1 = 1 & x1 < 1", "(x1 < 0 | x1 > 3) & !(x1 > 4)"};
    for (const char* s : dlo) {
        Formula f = parse(std::string(s), kDlo);
        int y = *f.free_vars().begin();
        bool byqe = eliminate(Formula::exists(y, f), kDlo).is_true();
        EXPECT_EQ(byqe, sat_formula(f, y, kDlo).has_value()) << s;
    }
}
