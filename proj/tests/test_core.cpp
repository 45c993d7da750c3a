#include <gtest/gtest.h>

#include <random>

#include "dimfn/errors.hpp"
#include "dimfn/model.hpp"
#include "dimfn/term.hpp"

using namespace dimfn;

namespace {

LexVector v(std::initializer_list<long> xs) {
    std::vector<Rat> c;
    for (long x : xs) c.emplace_back(x);
    return LexVector(c);
}

}  // namespace

TEST(Rat, ParseAndPrint) {
    EXPECT_EQ(Rat::parse("6/4").str(), "3/2");
    EXPECT_EQ(Rat::parse("-0").str(), "0");
    EXPECT_EQ((Rat(1, 2) + Rat(1, 3)).str(), "5/6");
    EXPECT_THROW(Rat::parse("1/0"), std::exception);
    EXPECT_THROW(Rat::parse("abc"), std::exception);
}

TEST(LexVector, SeparationLevel) {
    EXPECT_EQ(sep_level(v({0, 0, 0}), v({0, 1, 5})), 2);
    EXPECT_EQ(sep_level(v({0, 0, 0}), v({3, 0, 0})), 3);
    EXPECT_EQ(sep_level(v({0, 0, 0}), v({0, 0, 7})), 1);
    EXPECT_EQ(sep_level(v({1, 2, 3}), v({1, 2, 3})), 0);
}

TEST(LexVector, OrderAndArity) {
    EXPECT_TRUE(lex_compare(v({0, 5, 9}), v({1, 0, 0})) < 0);
    EXPECT_TRUE(lex_compare(v({0, 0, 1}), v({0, 0, 0})) > 0);
    EXPECT_THROW(lex_compare(v({0, 0}), v({0, 0, 0})), ArityError);
}

TEST(LexVector, SubgroupMembership) {
    EXPECT_TRUE(in_subgroup(v({0, 0, 7}), 1));
    EXPECT_FALSE(in_subgroup(v({0, 1, 0}), 1));
    EXPECT_TRUE(in_subgroup(v({0, 0, 0}), 0));
    EXPECT_EQ(LexVector::unit(3, 0), v({0, 0, 1}));
    EXPECT_EQ(LexVector::unit(3, 2), v({1, 0, 0}));
}

// Ultrametric and order-convexity properties of the separation level.
TEST(LexVector, SeparationProperties) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-2, 2);
    auto rnd = [&] { return v({d(rng), d(rng), d(rng)}); };
    for (int it = 0; it < 2000; ++it) {
        LexVector a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ(sep_level(a, b), sep_level(b, a));
        EXPECT_LE(sep_level(a, c), std::max(sep_level(a, b), sep_level(b, c)));
        EXPECT_EQ(sep_level(a, b), sep_level(a + c, b + c));
        if (lex_compare(a, b) <= 0 && lex_compare(b, c) <= 0) {
            EXPECT_LE(sep_level(a, b), sep_level(a, c));
            EXPECT_LE(sep_level(b, c), sep_level(a, c));
        }
    }
}

TEST(Concat, Addition) {
    auto a = ConcatElem::segment(2, Rat(1, 2));
    auto b = ConcatElem::segment(2, Rat(1, 3));
    EXPECT_EQ(concat_add(a, b, 2), ConcatElem::segment(2, Rat(5, 6)));
    EXPECT_EQ(concat_add(ConcatElem::segment(1, Rat(7)), ConcatElem::segment(2, Rat(0)), 2), ConcatElem::separator(1));
    EXPECT_EQ(concat_add(ConcatElem::separator(1), ConcatElem::segment(1, Rat(1)), 2), ConcatElem::separator(1));
    EXPECT_EQ(concat_c1(1), ConcatElem::segment(1, Rat(0)));
    EXPECT_EQ(concat_scale(Rat(3), ConcatElem::segment(1, Rat(2)), 2), ConcatElem::segment(1, Rat(6)));
    EXPECT_EQ(concat_add(a, b, 2).str(), "(2:5/6)");
    EXPECT_EQ(ConcatElem::separator(1).str(), "c1");
}

TEST(Concat, Order) {
    EXPECT_TRUE(ConcatElem::segment(1, Rat(1000)) < ConcatElem::separator(1));
    EXPECT_TRUE(ConcatElem::separator(1) < ConcatElem::segment(2, Rat(-1000)));
    EXPECT_TRUE(ConcatElem::segment(2, Rat(-1)) < ConcatElem::segment(2, Rat(0)));
}

TEST(ModelId, Parse) {
    EXPECT_EQ(ModelId::parse("dlo"), ModelId::dlo());
    EXPECT_EQ(ModelId::parse("wom:2"), ModelId::wom(2));
    EXPECT_EQ(ModelId::parse("concat:3"), ModelId::concat(3));
    EXPECT_THROW(ModelId::parse("wom:0"), UserError);
    EXPECT_THROW(ModelId::parse("wom:9"), UserError);
    EXPECT_THROW(ModelId::parse("field"), UserError);
    EXPECT_EQ(ModelId::wom(2).parse_element("[0,1/2,0]"), Element(LexVector({Rat(0), Rat(1, 2), Rat(0)})));
    EXPECT_THROW(ModelId::wom(2).parse_element("[0,1]"), UserError);
    EXPECT_EQ(ModelId::concat(2).parse_element("c1"), Element(ConcatElem::separator(1)));
}

TEST(Term, ConcatSemantics) {
    ModelId m = ModelId::concat(2);
    Term t = add(Term::var(1), Term::var(2), m);
    Assignment same{{1, ConcatElem::segment(2, Rat(1))}, {2, ConcatElem::segment(2, Rat(3))}};
    Assignment apart{{1, ConcatElem::segment(1, Rat(1))}, {2, ConcatElem::segment(2, Rat(3))}};
    EXPECT_EQ(eval_term(t, same, m), Element(ConcatElem::segment(2, Rat(4))));
    EXPECT_EQ(eval_term(t, apart, m), Element(ConcatElem::separator(1)));
    Assignment sep{{1, ConcatElem::separator(1)}};
    EXPECT_EQ(eval_term(Term::var(1), sep, m), Element(ConcatElem::separator(1)));
}

TEST(Term, GroupArithmetic) {
    ModelId m = ModelId::wom(2);
    Term t = add(scale(Rat(2), Term::var(1), m), Term::constant(v({0, 0, 1})), m);
    EXPECT_EQ(term_str(t, m), "2*x1 + [0,0,1]");
    EXPECT_EQ(term_str(sub(t, t, m), m), "[0,0,0]");
    Assignment a{{1, v({1, 0, 0})}};
    EXPECT_EQ(eval_term(t, a, m), Element(v({2, 0, 1})));
}
