#include <gtest/gtest.h>

#include "dimfn/dnf.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/parser.hpp"

using namespace dimfn;

namespace {

const ModelId kDlo = ModelId::dlo();
const ModelId kWom2 = ModelId::wom(2);
const ModelId kCat2 = ModelId::concat(2);

Element wv(long a, long b, long c) { return LexVector({Rat(a), Rat(b), Rat(c)}); }
Element q(long n, long d = 1) { return LexVector({Rat(n, d)}); }

std::string roundtrip(const std::string& s, const ModelId& m) { return to_string(parse(s, m), m); }

}  // namespace

TEST(Parser, SignatureChecks) {
    EXPECT_THROW(parse("U3(x1)", kWom2), SignatureError);
    EXPECT_THROW(parse("U1(x1)", kDlo), SignatureError);
    EXPECT_THROW(parse("x1 + x2 < x3", kDlo), UserError);
    EXPECT_THROW(parse("2*x1 < x3", kDlo), UserError);
    EXPECT_THROW(parse("x1 < [0,1]", kWom2), UserError);
    EXPECT_THROW(parse("x1 < ", kDlo), SyntaxError);
    EXPECT_THROW(parse("z < x1", kDlo), SyntaxError);
    EXPECT_THROW(parse("x1 - x1 < x2", kCat2), UserError);
    EXPECT_NO_THROW(parse("x1 + x2 < c1", kCat2));
}

TEST(Parser, SyntaxErrorCarriesPosition) {
    try {
        parse("x1 < x2 & & x3 < x1", kDlo);
        FAIL();
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.position(), 10u);
    }
}

TEST(Parser, PrintRoundTrip) {
    EXPECT_EQ(roundtrip("x1 < x2", kDlo), "x1 < x2");
    EXPECT_EQ(roundtrip("-3 < x1", kDlo), "-3 < x1");
    EXPECT_EQ(roundtrip("E y. x1 < y & y < x2", kDlo), "E y1. x1 < y1 & y1 < x2");
    EXPECT_EQ(roundtrip("U1(x1)", kWom2), "U1(x1)");
    EXPECT_EQ(roundtrip("c1 < x1", kCat2), "c1 < x1");
    const char* samples[] = {"x1 < x2 | !(x2 = 0) & x1 < 1/2", "A y. (y < x1 -> E z. z < y)",
                             "x1 <= x2 & x2 >= 3", "(x1 < 0 | x1 > 1) & !(x1 = 5)",
                             "-3 < x1 & x1 = -1/2 & 2 = x2"};
    for (const char* s : samples) {
        Formula f = parse(s, kDlo);
        EXPECT_EQ(parse(to_string(f, kDlo), kDlo), f) << s;
    }
    const char* wom[] = {"U1(x1 - x2) & x1 < [0,1,0]", "E y. U2(y - x1) & !U1(y - x1) & 2*y < x2"};
    for (const char* s : wom) {
        Formula f = parse(s, kWom2);
        EXPECT_EQ(parse(to_string(f, kWom2), kWom2), f) << s;
    }
}

TEST(Parser, CanonicalAtoms) {
    EXPECT_EQ(parse("x2 > x1", kDlo), parse("x1 < x2", kDlo));
    EXPECT_EQ(parse("2*x1 < 2*x2", kWom2), parse("x1 < x2", kWom2));
    EXPECT_EQ(parse("U1(x1 - x2)", kWom2), parse("U1(x2 - x1)", kWom2));
    EXPECT_TRUE(parse("1 < 2", kDlo).is_true());
}

TEST(Eval, Examples) {
    EXPECT_TRUE(eval_qf(parse("U1(x1)", kWom2), {{1, wv(0, 0, 7)}}, kWom2));
    EXPECT_FALSE(eval_qf(parse("U2(x1)", kWom2), {{1, wv(1, 0, 0)}}, kWom2));
    EXPECT_TRUE(eval_qf(parse("x1 < x2 & !(x1 = 1/2)", kDlo), {{1, q(0)}, {2, q(1)}}, kDlo));
    EXPECT_THROW(eval_qf(parse("x1 < x2", kDlo), {{1, q(0)}}, kDlo), EvalError);
}

TEST(Dnf, NormalFormIsEquivalent) {
    Formula f = parse("(x1 < 0 | x1 > 1) & (x2 = x1 | !(x2 < 3))", kDlo);
    Formula d = to_dnf(f, kDlo);
    for (long a = -2; a <= 4; ++a)
        for (long b = -2; b <= 4; ++b) {
            Assignment s{{1, q(a, 2)}, {2, q(b)}};
            EXPECT_EQ(eval_qf(f, s, kDlo), eval_qf(d, s, kDlo));
        }
}

TEST(Dnf, DropsContradictions) {
    EXPECT_TRUE(dnf_of(parse("x1 < 0 & x1 > 1", kDlo), kDlo).is_false());
    EXPECT_TRUE(dnf_of(parse("U1(x1) & !U2(x1)", kWom2), kWom2).is_false());
    EXPECT_TRUE(dnf_of(parse("x1 < 0 | !(x1 < 0)", kDlo), kDlo).is_true());
}
