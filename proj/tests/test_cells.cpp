#include <gtest/gtest.h>

#include "dimfn/cells.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/parser.hpp"

using namespace dimfn;

namespace {

const ModelId kDlo = ModelId::dlo();
const ModelId kWom1 = ModelId::wom(1);
const ModelId kWom2 = ModelId::wom(2);
const ModelId kCat2 = ModelId::concat(2);

Element d(long p, long q = 1) { return LexVector({Rat(p, q)}); }
Element w(Rat a, Rat b, Rat c) { return LexVector({a, b, c}); }

std::vector<Element> sample_line(const ModelId& m) {
    std::vector<Rat> qs = {Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(2)};
    std::vector<Element> out;
    if (m.kind == ModelId::Kind::Concat) {
        for (int i = 1; i <= m.m; ++i)
            for (const auto& q : qs) out.push_back(ConcatElem::segment(i, q));
        for (int j = 1; j < m.m; ++j) out.push_back(ConcatElem::separator(j));
        return out;
    }
    if (m.class_levels() == 0) {
        for (const auto& q : qs) out.push_back(LexVector({q}));
        return out;
    }
    std::vector<Rat> small = {Rat(0), Rat(1, 2), Rat(1)};
    std::vector<LexVector> vs = {LexVector()};
    for (int i = 0; i <= m.m; ++i) {
        std::vector<LexVector> next;
        for (const auto& v : vs)
            for (const auto& q : small) {
                LexVector u = v;
                u.coords.push_back(q);
                next.push_back(u);
            }
        vs = std::move(next);
    }
    for (const auto& v : vs) out.push_back(v);
    return out;
}

void for_each_point(int n, const ModelId& m, const std::function<void(const Assignment&)>& f) {
    const auto line = sample_line(m);
    Assignment a;
    std::function<void(int)> rec = [&](int v) {
        if (v > n) return f(a);
        for (const auto& e : line) {
            a[v] = e;
            rec(v + 1);
        }
    };
    rec(1);
}

std::string fibers(const std::string& s, int n, const ModelId& m) {
    std::string out;
    for (const auto& p : pieces(parse(s, m), n, m)) out += fiber_str(p.fiber, n, m) + ";";
    return out;
}

bool same_set(const Formula& a, const Formula& b, const ModelId& m) {
    bool same = true;
    for_each_point(1, m, [&](const Assignment& x) { same = same && eval_qf(a, x, m) == eval_qf(b, x, m); });
    return same;
}

}  // namespace

TEST(Pieces, WomUnionSplitsIntoClassAndHalfline) {
    EXPECT_EQ(fibers("U1(x1) | x1 > [1,0,0]", 1, kWom2), "D+_0([1,0,0]);C^1([0,0,0]);");
}

TEST(Pieces, DloSingleCell) {
    auto ps = pieces(parse("x1 < x2", kDlo), 2, kDlo);
    ASSERT_EQ(ps.size(), 1u);
    EXPECT_TRUE(ps[0].guard.is_true());
    EXPECT_EQ(fiber_str(ps[0].fiber, 2, kDlo), "(x1, +inf)");
}

TEST(Pieces, FalseHasNoCells) {
    EXPECT_TRUE(pieces(Formula::bottom(), 1, kDlo).empty());
    EXPECT_TRUE(decompose(Formula::bottom(), 2, kWom2).empty());
}

TEST(Pieces, ArityChecked) { EXPECT_THROW(pieces(parse("x1 < x3", kDlo), 2, kDlo), ArityError); }

TEST(Decompose, EmptyAndNonemptyIntersections) {
    EXPECT_TRUE(decompose(parse("U1(x1) & x1 > [0,0,0] & !U1(x1)", kWom2), 1, kWom2).empty());

    auto cells = decompose(parse("x1 > [0,0,0] & !U1(x1) & x1 < [1,0,0] & !U1(x1 - [1,0,0])", kWom2), 1, kWom2);
    ASSERT_EQ(cells.size(), 1u);
    EXPECT_FALSE(is_empty(cells[0], kWom2));
    EXPECT_EQ(witness(cells[0], kWom2), std::vector<Element>{w(Rat(1, 2), Rat(0), Rat(0))});

    EXPECT_TRUE(decompose(parse("x1 > [0,0,0] & !U1(x1) & x1 < [0,0,5] & !U1(x1 - [0,0,5])", kWom2), 1, kWom2).empty());
}

TEST(Decompose, Witnesses) {
    auto a = decompose(parse("0 < x1 & x1 < 1", kDlo), 1, kDlo);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(witness(a[0], kDlo), std::vector<Element>{d(1, 2)});

    auto b = decompose(parse("U2(x1)", kWom2), 1, kWom2);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(witness(b[0], kWom2), std::vector<Element>{w(Rat(0), Rat(0), Rat(0))});

    auto c = decompose(parse("x1 > [0,0,0] & U1(x2 - x1)", kWom2), 2, kWom2);
    ASSERT_EQ(c.size(), 1u);
    auto p = w(Rat(1), Rat(0), Rat(0));
    EXPECT_EQ(witness(c[0], kWom2), (std::vector<Element>{p, p}));
}

TEST(Decompose, EmptyCellHasNoWitness) {
    GoodCell c;
    c.n = 1;
    c.guard = Formula::bottom();
    EXPECT_TRUE(is_empty(c, kDlo));
    EXPECT_THROW(witness(c, kDlo), PreconditionError);
}

TEST(Decompose, CoversExactly) {
    const std::vector<std::pair<std::string, ModelId>> cases = {
        {"x1 < x2 | x2 = 0", kDlo},
        {"!(x1 = x2) & x2 < 1", kDlo},
        {"U1(x2 - x1) | x2 > x1 + [0,1,0]", kWom2},
        {"!U1(x2 - x1) & !U2(x2) & x2 < [1,0,0]", kWom2},
        {"x1 < x2 & !U1(x2)", kWom1},
        {"c1 < x2 & x2 < x1", kCat2},
        {"x2 = x1 + c1 | x1 < x2", kCat2},
    };
    for (const auto& [s, m] : cases) {
        Formula f = parse(s, m);
        auto cells = decompose(f, 2, m);
        std::vector<Formula> cfs;
        for (const auto& c : cells) cfs.push_back(cell_formula(c, m));
        for_each_point(2, m, [&](const Assignment& a) {
            bool in_cell = false;
            for (const auto& cf : cfs) in_cell = in_cell || eval(cf, a, m);
            EXPECT_EQ(eval_qf(f, a, m), in_cell) << s << " at " << element_str(a.at(1)) << ", " << element_str(a.at(2));
        });
        for (const auto& c : cells) {
            if (is_empty(c, m)) continue;
            auto pt = witness(c, m);
            Assignment a{{1, pt[0]}, {2, pt[1]}};
            EXPECT_TRUE(eval_qf(f, a, m)) << s;
            EXPECT_TRUE(eval(cell_formula(c, m), a, m)) << s;
        }
    }
}

TEST(Decompose, CertificatesHoldOnGuards) {
    auto ps = pieces(parse("!U1(x3 - x1) & !U1(x3 - x2) & U2(x3 - x1)", kWom2), 3, kWom2);
    ASSERT_FALSE(ps.empty());
    for (const auto& p : ps) {
        for_each_point(2, kWom2, [&](const Assignment& a) {
            if (!eval(p.guard, a, kWom2)) return;
            for (const auto& r : p.certificate) {
                auto fi = eval_term(p.fiber.part(r.i)->f, a, kWom2);
                auto fj = eval_term(p.fiber.part(r.j)->f, a, kWom2);
                auto& li = std::get<LexVector>(fi);
                auto& lj = std::get<LexVector>(fj);
                auto c = lex_compare(li, lj);
                EXPECT_EQ(r.order, c < 0 ? -1 : c > 0 ? 1 : 0);
                EXPECT_EQ(r.level, sep_level(li, lj));
            }
        });
    }
}

TEST(Closure, DloIntervals) {
    EXPECT_TRUE(same_set(closure_dlo(parse("0 < x1 & x1 < 1", kDlo)), parse("0 <= x1 & x1 <= 1", kDlo), kDlo));
    EXPECT_TRUE(same_set(frontier_dlo(parse("0 < x1 & x1 < 1", kDlo)), parse("x1 = 0 | x1 = 1", kDlo), kDlo));
    EXPECT_TRUE(frontier_dlo(parse("x1 = 0", kDlo)).is_false());
    EXPECT_TRUE(same_set(frontier_dlo(parse("(0 < x1 & x1 < 1) | x1 = 1", kDlo)), parse("x1 = 0", kDlo), kDlo));
}
