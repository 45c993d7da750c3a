#include "dimfn/cells.hpp"

#include <algorithm>
#include <array>

#include "dimfn/errors.hpp"
#include "dimfn/segment.hpp"

namespace dimfn {
namespace {

Formula sim(int k, const Term& a, const Term& b, const ModelId& m) { return Formula::in_u(k, sub(a, b, m), m); }

/// Cut below C^{a.k}(a.f) lies at or below (strictly below) the cut below C^{b.k}(b.f).
Formula upper_before(const FiberPart& a, const FiberPart& b, bool strict, const ModelId& m) {
    Formula s = sim(std::max(a.k, b.k), a.f, b.f, m);
    bool lvl = strict ? a.k > b.k : a.k >= b.k;
    return Formula::disj(Formula::conj(s, Formula::truth(lvl)), Formula::conj(Formula::neg(s), Formula::less(a.f, b.f, m)));
}

/// Cut above C^{a.k}(a.f) lies at or above (strictly above) the cut above C^{b.k}(b.f).
Formula lower_after(const FiberPart& a, const FiberPart& b, bool strict, const ModelId& m) {
    Formula s = sim(std::max(a.k, b.k), a.f, b.f, m);
    bool lvl = strict ? a.k > b.k : a.k >= b.k;
    return Formula::disj(Formula::conj(s, Formula::truth(lvl)), Formula::conj(Formula::neg(s), Formula::less(b.f, a.f, m)));
}

}  // namespace

Formula tightest_bound(const std::vector<FiberPart>& ps, std::size_t i, bool upper, const ModelId& m) {
    std::vector<Formula> cs;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        if (j == i) continue;
        bool strict = j < i;
        cs.push_back(upper ? upper_before(ps[i], ps[j], strict, m) : lower_after(ps[i], ps[j], strict, m));
    }
    return Formula::conj(std::move(cs));
}

namespace {

int rel_order(const Certificate& c, int a, int b) {
    if (a == b) return 0;
    return a < b ? find_relation(c, a, b).order : -find_relation(c, b, a).order;
}

int rel_level(const Certificate& c, int a, int b) {
    if (a == b) return 0;
    return a < b ? find_relation(c, a, b).level : find_relation(c, b, a).level;
}

/// Relations among abstract points, answered from a certificate.
struct CertRel {
    const Certificate& c;
    bool top() const { return true; }
    bool bot() const { return false; }
    bool lt(int a, int b) const { return rel_order(c, a, b) < 0; }
    bool eq(int a, int b) const { return rel_level(c, a, b) == 0; }
    bool sim(int k, int a, int b) const { return rel_level(c, a, b) <= k; }
    bool conj(bool a, bool b) const { return a && b; }
    bool disj(bool a, bool b) const { return a || b; }
    bool neg(bool a) const { return !a; }
};

/// Realizable by points of the model: along every sorted triple the outer
/// pair is separated exactly at the larger of the two inner levels.
bool realizable(const Certificate& c, const std::vector<int>& idx) {
    if (idx.size() < 3) return true;
    std::array<int, 3> p{idx[0], idx[1], idx[2]};
    std::sort(p.begin(), p.end());
    do {
        int x = p[0], y = p[1], z = p[2];
        if (rel_order(c, x, y) > 0 || rel_order(c, y, z) > 0) continue;
        if (rel_order(c, x, z) > 0) return false;
        if (rel_level(c, x, z) != std::max(rel_level(c, x, y), rel_level(c, y, z))) return false;
    } while (std::next_permutation(p.begin(), p.end()));
    return true;
}

std::vector<Certificate> certificates(const std::vector<int>& idx, int levels) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) pairs.emplace_back(idx[a], idx[b]);
    std::vector<std::pair<int, int>> options{{0, 0}};
    for (int s = 1; s <= levels + 1; ++s) {
        options.emplace_back(-1, s);
        options.emplace_back(1, s);
    }
    std::vector<Certificate> out;
    Certificate cur;
    auto rec = [&](auto&& self, std::size_t p) -> void {
        if (p == pairs.size()) {
            if (realizable(cur, idx)) out.push_back(cur);
            return;
        }
        for (const auto& [o, s] : options) {
            cur.push_back({pairs[p].first, pairs[p].second, o, s});
            self(self, p + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<NLit<int>> abstract_literals(const FiberShape& s) {
    std::vector<NLit<int>> out;
    if (s.cls) out.push_back({Shape::In, s.cls->k, 1});
    if (s.upper) {
        out.push_back({Shape::Lt, 0, 2});
        if (s.upper->k > 0) out.push_back({Shape::NotIn, s.upper->k, 2});
    }
    if (s.lower) {
        out.push_back({Shape::Gt, 0, 3});
        if (s.lower->k > 0) out.push_back({Shape::NotIn, s.lower->k, 3});
    }
    return out;
}

bool nonempty_under(const FiberShape& s, const Certificate& c, int levels) {
    CertRel r{c};
    return OneVar<int, CertRel>(levels, r).exists(abstract_literals(s));
}

Formula certificate_formula(const FiberShape& s, const Certificate& c, const ModelId& m) {
    std::vector<Formula> fs;
    for (const auto& r : c) {
        const Term& a = s.part(r.i)->f;
        const Term& b = s.part(r.j)->f;
        if (r.level == 0) {
            fs.push_back(Formula::eq(a, b, m));
            continue;
        }
        fs.push_back(r.order < 0 ? Formula::less(a, b, m) : Formula::less(b, a, m));
        if (r.level <= m.class_levels()) fs.push_back(sim(r.level, a, b, m));
        if (r.level - 1 >= 1) fs.push_back(Formula::neg(sim(r.level - 1, a, b, m)));
    }
    return Formula::conj(std::move(fs));
}

/// Pieces of one solved branch, with guards over model `m` (a group model).
std::vector<Piece> branch_pieces(const std::vector<NormLit>& branch, int y, const ModelId& m) {
    std::vector<Piece> out;
    for (const auto& l : branch)
        if (l.shape == Shape::Eq) {
            FiberShape s;
            s.point = l.p;
            out.push_back({eliminate_one(y, branch, m), s, {}});
            return out;
        }
    std::vector<FiberPart> classes, ups, los, outs;
    for (const auto& l : branch) {
        switch (l.shape) {
        case Shape::In: classes.push_back({l.k, l.p}); break;
        case Shape::Lt: ups.push_back({0, l.p}); break;
        case Shape::Gt: los.push_back({0, l.p}); break;
        case Shape::NotIn: outs.push_back({l.k, l.p}); break;
        case Shape::Eq: break;
        }
    }
    if (outs.size() > 12) throw BudgetExceeded("too many excluded classes in one fiber");
    std::optional<FiberPart> cls;
    std::vector<Formula> class_guard;
    if (!classes.empty()) {
        std::size_t c = 0;
        for (std::size_t i = 1; i < classes.size(); ++i)
            if (classes[i].k < classes[c].k) c = i;
        cls = classes[c];
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (i != c) class_guard.push_back(sim(classes[i].k, cls->f, classes[i].f, m));
    }
    const Formula cg = Formula::conj(class_guard);
    if (cg.is_false()) return out;
    const int levels = m.class_levels();
    for (std::size_t mask = 0; mask < (std::size_t{1} << outs.size()); ++mask) {
        std::vector<FiberPart> u = ups, lo = los;
        for (std::size_t i = 0; i < outs.size(); ++i) ((mask >> i) & 1 ? lo : u).push_back(outs[i]);
        for (std::size_t iu = 0; iu < std::max<std::size_t>(u.size(), 1); ++iu) {
            Formula su = u.empty() ? Formula::top() : tightest_bound(u, iu, true, m);
            if (su.is_false()) continue;
            for (std::size_t il = 0; il < std::max<std::size_t>(lo.size(), 1); ++il) {
                Formula sl = lo.empty() ? Formula::top() : tightest_bound(lo, il, false, m);
                if (sl.is_false()) continue;
                FiberShape s;
                s.cls = cls;
                if (!u.empty()) s.upper = u[iu];
                if (!lo.empty()) s.lower = lo[il];
                std::vector<int> idx;
                for (int i = 1; i <= 3; ++i)
                    if (s.part(i)) idx.push_back(i);
                for (auto& cert : certificates(idx, levels)) {
                    if (!nonempty_under(s, cert, levels)) continue;
                    Formula g = Formula::conj({cg, su, sl, certificate_formula(s, cert, m)});
                    if (g.is_false()) continue;
                    out.push_back({g, s, std::move(cert)});
                }
            }
        }
    }
    return out;
}

Term map_term(const Term& t, int seg, const ModelId& m) { return from_coord_term(t, seg, m); }

std::optional<FiberPart> map_part(const std::optional<FiberPart>& p, int seg, const ModelId& m) {
    if (!p) return std::nullopt;
    return FiberPart{p->k, map_term(p->f, seg, m)};
}

std::vector<Piece> concat_pieces(const Conj& c, int y, const ModelId& m) {
    std::vector<Formula> rest;
    for (const auto& l : c)
        if (!l.atom.mentions(y)) rest.push_back(literal_formula(l));
    const Formula base = Formula::conj(rest);
    const ModelId cm = coordinate_model();
    std::vector<Piece> out;
    visit_locations(
        y, c, m,
        [&](int j, const Formula& matrix) {
            FiberShape s;
            s.point = Term::constant(ConcatElem::separator(j));
            Formula g = Formula::conj(base, matrix);
            if (!g.is_false()) out.push_back({g, s, {}});
        },
        [&](int seg, const Formula& placement, const Conj& cc) {
            SolvedConj sc = solve_conj(cc, y, cm);
            const Formula cbase = conj_formula(sc.rest);
            for (const auto& b : sc.branches)
                for (auto& p : branch_pieces(b, y, cm)) {
                    Formula g = Formula::conj({base, placement, from_coord(Formula::conj(cbase, p.guard), seg, m)});
                    if (g.is_false()) continue;
                    FiberShape s;
                    s.segment = seg;
                    if (p.fiber.point) s.point = map_term(*p.fiber.point, seg, m);
                    s.upper = map_part(p.fiber.upper, seg, m);
                    s.lower = map_part(p.fiber.lower, seg, m);
                    out.push_back({g, s, std::move(p.certificate)});
                }
        });
    return out;
}

std::optional<std::vector<Element>> try_witness(const GoodCell& c, const ModelId& m) {
    std::vector<Element> pt;
    if (c.base) {
        auto b = try_witness(*c.base, m);
        if (!b) return std::nullopt;
        pt = std::move(*b);
    }
    Assignment a;
    for (std::size_t i = 0; i < pt.size(); ++i) a.emplace(static_cast<int>(i) + 1, pt[i]);
    if (!c.guard.is_true() && !eval_qf(c.guard, a, m)) return std::nullopt;
    auto y = fiber_witness(c.fiber, a, m);
    if (!y) return std::nullopt;
    pt.push_back(std::move(*y));
    return pt;
}

std::optional<Element> group_fiber_witness(const FiberShape& s, const Assignment& base, const ModelId& m) {
    std::vector<NLit<LexVector>> lits;
    for (const auto& l : s.literals()) lits.push_back({l.shape, l.k, std::get<LexVector>(eval_term(l.p, base, m))});
    auto val = [&](const std::optional<FiberPart>& p) -> std::optional<LexVector> {
        if (!p) return std::nullopt;
        return std::get<LexVector>(eval_term(p->f, base, m));
    };
    auto c = val(s.cls), u = val(s.upper), l = val(s.lower);
    const std::size_t len = m.vec_len();
    const LexVector far = LexVector::unit(len, static_cast<int>(len) - 1);
    std::vector<LexVector> cands;
    if (c) cands.push_back(*c);
    if (u && l) cands.push_back(Rat(1, 2) * (*u + *l));
    if (l && !u) cands.push_back(*l + far);
    if (u && !l) cands.push_back(*u - far);
    if (!u && !l && !c) cands.push_back(LexVector::zero(len));
    PointRel r;
    OneVar<LexVector, PointRel> core(m.class_levels(), r);
    for (const auto& x : cands)
        if (std::all_of(lits.begin(), lits.end(), [&](const auto& lit) { return core.at_point(lit, x); }))
            return Element(x);
    std::vector<NLit<Element>> el;
    for (const auto& lit : lits) el.push_back({lit.shape, lit.k, Element(lit.p)});
    if (auto w = sat_one_var(el, m)) return w->point;
    return std::nullopt;
}

std::optional<Element> concat_fiber_witness(const FiberShape& s, const Assignment& base, const ModelId& m) {
    const int seg = *s.segment;
    std::vector<NLit<Element>> lits;
    if (seg > 1) lits.push_back({Shape::Gt, 0, ConcatElem::separator(seg - 1)});
    if (seg < m.m) lits.push_back({Shape::Lt, 0, ConcatElem::separator(seg)});
    std::optional<Rat> lo, hi;
    auto coord = [&](const Element& e) -> std::optional<Rat> {
        const auto& ce = std::get<ConcatElem>(e);
        if (ce.is_segment() && ce.index == seg) return ce.value;
        return std::nullopt;
    };
    if (s.upper) {
        Element e = eval_term(s.upper->f, base, m);
        hi = coord(e);
        lits.push_back({Shape::Lt, 0, e});
    }
    if (s.lower) {
        Element e = eval_term(s.lower->f, base, m);
        lo = coord(e);
        lits.push_back({Shape::Gt, 0, e});
    }
    std::vector<Rat> cands;
    if (lo && hi) cands.push_back((*lo + *hi) / Rat(2));
    if (lo) cands.push_back(*lo + Rat(1));
    if (hi) cands.push_back(*hi - Rat(1));
    cands.push_back(Rat(0));
    auto ok = [&](const Element& x) {
        return std::all_of(lits.begin(), lits.end(), [&](const auto& l) {
            auto c = compare(x, l.p);
            return l.shape == Shape::Lt ? c < 0 : c > 0;
        });
    };
    for (const auto& v : cands) {
        Element x = ConcatElem::segment(seg, v);
        if (ok(x)) return x;
    }
    if (auto w = sat_one_var(lits, m)) return w->point;
    return std::nullopt;
}

}  // namespace

const FiberPart* FiberShape::part(int idx) const {
    const std::optional<FiberPart>* p = idx == 1 ? &cls : idx == 2 ? &upper : idx == 3 ? &lower : nullptr;
    return p && *p ? &**p : nullptr;
}

std::vector<NormLit> FiberShape::literals() const {
    std::vector<NormLit> out;
    if (point) {
        out.push_back({Shape::Eq, 0, *point});
        return out;
    }
    if (cls) out.push_back(cls->k == 0 ? NormLit{Shape::Eq, 0, cls->f} : NormLit{Shape::In, cls->k, cls->f});
    if (upper) {
        out.push_back({Shape::Lt, 0, upper->f});
        if (upper->k > 0) out.push_back({Shape::NotIn, upper->k, upper->f});
    }
    if (lower) {
        out.push_back({Shape::Gt, 0, lower->f});
        if (lower->k > 0) out.push_back({Shape::NotIn, lower->k, lower->f});
    }
    return out;
}

Formula fiber_formula(const FiberShape& s, int y, const ModelId& m) {
    const Term yt = Term::var(y);
    std::vector<Formula> fs;
    if (s.segment) fs.push_back(location_formula(y, Location{false, *s.segment}, m));
    for (const auto& l : s.literals()) {
        switch (l.shape) {
        case Shape::Eq: fs.push_back(Formula::eq(yt, l.p, m)); break;
        case Shape::Lt: fs.push_back(Formula::less(yt, l.p, m)); break;
        case Shape::Gt: fs.push_back(Formula::less(l.p, yt, m)); break;
        case Shape::In: fs.push_back(sim(l.k, yt, l.p, m)); break;
        case Shape::NotIn: fs.push_back(Formula::neg(sim(l.k, yt, l.p, m))); break;
        }
    }
    return Formula::conj(std::move(fs));
}

std::string fiber_str(const FiberShape& s, int y, const ModelId& m) {
    (void)y;
    if (s.point) return "{" + term_str(*s.point, m) + "}";
    if (m.class_levels() == 0) {
        std::string iv = "(" + (s.lower ? term_str(s.lower->f, m) : std::string("-inf")) + ", " +
                         (s.upper ? term_str(s.upper->f, m) : std::string("+inf")) + ")";
        return s.segment ? "Q" + std::to_string(*s.segment) + " & " + iv : iv;
    }
    std::vector<std::string> parts;
    if (s.cls) parts.push_back("C^" + std::to_string(s.cls->k) + "(" + term_str(s.cls->f, m) + ")");
    if (s.upper) parts.push_back("D-_" + std::to_string(s.upper->k) + "(" + term_str(s.upper->f, m) + ")");
    if (s.lower) parts.push_back("D+_" + std::to_string(s.lower->k) + "(" + term_str(s.lower->f, m) + ")");
    if (parts.empty()) return "M";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " & " + parts[i];
    return out;
}

std::string relation_str(const Relation& r) {
    const char* o = r.order < 0 ? "<" : r.order > 0 ? ">" : "=";
    return "f" + std::to_string(r.i) + " " + o + " f" + std::to_string(r.j) + " @" + std::to_string(r.level);
}

const Relation& find_relation(const Certificate& c, int i, int j) {
    for (const auto& r : c)
        if (r.i == i && r.j == j) return r;
    throw InternalError("certificate lacks relation f" + std::to_string(i) + "/f" + std::to_string(j));
}

std::vector<Piece> pieces(const Formula& qf, int n, const ModelId& m) {
    if (n < 1) throw PreconditionError("pieces need arity >= 1");
    const Formula f = qf.quantifier_free() ? qf : eliminate(qf, m);
    for (int v : f.free_vars())
        if (v > n) throw ArityError(var_name(v) + " exceeds arity " + std::to_string(n));
    std::vector<Piece> out;
    for (const auto& c : dnf_of(f, m).conjs) {
        if (!m.is_group()) {
            auto ps = concat_pieces(c, n, m);
            out.insert(out.end(), ps.begin(), ps.end());
            continue;
        }
        SolvedConj sc = solve_conj(c, n, m);
        const Formula base = conj_formula(sc.rest);
        for (const auto& b : sc.branches)
            for (auto& p : branch_pieces(b, n, m)) {
                p.guard = Formula::conj(base, p.guard);
                if (!p.guard.is_false()) out.push_back(std::move(p));
            }
    }
    return out;
}

Formula cell_formula(const GoodCell& c, const ModelId& m) {
    Formula base = c.base ? cell_formula(*c.base, m) : Formula::top();
    return Formula::conj({base, c.guard, fiber_formula(c.fiber, c.n, m)});
}

std::vector<GoodCell> decompose(const Formula& phi, int n, const ModelId& m) {
    std::vector<GoodCell> out;
    for (auto& p : pieces(phi, n, m)) {
        if (n == 1) {
            if (!eval(p.guard, {}, m)) continue;
            out.push_back({1, nullptr, p.guard, std::move(p.fiber), std::move(p.certificate)});
            continue;
        }
        for (auto& b : decompose(p.guard, n - 1, m))
            out.push_back({n, std::make_shared<const GoodCell>(std::move(b)), p.guard, p.fiber, p.certificate});
    }
    return out;
}

std::optional<Element> fiber_witness(const FiberShape& s, const Assignment& base, const ModelId& m) {
    if (s.point) return eval_term(*s.point, base, m);
    return m.is_group() ? group_fiber_witness(s, base, m) : concat_fiber_witness(s, base, m);
}

bool is_empty(const GoodCell& c, const ModelId& m) { return !try_witness(c, m).has_value(); }

std::vector<Element> witness(const GoodCell& c, const ModelId& m) {
    auto w = try_witness(c, m);
    if (!w) throw PreconditionError("witness requested for an empty cell");
    return *w;
}

Formula closure_dlo(const Formula& phi) {
    const ModelId m = ModelId::dlo();
    const Term x = Term::var(1);
    std::vector<Formula> parts;
    for (const auto& p : pieces(phi, 1, m)) {
        if (!eval(p.guard, {}, m)) continue;
        const FiberShape& s = p.fiber;
        if (s.point) {
            parts.push_back(Formula::eq(x, *s.point, m));
            continue;
        }
        std::vector<Formula> sides;
        if (s.lower) sides.push_back(Formula::neg(Formula::less(x, s.lower->f, m)));
        if (s.upper) sides.push_back(Formula::neg(Formula::less(s.upper->f, x, m)));
        parts.push_back(Formula::conj(std::move(sides)));
    }
    return to_dnf(Formula::disj(std::move(parts)), m);
}

Formula frontier_dlo(const Formula& phi) {
    const ModelId m = ModelId::dlo();
    const Formula f = phi.quantifier_free() ? phi : eliminate(phi, m);
    return to_dnf(Formula::conj(closure_dlo(f), Formula::neg(f)), m);
}

}  // namespace dimfn
