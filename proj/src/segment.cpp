#include "dimfn/segment.hpp"

#include <algorithm>

#include "dimfn/errors.hpp"

namespace dimfn {

std::vector<Location> all_locations(int m) {
    std::vector<Location> out;
    for (int i = 1; i <= m; ++i) {
        out.push_back({false, i});
        if (i < m) out.push_back({true, i});
    }
    return out;
}

Formula location_formula(int var, const Location& loc, const ModelId& m) {
    Term x = Term::var(var);
    if (loc.at_separator) return Formula::eq(x, Term::constant(ConcatElem::separator(loc.index)), m);
    std::vector<Formula> parts;
    if (loc.index > 1) parts.push_back(Formula::less(Term::constant(ConcatElem::separator(loc.index - 1)), x, m));
    if (loc.index < m.m) parts.push_back(Formula::less(x, Term::constant(ConcatElem::separator(loc.index)), m));
    return Formula::conj(std::move(parts));
}

namespace {

SegValue c1_value(const ModelId& m) {
    if (m.m >= 2) return SegValue{1, 0, Term()};
    return SegValue{std::nullopt, 1, Term()};
}

Location loc_of(int v, const std::map<int, Location>& loc) {
    auto it = loc.find(v);
    if (it == loc.end()) throw InternalError("variable " + var_name(v) + " has no location");
    return it->second;
}

int rank_of(const SegValue& s) { return s.separator ? 2 * *s.separator + 1 : 2 * s.seg; }

}  // namespace

SegValue seg_value(const Term& t, const std::map<int, Location>& loc, const ModelId& m) {
    const ModelId cm = coordinate_model();
    if (auto v = t.as_lone_var()) {
        Location l = loc_of(*v, loc);
        if (l.at_separator) return SegValue{l.index, 0, Term()};
        return SegValue{std::nullopt, l.index, Term::var(*v)};
    }
    std::optional<int> seg;
    Term coord;
    if (const auto& c = t.constant_part()) {
        const auto& ce = std::get<ConcatElem>(*c);
        if (t.is_ground()) {
            if (!ce.is_segment()) return SegValue{ce.index, 0, Term()};
            return SegValue{std::nullopt, ce.index, Term::constant(LexVector({ce.value}))};
        }
        if (!ce.is_segment()) return c1_value(m);
        seg = ce.index;
        coord = Term::constant(LexVector({ce.value}));
    }
    for (const auto& [v, q] : t.coeffs()) {
        Location l = loc_of(v, loc);
        if (l.at_separator || (seg && *seg != l.index)) return c1_value(m);
        seg = l.index;
        coord = add(coord, Term::var(v, q), cm);
    }
    if (!seg) throw InternalError("concat term without value");
    return SegValue{std::nullopt, *seg, coord};
}

Formula seg_atom(const Atom& a, const std::map<int, Location>& loc, const ModelId& m, int* seg_out) {
    if (a.kind == Atom::Kind::InU) throw SignatureError("U_k atoms need a wom model");
    SegValue l = seg_value(a.lhs, loc, m);
    SegValue r = seg_value(a.rhs, loc, m);
    int rl = rank_of(l), rr = rank_of(r);
    bool less = a.kind == Atom::Kind::Less;
    if (rl != rr) return Formula::truth(less ? rl < rr : false);
    if (l.separator) return Formula::truth(!less);
    if (seg_out) *seg_out = l.seg;
    return Formula::atom(a.kind, l.coord, r.coord, 0, coordinate_model());
}

Term from_coord_term(const Term& t, int seg, const ModelId& m) {
    Term out;
    for (const auto& [v, q] : t.coeffs()) out = add(out, Term::var(v, q), m);
    const auto& c = t.constant_part();
    if (c) {
        out = add(out, Term::constant(ConcatElem::segment(seg, std::get<LexVector>(*c).coords[0])), m);
    } else if (t.is_ground()) {
        out = Term::constant(ConcatElem::segment(seg, Rat(0)));
    }
    return out;
}

Formula from_coord(const Formula& f, int seg, const ModelId& m) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True:
    case Op::False: return f;
    case Op::Atom: {
        const Atom& a = f.atom();
        return Formula::atom(a.kind, from_coord_term(a.lhs, seg, m), from_coord_term(a.rhs, seg, m), 0, m);
    }
    case Op::Not: return Formula::neg(from_coord(f.kids()[0], seg, m));
    case Op::And:
    case Op::Or: {
        std::vector<Formula> ks;
        for (const auto& k : f.kids()) ks.push_back(from_coord(k, seg, m));
        return f.op() == Op::And ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
    }
    default: throw PreconditionError("from_coord expects a quantifier-free formula");
    }
}

std::vector<ConcatElem> concat_candidates(int m, const std::map<int, std::vector<Rat>>& crit) {
    std::vector<ConcatElem> out;
    for (int i = 1; i <= m; ++i) {
        std::vector<Rat> s{Rat(0)};
        if (auto it = crit.find(i); it != crit.end()) s.insert(s.end(), it->second.begin(), it->second.end());
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        out.push_back(ConcatElem::segment(i, s.front() - Rat(1)));
        for (std::size_t k = 0; k < s.size(); ++k) {
            out.push_back(ConcatElem::segment(i, s[k]));
            if (k + 1 < s.size()) out.push_back(ConcatElem::segment(i, (s[k] + s[k + 1]) / Rat(2)));
        }
        out.push_back(ConcatElem::segment(i, s.back() + Rat(1)));
        if (i < m) out.push_back(ConcatElem::separator(i));
    }
    return out;
}

}  // namespace dimfn
