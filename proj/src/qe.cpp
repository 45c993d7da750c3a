#include "dimfn/qe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dimfn/errors.hpp"
#include "dimfn/segment.hpp"

namespace dimfn {
namespace {

/// Relations between terms, answered as quantifier-free formulas.
struct FormulaRel {
    const ModelId& m;
    Formula top() const { return Formula::top(); }
    Formula bot() const { return Formula::bottom(); }
    Formula lt(const Term& a, const Term& b) const { return Formula::less(a, b, m); }
    Formula eq(const Term& a, const Term& b) const { return Formula::eq(a, b, m); }
    Formula sim(int k, const Term& a, const Term& b) const { return Formula::in_u(k, sub(a, b, m), m); }
    Formula conj(const Formula& a, const Formula& b) const { return Formula::conj(a, b); }
    Formula disj(const Formula& a, const Formula& b) const { return Formula::disj(a, b); }
    Formula neg(const Formula& a) const { return Formula::neg(a); }
};

Formula simplified(const Formula& qf, const ModelId& m) { return to_formula(dnf_of(qf, m)); }

Formula eliminate_group(int var, const Conj& c, const ModelId& m) {
    SolvedConj sc = solve_conj(c, var, m);
    if (!sc.mentions) return conj_formula(c);
    std::vector<Formula> parts = {conj_formula(sc.rest)};
    std::vector<Formula> branches;
    for (const auto& b : sc.branches) branches.push_back(eliminate_one(var, b, m));
    parts.push_back(Formula::disj(std::move(branches)));
    return Formula::conj(std::move(parts));
}

Formula eliminate_concat(int var, const Conj& c, const ModelId& m) {
    if (std::none_of(c.begin(), c.end(), [&](const Literal& l) { return l.atom.mentions(var); }))
        return conj_formula(c);
    return concat_by_location(
        var, c, m, [](const Formula& f) { return f; },
        [&](const Conj& cc) { return eliminate_group(var, cc, coordinate_model()); });
}

Formula eliminate_rec(const Formula& f, const ModelId& m) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::Not: return Formula::neg(eliminate_rec(f.kids()[0], m));
    case Op::And:
    case Op::Or: {
        std::vector<Formula> ks;
        for (const auto& k : f.kids()) ks.push_back(eliminate_rec(k, m));
        return f.op() == Op::And ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
    }
    case Op::Exists: {
        Formula body = eliminate_rec(f.kids()[0], m);
        Dnf d = dnf_of(body, m);
        std::vector<Formula> parts;
        for (const auto& c : d.conjs) parts.push_back(eliminate_conj(f.var(), c, m));
        return simplified(Formula::disj(std::move(parts)), m);
    }
    case Op::Forall: {
        Formula inner = Formula::exists(f.var(), Formula::neg(f.kids()[0]));
        return simplified(Formula::neg(eliminate_rec(inner, m)), m);
    }
    }
    throw InternalError("unknown formula node");
}

void collect_atoms(const Formula& f, std::vector<Atom>& out) {
    if (f.op() == Formula::Op::Atom) {
        out.push_back(f.atom());
        return;
    }
    if (f.op() == Formula::Op::Exists || f.op() == Formula::Op::Forall)
        throw PreconditionError("expected a quantifier-free formula");
    for (const auto& k : f.kids()) collect_atoms(k, out);
}

using Candidate = std::pair<Element, SatWitness::Rule>;

std::vector<Candidate> group_candidates(const std::vector<LexVector>& params, const ModelId& m) {
    using R = SatWitness::Rule;
    const std::size_t len = m.vec_len();
    std::vector<std::pair<LexVector, R>> base;
    std::set<std::vector<Rat>> seen;
    auto push = [&](std::vector<std::pair<LexVector, R>>& to, const LexVector& v, R r) {
        if (seen.insert(v.coords).second) to.emplace_back(v, r);
    };
    for (const auto& p : params) push(base, p, R::EqualityPoint);
    for (std::size_t i = 0; i < params.size(); ++i)
        for (std::size_t j = i + 1; j < params.size(); ++j)
            push(base, Rat(1, 2) * (params[i] + params[j]), R::Midpoint);
    std::vector<std::pair<LexVector, R>> all = base;
    for (const auto& [b, _] : base)
        for (int k = 0; k < static_cast<int>(len); ++k) {
            LexVector u = LexVector::unit(len, k);
            push(all, b + u, R::ClassOffset);
            push(all, b - u, R::ClassOffset);
        }
    Rat big(1);
    for (const auto& p : params)
        for (const auto& q : p.coords) big = std::max(big, q.abs() + Rat(1));
    LexVector far = big * LexVector::unit(len, static_cast<int>(len) - 1);
    push(all, far, R::BeyondAll);
    push(all, -far, R::BeyondAll);
    std::vector<Candidate> out;
    for (auto& [v, r] : all) out.emplace_back(Element(std::move(v)), r);
    return out;
}

std::vector<Candidate> concat_cands(const std::map<int, std::vector<Rat>>& crit, const ModelId& m) {
    using R = SatWitness::Rule;
    std::vector<Candidate> out;
    for (const auto& c : concat_candidates(m.m, crit)) {
        R rule = R::Midpoint;
        if (c.is_segment()) {
            auto it = crit.find(c.index);
            const std::vector<Rat> vals = it == crit.end() ? std::vector<Rat>{} : it->second;
            if (std::find(vals.begin(), vals.end(), c.value) != vals.end())
                rule = R::EqualityPoint;
            else if (vals.empty() || c.value < *std::min_element(vals.begin(), vals.end()) ||
                     c.value > *std::max_element(vals.begin(), vals.end()))
                rule = R::BeyondAll;
        }
        out.emplace_back(Element(c), rule);
    }
    return out;
}

/// Root of the linear coordinate atom, or nothing when var cancels.
std::optional<Rat> coord_root(const Atom& a, int var) {
    const ModelId cm = coordinate_model();
    Term d = sub(a.lhs, a.rhs, cm);
    Rat c = d.coeff(var);
    if (c.sign() == 0) return std::nullopt;
    if (d.coeffs().size() != 1) throw PreconditionError("oracle formula has more than one free variable");
    Rat r = d.is_ground() ? Rat(0) : group_constant(d, cm).coords[0];
    return -r / c;
}

}  // namespace

void visit_locations(int var, const Conj& c, const ModelId& m,
                     const std::function<void(int, const Formula&)>& at_separator,
                     const std::function<void(int, const Formula&, const Conj&)>& in_segment) {
    std::vector<const Literal*> ylits;
    std::set<int> co;
    for (const auto& l : c) {
        if (!l.atom.mentions(var)) continue;
        ylits.push_back(&l);
        for (int v : l.atom.vars())
            if (v != var) co.insert(v);
    }
    std::vector<Formula> ys;
    for (const Literal* l : ylits) ys.push_back(literal_formula(*l));
    const Formula ymatrix = Formula::conj(ys);

    const auto locs = all_locations(m.m);
    const std::vector<int> others(co.begin(), co.end());
    const ModelId cm = coordinate_model();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < others.size(); ++i) {
        combos *= locs.size();
        if (combos > kDnfBudget) throw BudgetExceeded("too many location splits");
    }
    for (const auto& yl : locs) {
        if (yl.at_separator) {
            at_separator(yl.index, substitute(ymatrix, var, Element(ConcatElem::separator(yl.index)), m));
            continue;
        }
        for (std::size_t code = 0; code < combos; ++code) {
            std::map<int, Location> where{{var, yl}};
            std::vector<Formula> place;
            std::size_t r = code;
            for (int v : others) {
                where[v] = locs[r % locs.size()];
                r /= locs.size();
                place.push_back(location_formula(v, where[v], m));
            }
            std::vector<Formula> coord;
            bool dead = false;
            for (const Literal* l : ylits) {
                int seg = 0;
                Formula g = seg_atom(l->atom, where, m, &seg);
                if (!l->pos) g = Formula::neg(g);
                if (g.is_false()) {
                    dead = true;
                    break;
                }
                coord.push_back(g);
            }
            if (dead) continue;
            const Formula placement = Formula::conj(std::move(place));
            for (const auto& cc : dnf_of(Formula::conj(std::move(coord)), cm).conjs) in_segment(yl.index, placement, cc);
        }
    }
}

Formula concat_by_location(int var, const Conj& c, const ModelId& m,
                           const std::function<Formula(const Formula&)>& at_separator,
                           const std::function<Formula(const Conj&)>& in_segment) {
    std::vector<Formula> results;
    visit_locations(
        var, c, m, [&](int, const Formula& f) { results.push_back(at_separator(f)); },
        [&](int seg, const Formula& placement, const Conj& cc) {
            results.push_back(Formula::conj(placement, from_coord(in_segment(cc), seg, m)));
        });
    std::vector<Formula> pass;
    for (const auto& l : c)
        if (!l.atom.mentions(var)) pass.push_back(literal_formula(l));
    pass.push_back(Formula::disj(std::move(results)));
    return Formula::conj(std::move(pass));
}

std::string norm_lit_str(const NormLit& l, int var, const ModelId& m) {
    std::string y = var_name(var), t = term_str(l.p, m);
    switch (l.shape) {
    case Shape::Eq: return y + " = " + t;
    case Shape::Lt: return y + " < " + t;
    case Shape::Gt: return y + " > " + t;
    case Shape::In: return y + " in C^" + std::to_string(l.k) + "(" + t + ")";
    case Shape::NotIn: return y + " notin C^" + std::to_string(l.k) + "(" + t + ")";
    }
    return {};
}

std::optional<std::vector<NormLit>> solve_for(const Literal& l, int var, const ModelId& m) {
    if (!m.is_group()) throw PreconditionError("solve_for needs a group model");
    const Atom& a = l.atom;
    Term d = a.kind == Atom::Kind::InU ? a.lhs : sub(a.lhs, a.rhs, m);
    Rat c = d.coeff(var);
    if (c.sign() == 0) return std::nullopt;
    Term rest = sub(d, Term::var(var, c), m);
    Term t = scale(Rat(-1) / c, rest, m);
    std::vector<NormLit> out;
    switch (a.kind) {
    case Atom::Kind::Less: {
        Shape s = c.sign() > 0 ? Shape::Lt : Shape::Gt;
        if (l.pos) {
            out.push_back({s, 0, t});
        } else {
            out.push_back({s == Shape::Lt ? Shape::Gt : Shape::Lt, 0, t});
            out.push_back({Shape::Eq, 0, t});
        }
        break;
    }
    case Atom::Kind::Eq:
        if (l.pos) {
            out.push_back({Shape::Eq, 0, t});
        } else {
            out.push_back({Shape::Lt, 0, t});
            out.push_back({Shape::Gt, 0, t});
        }
        break;
    case Atom::Kind::InU: out.push_back({l.pos ? Shape::In : Shape::NotIn, a.k, t}); break;
    }
    return out;
}

SolvedConj solve_conj(const Conj& c, int var, const ModelId& m) {
    SolvedConj out;
    std::vector<std::vector<NormLit>> alts;
    for (const auto& l : c) {
        if (auto s = solve_for(l, var, m))
            alts.push_back(std::move(*s));
        else
            out.rest.push_back(l);
    }
    out.mentions = !alts.empty();
    std::size_t combos = 1;
    for (const auto& a : alts) {
        combos *= a.size();
        if (combos > kDnfBudget) throw BudgetExceeded("too many literal splits in elimination");
    }
    std::vector<NormLit> pick(alts.size());
    for (std::size_t code = 0; code < combos; ++code) {
        std::size_t r = code;
        for (std::size_t i = 0; i < alts.size(); ++i) {
            pick[i] = alts[i][r % alts[i].size()];
            r /= alts[i].size();
        }
        out.branches.push_back(pick);
    }
    return out;
}

Formula eliminate_one(int var, const std::vector<NormLit>& lits, const ModelId& m) {
    FormulaRel r{m};
    (void)var;
    return OneVar<Term, FormulaRel>(m.class_levels(), r).exists(lits);
}

Formula eliminate_conj(int var, const Conj& c, const ModelId& m) {
    return m.is_group() ? eliminate_group(var, c, m) : eliminate_concat(var, c, m);
}

Formula eliminate(const Formula& phi, const ModelId& m) {
    if (phi.quantifier_free()) return phi;
    return eliminate_rec(phi, m);
}

bool eval(const Formula& phi, const Assignment& a, const ModelId& m) {
    if (phi.quantifier_free()) return eval_qf(phi, a, m);
    Formula g = phi;
    for (int v : phi.free_vars()) {
        auto it = a.find(v);
        if (it == a.end()) throw EvalError("no value for " + var_name(v));
        g = substitute(g, v, it->second, m);
    }
    Formula r = eliminate(g, m);
    if (!r.is_true() && !r.is_false()) throw InternalError("sentence did not reduce to a truth value");
    return r.is_true();
}

std::string rule_name(SatWitness::Rule r) {
    switch (r) {
    case SatWitness::Rule::EqualityPoint: return "equality point";
    case SatWitness::Rule::Midpoint: return "midpoint";
    case SatWitness::Rule::ClassOffset: return "class offset";
    case SatWitness::Rule::BeyondAll: return "beyond-all";
    }
    return {};
}

std::optional<SatWitness> sat_one_var(const std::vector<NLit<Element>>& lits, const ModelId& m) {
    if (m.is_group()) {
        std::vector<NLit<LexVector>> vl;
        std::vector<LexVector> params;
        for (const auto& l : lits) {
            const auto& p = std::get<LexVector>(l.p);
            vl.push_back({l.shape, l.k, p});
            params.push_back(p);
        }
        PointRel r;
        OneVar<LexVector, PointRel> core(m.class_levels(), r);
        for (const auto& [e, rule] : group_candidates(params, m)) {
            const auto& x = std::get<LexVector>(e);
            if (std::all_of(vl.begin(), vl.end(), [&](const auto& l) { return core.at_point(l, x); }))
                return SatWitness{e, rule};
        }
        return std::nullopt;
    }
    std::map<int, std::vector<Rat>> crit;
    for (const auto& l : lits) {
        if (l.shape == Shape::In || l.shape == Shape::NotIn) throw SignatureError("class literals need a wom model");
        const auto& p = std::get<ConcatElem>(l.p);
        if (p.is_segment()) crit[p.index].push_back(p.value);
    }
    for (const auto& [e, rule] : concat_cands(crit, m)) {
        bool ok = std::all_of(lits.begin(), lits.end(), [&](const auto& l) {
            auto c = compare(e, l.p);
            switch (l.shape) {
            case Shape::Eq: return c == 0;
            case Shape::Lt: return c < 0;
            case Shape::Gt: return c > 0;
            default: return false;
            }
        });
        if (ok) return SatWitness{e, rule};
    }
    return std::nullopt;
}

std::optional<SatWitness> sat_formula(const Formula& matrix, int var, const ModelId& m) {
    std::vector<Atom> atoms;
    collect_atoms(matrix, atoms);
    std::vector<Candidate> cands;
    if (m.is_group()) {
        std::vector<LexVector> params;
        for (const auto& a : atoms) {
            Term d = a.kind == Atom::Kind::InU ? a.lhs : sub(a.lhs, a.rhs, m);
            Rat c = d.coeff(var);
            if (c.sign() == 0) continue;
            if (d.coeffs().size() != 1) throw PreconditionError("oracle formula has more than one free variable");
            params.push_back(Rat(-1) / c * group_constant(d, m));
        }
        cands = group_candidates(params, m);
    } else {
        std::map<int, std::vector<Rat>> crit;
        for (const auto& a : atoms) {
            for (int i = 1; i <= m.m; ++i) {
                std::map<int, Location> where{{var, Location{false, i}}};
                int seg = 0;
                Formula g = seg_atom(a, where, m, &seg);
                if (g.op() != Formula::Op::Atom) continue;
                if (auto root = coord_root(g.atom(), var)) crit[i].push_back(*root);
            }
        }
        cands = concat_cands(crit, m);
    }
    for (const auto& [e, rule] : cands)
        if (eval_qf(matrix, Assignment{{var, e}}, m)) return SatWitness{e, rule};
    return std::nullopt;
}

}  // namespace dimfn
