#include "dimfn/formula.hpp"

#include <algorithm>

#include "dimfn/errors.hpp"

namespace dimfn {

std::vector<int> Atom::vars() const {
    std::vector<int> out = lhs.vars();
    for (int v : rhs.vars())
        if (!lhs.mentions(v)) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
    if (auto c = static_cast<int>(a.kind) <=> static_cast<int>(b.kind); c != 0) return c;
    if (auto c = a.k <=> b.k; c != 0) return c;
    if (auto c = a.lhs <=> b.lhs; c != 0) return c;
    return a.rhs <=> b.rhs;
}

namespace {

/// DLO atoms in the plain `s < t` form the DLO grammar accepts, when the
/// difference is x - y, x + c or c - y.
std::optional<std::string> dlo_atom_str(const Atom& a, const ModelId& m) {
    if (a.kind == Atom::Kind::InU) return std::nullopt;
    Term d = sub(a.lhs, a.rhs, m);
    std::optional<int> pos, negv;
    for (const auto& [v, q] : d.coeffs()) {
        if (q == Rat(1) && !pos) pos = v;
        else if (q == Rat(-1) && !negv) negv = v;
        else return std::nullopt;
    }
    const Rat c = group_constant(d, m).coords.at(0);
    std::string l, r;
    if (pos && negv) {
        if (c != Rat(0)) return std::nullopt;
        l = var_name(*pos);
        r = var_name(*negv);
    } else if (pos) {
        l = var_name(*pos);
        r = (-c).str();
    } else if (negv) {
        l = c.str();
        r = var_name(*negv);
    } else {
        return std::nullopt;
    }
    return l + (a.kind == Atom::Kind::Less ? " < " : " = ") + r;
}

}  // namespace

std::string atom_str(const Atom& a, const ModelId& m) {
    if (m.kind == ModelId::Kind::Dlo)
        if (auto s = dlo_atom_str(a, m)) return *s;
    switch (a.kind) {
    case Atom::Kind::Less: return term_str(a.lhs, m) + " < " + term_str(a.rhs, m);
    case Atom::Kind::Eq: return term_str(a.lhs, m) + " = " + term_str(a.rhs, m);
    case Atom::Kind::InU: return "U" + std::to_string(a.k) + "(" + term_str(a.lhs, m) + ")";
    }
    return "?";
}

bool eval_atom(const Atom& a, const Assignment& asg, const ModelId& m) {
    Element l = eval_term(a.lhs, asg, m);
    if (a.kind == Atom::Kind::InU) return in_subgroup(std::get<LexVector>(l), a.k);
    Element r = eval_term(a.rhs, asg, m);
    auto c = compare(l, r);
    return a.kind == Atom::Kind::Less ? c < 0 : c == 0;
}

namespace {

bool lex_positive(const LexVector& v) { return lex_compare(v, LexVector::zero(v.size())) > 0; }

/// Splits sum(a_i x_i) + c into (positive part, negated negative part).
std::pair<Term, Term> split_sides(const Term& d, const ModelId& m) {
    Term lhs, rhs;
    for (const auto& [v, q] : d.coeffs()) {
        if (q.sign() > 0)
            lhs = add(lhs, Term::var(v, q), m);
        else
            rhs = add(rhs, Term::var(v, -q), m);
    }
    LexVector c = group_constant(d, m);
    if (lex_positive(c))
        lhs = add(lhs, Term::constant(c), m);
    else if (!c.is_zero())
        rhs = add(rhs, Term::constant(-c), m);
    return {lhs, rhs};
}

}  // namespace

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula::Formula() {
    static const auto kTrue = std::make_shared<const Node>(Node{Op::True, {}, {}, 0});
    node_ = kTrue;
}

Formula Formula::truth(bool b) {
    static const auto kFalse = std::make_shared<const Node>(Node{Op::False, {}, {}, 0});
    if (b) return Formula();
    return Formula(kFalse);
}

Formula Formula::raw_atom(Atom a) { return make(Node{Op::Atom, std::move(a), {}, 0}); }

Formula Formula::atom(Atom::Kind kind, const Term& lhs, const Term& rhs, int k, const ModelId& m) {
    if (!m.is_group()) {
        if (kind == Atom::Kind::InU) throw SignatureError("U_k atoms need a wom model");
        if (lhs.is_ground() && rhs.is_ground()) {
            auto c = compare(*lhs.constant_part(), *rhs.constant_part());
            return truth(kind == Atom::Kind::Less ? c < 0 : c == 0);
        }
        if (lhs == rhs) return truth(kind == Atom::Kind::Eq);
        if (kind == Atom::Kind::Eq && rhs < lhs) return raw_atom(Atom{kind, 0, rhs, lhs});
        return raw_atom(Atom{kind, 0, lhs, rhs});
    }
    if (kind == Atom::Kind::InU) {
        if (k <= 0) return atom(Atom::Kind::Eq, lhs, Term(), 0, m);
        if (k > m.class_levels()) return top();
    }
    Term d = kind == Atom::Kind::InU ? lhs : sub(lhs, rhs, m);
    if (d.is_ground()) {
        LexVector c = group_constant(d, m);
        switch (kind) {
        case Atom::Kind::Less: return truth(lex_compare(c, LexVector::zero(c.size())) < 0);
        case Atom::Kind::Eq: return truth(c.is_zero());
        case Atom::Kind::InU: return truth(in_subgroup(c, k));
        }
    }
    Rat a1 = d.coeffs().begin()->second;
    Rat factor = kind == Atom::Kind::Less ? Rat(1) / a1.abs() : Rat(1) / a1;
    d = scale(factor, d, m);
    if (kind == Atom::Kind::InU) return raw_atom(Atom{kind, k, d, Term()});
    auto [l, r] = split_sides(d, m);
    return raw_atom(Atom{kind, 0, l, r});
}

Formula Formula::neg(const Formula& f) {
    switch (f.op()) {
    case Op::True: return bottom();
    case Op::False: return top();
    case Op::Not: return f.kids()[0];
    default: return make(Node{Op::Not, {}, {f}, 0});
    }
}

Formula Formula::conj(std::vector<Formula> fs) {
    std::vector<Formula> kids;
    for (auto& f : fs) {
        if (f.is_false()) return bottom();
        if (f.is_true()) continue;
        if (f.op() == Op::And)
            kids.insert(kids.end(), f.kids().begin(), f.kids().end());
        else
            kids.push_back(std::move(f));
    }
    if (kids.empty()) return top();
    if (kids.size() == 1) return kids[0];
    return make(Node{Op::And, {}, std::move(kids), 0});
}

Formula Formula::disj(std::vector<Formula> fs) {
    std::vector<Formula> kids;
    for (auto& f : fs) {
        if (f.is_true()) return top();
        if (f.is_false()) continue;
        if (f.op() == Op::Or)
            kids.insert(kids.end(), f.kids().begin(), f.kids().end());
        else
            kids.push_back(std::move(f));
    }
    if (kids.empty()) return bottom();
    if (kids.size() == 1) return kids[0];
    return make(Node{Op::Or, {}, std::move(kids), 0});
}

Formula Formula::exists(int v, const Formula& body) {
    return make(Node{Op::Exists, {}, {body}, v});
}

Formula Formula::forall(int v, const Formula& body) {
    return make(Node{Op::Forall, {}, {body}, v});
}

bool Formula::quantifier_free() const {
    if (op() == Op::Exists || op() == Op::Forall) return false;
    return std::all_of(kids().begin(), kids().end(), [](const Formula& k) { return k.quantifier_free(); });
}

std::set<int> Formula::free_vars() const {
    std::set<int> out;
    switch (op()) {
    case Op::True:
    case Op::False: break;
    case Op::Atom:
        for (int v : atom().vars()) out.insert(v);
        break;
    case Op::Exists:
    case Op::Forall:
        out = kids()[0].free_vars();
        out.erase(var());
        break;
    default:
        for (const auto& k : kids()) {
            auto s = k.free_vars();
            out.insert(s.begin(), s.end());
        }
    }
    return out;
}

std::size_t Formula::size() const {
    std::size_t s = 1;
    for (const auto& k : kids()) s += k.size();
    return s;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op() || a.var() != b.var()) return false;
    if (a.op() == Formula::Op::Atom) return a.atom() == b.atom();
    return a.kids() == b.kids();
}

namespace {

enum class Ctx { Top, OrArg, AndArg };

std::string print(const Formula& f, const ModelId& m, Ctx ctx) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return atom_str(f.atom(), m);
    case Op::Not: return "!(" + print(f.kids()[0], m, Ctx::Top) + ")";
    case Op::And: {
        std::string s;
        for (std::size_t i = 0; i < f.kids().size(); ++i)
            s += (i ? " & " : "") + print(f.kids()[i], m, Ctx::AndArg);
        return ctx == Ctx::Top || ctx == Ctx::OrArg ? s : "(" + s + ")";
    }
    case Op::Or: {
        std::string s;
        for (std::size_t i = 0; i < f.kids().size(); ++i)
            s += (i ? " | " : "") + print(f.kids()[i], m, Ctx::OrArg);
        return ctx == Ctx::Top ? s : "(" + s + ")";
    }
    case Op::Exists:
    case Op::Forall: {
        std::string s = std::string(f.op() == Op::Exists ? "E " : "A ") + var_name(f.var()) + ". " +
                        print(f.kids()[0], m, Ctx::Top);
        return ctx == Ctx::Top ? s : "(" + s + ")";
    }
    }
    return "?";
}

template <class AtomFn>
Formula map_atoms(const Formula& f, const std::set<int>& stop_vars, const AtomFn& fn) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True:
    case Op::False: return f;
    case Op::Atom: return fn(f.atom());
    case Op::Not: return Formula::neg(map_atoms(f.kids()[0], stop_vars, fn));
    case Op::And:
    case Op::Or: {
        std::vector<Formula> ks;
        ks.reserve(f.kids().size());
        for (const auto& k : f.kids()) ks.push_back(map_atoms(k, stop_vars, fn));
        return f.op() == Op::And ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
    }
    case Op::Exists:
    case Op::Forall: {
        if (stop_vars.count(f.var())) return f;
        Formula body = map_atoms(f.kids()[0], stop_vars, fn);
        return f.op() == Op::Exists ? Formula::exists(f.var(), body) : Formula::forall(f.var(), body);
    }
    }
    return f;
}

}  // namespace

std::string to_string(const Formula& f, const ModelId& m) { return print(f, m, Ctx::Top); }

Formula substitute(const Formula& f, int v, const Element& e, const ModelId& m) {
    return map_atoms(f, {v}, [&](const Atom& a) {
        if (!a.mentions(v)) return Formula::raw_atom(a);
        return Formula::atom(a.kind, substitute(a.lhs, v, e, m), substitute(a.rhs, v, e, m), a.k, m);
    });
}

Formula substitute(const Formula& f, int v, const Term& t, const ModelId& m) {
    return map_atoms(f, {v}, [&](const Atom& a) {
        if (!a.mentions(v)) return Formula::raw_atom(a);
        return Formula::atom(a.kind, substitute(a.lhs, v, t, m), substitute(a.rhs, v, t, m), a.k, m);
    });
}

Formula rename(const Formula& f, const std::map<int, int>& perm, const ModelId& m) {
    return map_atoms(f, {}, [&](const Atom& a) {
        return Formula::atom(a.kind, rename(a.lhs, perm), rename(a.rhs, perm), a.k, m);
    });
}

Formula nnf(const Formula& f) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::And:
    case Op::Or: {
        std::vector<Formula> ks;
        for (const auto& k : f.kids()) ks.push_back(nnf(k));
        return f.op() == Op::And ? Formula::conj(std::move(ks)) : Formula::disj(std::move(ks));
    }
    case Op::Not: {
        const Formula& g = f.kids()[0];
        switch (g.op()) {
        case Op::Atom: return f;
        case Op::Not: return nnf(g.kids()[0]);
        case Op::And:
        case Op::Or: {
            std::vector<Formula> ks;
            for (const auto& k : g.kids()) ks.push_back(nnf(Formula::neg(k)));
            return g.op() == Op::And ? Formula::disj(std::move(ks)) : Formula::conj(std::move(ks));
        }
        default: throw PreconditionError("nnf expects a quantifier-free formula");
        }
    }
    default: throw PreconditionError("nnf expects a quantifier-free formula");
    }
}

bool eval_qf(const Formula& f, const Assignment& a, const ModelId& m) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return eval_atom(f.atom(), a, m);
    case Op::Not: return !eval_qf(f.kids()[0], a, m);
    case Op::And:
        for (const auto& k : f.kids())
            if (!eval_qf(k, a, m)) return false;
        return true;
    case Op::Or:
        for (const auto& k : f.kids())
            if (eval_qf(k, a, m)) return true;
        return false;
    default: throw PreconditionError("eval_qf expects a quantifier-free formula");
    }
}

}  // namespace dimfn
