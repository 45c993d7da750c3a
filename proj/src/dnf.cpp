#include "dimfn/dnf.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "dimfn/errors.hpp"
#include "dimfn/onevar.hpp"
#include "dimfn/segment.hpp"

namespace dimfn {
namespace {

std::optional<Conj> merge(const Conj& a, const Conj& b) {
    Conj out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].atom == out[i - 1].atom) return std::nullopt;
    return out;
}

void check_budget(std::size_t n) {
    if (n > kDnfBudget) throw BudgetExceeded("normal form exceeds " + std::to_string(kDnfBudget) + " conjunctions");
}

using Key = std::vector<std::pair<int, Rat>>;

/// Literal on t = key . x, where key has leading coefficient 1.
struct KeyedLit {
    Key key;
    std::vector<NLit<LexVector>> alts;
};

KeyedLit keyed(const Literal& l, const ModelId& m) {
    const Atom& a = l.atom;
    Term d = a.kind == Atom::Kind::InU ? a.lhs : sub(a.lhs, a.rhs, m);
    Rat s = d.coeffs().begin()->second.sign() < 0 ? Rat(-1) : Rat(1);
    Term e = scale(s, d, m);
    KeyedLit out;
    for (const auto& [v, q] : e.coeffs()) out.key.emplace_back(v, q);
    LexVector p = -group_constant(e, m);
    auto one = [&](Shape sh, int k = 0) { out.alts.push_back({sh, k, p}); };
    switch (a.kind) {
    case Atom::Kind::Less: {
        Shape sh = s.sign() > 0 ? Shape::Lt : Shape::Gt;
        if (l.pos) {
            one(sh);
        } else {
            one(sh == Shape::Lt ? Shape::Gt : Shape::Lt);
            one(Shape::Eq);
        }
        break;
    }
    case Atom::Kind::Eq:
        if (l.pos) {
            one(Shape::Eq);
        } else {
            one(Shape::Lt);
            one(Shape::Gt);
        }
        break;
    case Atom::Kind::InU: one(l.pos ? Shape::In : Shape::NotIn, a.k); break;
    }
    return out;
}

bool group_consistent(const Conj& c, const ModelId& m) {
    std::map<Key, std::vector<std::vector<NLit<LexVector>>>> groups;
    for (const auto& l : c) {
        KeyedLit k = keyed(l, m);
        groups[k.key].push_back(std::move(k.alts));
    }
    for (const auto& [key, lits] : groups) {
        if (lits.size() < 2) continue;
        std::size_t combos = 1;
        for (const auto& alts : lits) combos *= alts.size();
        if (combos > 256) continue;
        bool sat = false;
        std::vector<NLit<LexVector>> pick(lits.size());
        for (std::size_t code = 0; code < combos && !sat; ++code) {
            std::size_t r = code;
            for (std::size_t i = 0; i < lits.size(); ++i) {
                pick[i] = lits[i][r % lits[i].size()];
                r /= lits[i].size();
            }
            sat = exists_point(pick, m.class_levels());
        }
        if (!sat) return false;
    }
    return true;
}

bool concat_consistent(const Conj& c, const ModelId& m) {
    std::map<int, std::vector<const Literal*>> by_var;
    for (const auto& l : c) {
        const Atom& a = l.atom;
        auto lv = a.lhs.as_lone_var();
        auto rv = a.rhs.as_lone_var();
        if (lv && a.rhs.is_ground())
            by_var[*lv].push_back(&l);
        else if (rv && a.lhs.is_ground())
            by_var[*rv].push_back(&l);
    }
    for (const auto& [v, lits] : by_var) {
        if (lits.size() < 2) continue;
        std::map<int, std::vector<Rat>> crit;
        for (const Literal* l : lits) {
            const Term& g = l->atom.lhs.is_ground() ? l->atom.lhs : l->atom.rhs;
            const auto& e = std::get<ConcatElem>(*g.constant_part());
            if (e.is_segment()) crit[e.index].push_back(e.value);
        }
        bool sat = false;
        for (const auto& cand : concat_candidates(m.m, crit)) {
            Assignment asg{{v, Element(cand)}};
            bool all = true;
            for (const Literal* l : lits)
                if (eval_atom(l->atom, asg, m) != l->pos) {
                    all = false;
                    break;
                }
            if (all) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

Dnf dnf_rec(const Formula& f, const ModelId& m) {
    using Op = Formula::Op;
    switch (f.op()) {
    case Op::True: return Dnf::top();
    case Op::False: return Dnf::bottom();
    case Op::Atom: return dnf_literal({f.atom(), true});
    case Op::Not: {
        const Formula& g = f.kids()[0];
        if (g.op() != Op::Atom) throw InternalError("dnf expects negation normal form");
        return dnf_literal({g.atom(), false});
    }
    case Op::Or: {
        Dnf acc;
        for (const auto& k : f.kids()) {
            Dnf d = dnf_rec(k, m);
            acc.conjs.insert(acc.conjs.end(), d.conjs.begin(), d.conjs.end());
            check_budget(acc.conjs.size());
        }
        simplify(acc, m);
        return acc;
    }
    case Op::And: {
        std::vector<Dnf> parts;
        for (const auto& k : f.kids()) parts.push_back(dnf_rec(k, m));
        std::sort(parts.begin(), parts.end(),
                  [](const Dnf& a, const Dnf& b) { return a.conjs.size() < b.conjs.size(); });
        Dnf acc = Dnf::top();
        for (const auto& p : parts) {
            acc = dnf_and(acc, p, m);
            if (acc.is_false()) break;
        }
        return acc;
    }
    default: throw PreconditionError("dnf expects a quantifier-free formula");
    }
}

}  // namespace

bool conj_consistent(const Conj& c, const ModelId& m) {
    return m.is_group() ? group_consistent(c, m) : concat_consistent(c, m);
}

Dnf dnf_literal(const Literal& l) { return Dnf{{Conj{l}}}; }

Dnf dnf_of(const Formula& qf, const ModelId& m) { return dnf_rec(nnf(qf), m); }

Dnf dnf_and(const Dnf& a, const Dnf& b, const ModelId& m) {
    if (a.is_true()) return b;
    if (b.is_true()) return a;
    Dnf out;
    for (const auto& ca : a.conjs)
        for (const auto& cb : b.conjs) {
            auto c = merge(ca, cb);
            if (!c) continue;
            if (c->size() > std::max(ca.size(), cb.size()) && !conj_consistent(*c, m)) continue;
            out.conjs.push_back(std::move(*c));
            check_budget(out.conjs.size());
        }
    simplify(out, m);
    return out;
}

Dnf dnf_or(const Dnf& a, const Dnf& b, const ModelId& m) {
    Dnf out = a;
    out.conjs.insert(out.conjs.end(), b.conjs.begin(), b.conjs.end());
    check_budget(out.conjs.size());
    simplify(out, m);
    return out;
}

Dnf dnf_not(const Dnf& a, const ModelId& m) {
    Dnf acc = Dnf::top();
    std::vector<const Conj*> order;
    for (const auto& c : a.conjs) order.push_back(&c);
    std::sort(order.begin(), order.end(), [](const Conj* x, const Conj* y) { return x->size() < y->size(); });
    for (const Conj* c : order) {
        Dnf neg;
        for (const auto& l : *c) neg.conjs.push_back(Conj{Literal{l.atom, !l.pos}});
        acc = dnf_and(acc, neg, m);
        if (acc.is_false()) break;
    }
    return acc;
}

void simplify(Dnf& d, const ModelId& /*m*/) {
    if (d.conjs.empty()) return;
    for (const auto& c : d.conjs)
        if (c.empty()) {
            d = Dnf::top();
            return;
        }
    // Intern literals as small integers for fast subset tests.
    std::map<Atom, int> ids;
    std::vector<const Atom*> atoms;
    auto code_of = [&](const Literal& l) {
        auto [it, fresh] = ids.emplace(l.atom, static_cast<int>(atoms.size()));
        if (fresh) atoms.push_back(&it->first);
        return 2 * it->second + (l.pos ? 0 : 1);
    };
    std::vector<std::vector<int>> cs;
    cs.reserve(d.conjs.size());
    for (const auto& c : d.conjs) {
        std::vector<int> v;
        v.reserve(c.size());
        for (const auto& l : c) v.push_back(code_of(l));
        std::sort(v.begin(), v.end());
        cs.push_back(std::move(v));
    }
    auto subsume = [&]() {
        std::sort(cs.begin(), cs.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        std::vector<std::vector<int>> kept;
        for (auto& c : cs) {
            bool sub = false;
            for (const auto& k : kept)
                if (k.size() <= c.size() && std::includes(c.begin(), c.end(), k.begin(), k.end())) {
                    sub = true;
                    break;
                }
            if (!sub) kept.push_back(std::move(c));
        }
        cs = std::move(kept);
    };
    subsume();
    for (int pass = 0; pass < 8; ++pass) {
        bool changed = false;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const auto& a = cs[i];
            for (std::size_t j = 0; j < cs.size(); ++j) {
                if (i == j || a.empty()) continue;
                auto& b = cs[j];
                if (b.size() < a.size()) continue;
                // a = A + {l}, b contains A and the complement of l.
                int missing = -1, count = 0;
                for (int x : a)
                    if (!std::binary_search(b.begin(), b.end(), x)) {
                        missing = x;
                        if (++count > 1) break;
                    }
                if (count != 1) continue;
                auto it = std::lower_bound(b.begin(), b.end(), missing ^ 1);
                if (it == b.end() || *it != (missing ^ 1)) continue;
                b.erase(it);
                changed = true;
                if (b.empty()) {
                    d = Dnf::top();
                    return;
                }
            }
        }
        if (!changed) break;
        subsume();
    }
    d.conjs.clear();
    for (const auto& c : cs) {
        Conj out;
        out.reserve(c.size());
        for (int x : c) out.push_back(Literal{*atoms[x / 2], (x & 1) == 0});
        std::sort(out.begin(), out.end());
        d.conjs.push_back(std::move(out));
    }
    std::sort(d.conjs.begin(), d.conjs.end(), [](const Conj& a, const Conj& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
}

Formula literal_formula(const Literal& l) {
    Formula a = Formula::raw_atom(l.atom);
    return l.pos ? a : Formula::neg(a);
}

Formula conj_formula(const Conj& c) {
    std::vector<Formula> ks;
    for (const auto& l : c) ks.push_back(literal_formula(l));
    return Formula::conj(std::move(ks));
}

Formula to_formula(const Dnf& d) {
    std::vector<Formula> ks;
    for (const auto& c : d.conjs) ks.push_back(conj_formula(c));
    return Formula::disj(std::move(ks));
}

Formula to_dnf(const Formula& qf, const ModelId& m) { return to_formula(dnf_of(qf, m)); }

}  // namespace dimfn
