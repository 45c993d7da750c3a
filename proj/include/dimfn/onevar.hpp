#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dimfn/errors.hpp"
#include "dimfn/model.hpp"

namespace dimfn {

/// Shape of a literal solved for the eliminated variable y.
enum class Shape { Eq, Lt, Gt, In, NotIn };  // y = p, y < p, y > p, y in C^k(p), y not in C^k(p)

template <class P>
struct NLit {
    Shape shape;
    int k = 0;  // class level for In / NotIn, 1..levels
    P p;
};

/// Decides "exists y satisfying every literal" for the group model with
/// `levels` proper convex subgroups. The answer is built in the boolean algebra
/// supplied by `R`, which provides
///   B top(), bot(); B lt(P,P), eq(P,P), sim(int k, P, P);
///   B conj(B,B), disj(B,B), neg(B).
/// With R over concrete points this is a decision procedure; with R over terms
/// it produces the quantifier-free equivalent.
template <class P, class R>
class OneVar {
public:
    using B = decltype(std::declval<R&>().top());

    OneVar(int levels, R& r) : levels_(levels), r_(r) {}

    B exists(const std::vector<NLit<P>>& lits) const {
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (lits[i].shape == Shape::Eq || (lits[i].shape == Shape::In && lits[i].k == 0)) {
                B acc = r_.top();
                for (std::size_t j = 0; j < lits.size(); ++j)
                    if (j != i) acc = r_.conj(acc, at_point(lits[j], lits[i].p));
                return acc;
            }
        }
        std::optional<std::size_t> cls;
        for (std::size_t i = 0; i < lits.size(); ++i)
            if (lits[i].shape == Shape::In && (!cls || lits[i].k < lits[*cls].k)) cls = i;
        B acc = r_.top();
        std::vector<const P*> lowers, uppers;
        std::vector<std::pair<int, const P*>> outs;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            const auto& l = lits[i];
            switch (l.shape) {
            case Shape::In:
                if (i != *cls) acc = r_.conj(acc, r_.sim(l.k, lits[*cls].p, l.p));
                break;
            case Shape::Lt: uppers.push_back(&l.p); break;
            case Shape::Gt: lowers.push_back(&l.p); break;
            case Shape::NotIn:
                if (l.k <= 0) throw InternalError("excluded class of level 0 must be split");
                outs.emplace_back(l.k, &l.p);
                break;
            case Shape::Eq: break;
            }
        }
        int K = cls ? lits[*cls].k : levels_ + 1;
        const P* c = cls ? &lits[*cls].p : nullptr;
        return r_.conj(acc, in_coset(K, c, lowers, uppers, outs));
    }

    /// Truth of literal `l` at y = p.
    B at_point(const NLit<P>& l, const P& p) const {
        switch (l.shape) {
        case Shape::Eq: return r_.eq(p, l.p);
        case Shape::Lt: return r_.lt(p, l.p);
        case Shape::Gt: return r_.lt(l.p, p);
        case Shape::In: return l.k == 0 ? r_.eq(p, l.p) : r_.sim(l.k, p, l.p);
        case Shape::NotIn: return r_.neg(l.k == 0 ? r_.eq(p, l.p) : r_.sim(l.k, p, l.p));
        }
        return r_.bot();
    }

private:
    /// Nonemptiness of {y in C^K(c) : lowers < y < uppers, y outside `outs`};
    /// K > levels means the whole model and c is unused.
    B in_coset(int K, const P* c, const std::vector<const P*>& lowers, const std::vector<const P*>& uppers,
               const std::vector<std::pair<int, const P*>>& outs) const {
        bool whole = K > levels_;
        B acc = r_.top();
        std::vector<std::pair<int, const P*>> small;
        for (const auto& [k, d] : outs) {
            if (!whole && k >= K)
                acc = r_.conj(acc, r_.neg(r_.sim(k, *d, *c)));
            else
                small.emplace_back(k, d);
        }
        if (whole && small.empty()) {
            for (const P* l : lowers)
                for (const P* u : uppers) acc = r_.conj(acc, r_.lt(*l, *u));
            return acc;
        }
        auto inside = [&](const P& b) { return whole ? r_.top() : r_.sim(K, b, *c); };
        auto outside_ok = [&](const P& b, bool lower) {
            if (whole) return r_.bot();
            return r_.conj(r_.neg(inside(b)), lower ? r_.lt(b, *c) : r_.lt(*c, b));
        };
        // Condition that bound `i` (or none, i == npos) is the effective one.
        auto choose = [&](const std::vector<const P*>& bs, std::size_t i, bool lower) {
            B cond = i == npos ? r_.top() : inside(*bs[i]);
            for (std::size_t j = 0; j < bs.size(); ++j) {
                if (j == i) continue;
                B alt = outside_ok(*bs[j], lower);
                if (i != npos) {
                    const P& a = lower ? *bs[j] : *bs[i];
                    const P& b = lower ? *bs[i] : *bs[j];
                    B before = r_.lt(a, b);
                    if (j > i) before = r_.disj(before, r_.eq(a, b));
                    alt = r_.disj(r_.conj(inside(*bs[j]), before), alt);
                }
                cond = r_.conj(cond, alt);
            }
            return cond;
        };
        B result = r_.bot();
        for (std::size_t li = 0; li <= lowers.size(); ++li) {
            std::size_t lsel = li == lowers.size() ? npos : li;
            B cl = choose(lowers, lsel, true);
            for (std::size_t ui = 0; ui <= uppers.size(); ++ui) {
                std::size_t usel = ui == uppers.size() ? npos : ui;
                B cu = choose(uppers, usel, false);
                B pair = r_.top();
                if (lsel != npos && usel != npos) {
                    const P& L = *lowers[lsel];
                    const P& U = *uppers[usel];
                    pair = r_.lt(L, U);
                    for (const auto& [k, d] : small)
                        pair = r_.conj(pair, r_.neg(r_.conj(r_.sim(k, L, *d), r_.sim(k, U, *d))));
                }
                result = r_.disj(result, r_.conj(cl, r_.conj(cu, pair)));
            }
        }
        return r_.conj(acc, result);
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    int levels_;
    R& r_;
};

/// Relations between concrete group elements.
struct PointRel {
    bool top() const { return true; }
    bool bot() const { return false; }
    bool lt(const LexVector& a, const LexVector& b) const { return lex_compare(a, b) < 0; }
    bool eq(const LexVector& a, const LexVector& b) const { return a == b; }
    bool sim(int k, const LexVector& a, const LexVector& b) const { return sep_level(a, b) <= k; }
    bool conj(bool a, bool b) const { return a && b; }
    bool disj(bool a, bool b) const { return a || b; }
    bool neg(bool a) const { return !a; }
};

/// Exact satisfiability of a conjunction of solved literals with concrete
/// parameters in the group model with `levels` class levels.
inline bool exists_point(const std::vector<NLit<LexVector>>& lits, int levels) {
    PointRel r;
    return OneVar<LexVector, PointRel>(levels, r).exists(lits);
}

}  // namespace dimfn
