#include "dimfn/term.hpp"

#include "dimfn/errors.hpp"

namespace dimfn {

std::string var_name(int v) {
    if (v >= kFirstBoundVar) return "y" + std::to_string(v - kFirstBoundVar + 1);
    return "x" + std::to_string(v);
}

Term Term::var(int v, const Rat& coeff) {
    Term t;
    if (!coeff.is_zero()) t.coeffs_.emplace(v, coeff);
    return t;
}

Term Term::constant(Element c) {
    Term t;
    if (const auto* lv = std::get_if<LexVector>(&c); lv && lv->is_zero()) return t;
    t.constant_ = std::move(c);
    return t;
}

Rat Term::coeff(int v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

std::optional<int> Term::as_lone_var() const {
    if (constant_ || coeffs_.size() != 1 || coeffs_.begin()->second != Rat(1)) return std::nullopt;
    return coeffs_.begin()->first;
}

std::vector<int> Term::vars() const {
    std::vector<int> out;
    for (const auto& [v, q] : coeffs_) out.push_back(v);
    return out;
}

bool operator==(const Term& a, const Term& b) {
    return a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
}

namespace {

std::strong_ordering cmp_element(const Element& a, const Element& b) {
    if (a.index() != b.index()) return a.index() <=> b.index();
    if (const auto* va = std::get_if<LexVector>(&a)) {
        const auto& vb = std::get<LexVector>(b);
        if (va->size() != vb.size()) return va->size() <=> vb.size();
        return lex_compare(*va, vb);
    }
    return std::get<ConcatElem>(a) <=> std::get<ConcatElem>(b);
}

}  // namespace

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
    for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
        if (auto c = ia->first <=> ib->first; c != 0) return c;
        if (auto c = ia->second <=> ib->second; c != 0) return c;
    }
    if (ia != a.coeffs_.end()) return std::strong_ordering::greater;
    if (ib != b.coeffs_.end()) return std::strong_ordering::less;
    if (a.constant_.has_value() != b.constant_.has_value())
        return a.constant_.has_value() <=> b.constant_.has_value();
    if (!a.constant_) return std::strong_ordering::equal;
    return cmp_element(*a.constant_, *b.constant_);
}

LexVector group_constant(const Term& t, const ModelId& m) {
    if (!t.constant_part()) return LexVector::zero(m.vec_len());
    return std::get<LexVector>(*t.constant_part());
}

Term add(const Term& a, const Term& b, const ModelId& m) {
    Term r = a;
    for (const auto& [v, q] : b.coeffs_) {
        Rat s = r.coeff(v) + q;
        if (s.is_zero())
            r.coeffs_.erase(v);
        else
            r.coeffs_[v] = s;
    }
    if (m.is_group()) {
        LexVector c = group_constant(a, m) + group_constant(b, m);
        r.constant_.reset();
        if (!c.is_zero()) r.constant_ = Element(std::move(c));
    } else if (b.constant_) {
        const auto& cb = std::get<ConcatElem>(*b.constant_);
        r.constant_ = a.constant_ ? Element(concat_add(std::get<ConcatElem>(*a.constant_), cb, m.m))
                                  : Element(cb);
    }
    return r;
}

Term scale(const Rat& q, const Term& a, const ModelId& m) {
    Term r;
    if (q.is_zero()) return r;
    for (const auto& [v, c] : a.coeffs_) r.coeffs_.emplace(v, q * c);
    if (a.constant_) {
        if (m.is_group())
            r.constant_ = Element(q * std::get<LexVector>(*a.constant_));
        else
            r.constant_ = Element(concat_scale(q, std::get<ConcatElem>(*a.constant_), m.m));
    }
    return r;
}

Term sub(const Term& a, const Term& b, const ModelId& m) { return add(a, scale(Rat(-1), b, m), m); }

Term substitute(const Term& t, int v, const Element& e, const ModelId& m) {
    auto it = t.coeffs_.find(v);
    if (it == t.coeffs_.end()) return t;
    Rat q = it->second;
    bool lone = t.as_lone_var().has_value();
    Term r = t;
    r.coeffs_.erase(v);
    if (m.is_group()) {
        LexVector c = group_constant(t, m) + q * std::get<LexVector>(e);
        r.constant_.reset();
        if (!c.is_zero()) r.constant_ = Element(std::move(c));
        return r;
    }
    const auto& ce = std::get<ConcatElem>(e);
    ConcatElem scaled = lone ? ce : concat_scale(q, ce, m.m);
    r.constant_ = t.constant_ ? Element(concat_add(std::get<ConcatElem>(*t.constant_), scaled, m.m))
                              : Element(scaled);
    return r;
}

Term substitute(const Term& t, int v, const Term& s, const ModelId& m) {
    if (!m.is_group()) throw InternalError("term substitution needs a group model");
    auto it = t.coeffs_.find(v);
    if (it == t.coeffs_.end()) return t;
    Rat q = it->second;
    Term r = t;
    r.coeffs_.erase(v);
    return add(r, scale(q, s, m), m);
}

Term rename(const Term& t, const std::map<int, int>& perm) {
    Term r;
    r.constant_ = t.constant_;
    for (const auto& [v, q] : t.coeffs_) {
        auto it = perm.find(v);
        r.coeffs_.emplace(it == perm.end() ? v : it->second, q);
    }
    return r;
}

Term drop_constant(const Term& t) {
    Term r = t;
    r.constant_.reset();
    return r;
}

Element eval_term(const Term& t, const Assignment& a, const ModelId& m) {
    Term r = t;
    for (const auto& v : t.vars()) {
        auto it = a.find(v);
        if (it == a.end()) throw EvalError("unassigned variable " + var_name(v));
        r = substitute(r, v, it->second, m);
    }
    if (r.constant_part()) return *r.constant_part();
    if (m.is_group()) return LexVector::zero(m.vec_len());
    throw InternalError("concatenation term without value");
}

namespace {

std::string coeff_prefix(const Rat& q, bool first) {
    Rat a = q.abs();
    std::string s;
    if (first)
        s = q.sign() < 0 ? "-" : "";
    else
        s = q.sign() < 0 ? " - " : " + ";
    if (a != Rat(1)) s += a.str() + "*";
    return s;
}

}  // namespace

std::string term_str(const Term& t, const ModelId& m) {
    std::string s;
    bool first = true;
    for (const auto& [v, q] : t.coeffs()) {
        s += coeff_prefix(q, first) + var_name(v);
        first = false;
    }
    const auto& c = t.constant_part();
    if (!c) return first ? (m.is_group() ? LexVector::zero(m.vec_len()).str() : "(1:0)") : s;
    if (const auto* lv = std::get_if<LexVector>(&*c)) {
        bool neg = lex_compare(*lv, LexVector::zero(lv->size())) < 0;
        if (first) return lv->str();
        return s + (neg ? " - " : " + ") + (neg ? (-*lv).str() : lv->str());
    }
    std::string cs = std::get<ConcatElem>(*c).str();
    return first ? cs : s + " + " + cs;
}

}  // namespace dimfn
