#include "dimfn/dims.hpp"

#include <charconv>

#include "dimfn/errors.hpp"
#include "dimfn/parser.hpp"
#include "dimfn/segment.hpp"

namespace dimfn {

DimValue DimValue::of(int d) {
    if (d < 0) throw PreconditionError("dimension must be nonnegative");
    DimValue v;
    v.v_ = d;
    return v;
}

int DimValue::value() const {
    if (!v_) throw PreconditionError("-inf has no integer value");
    return *v_;
}

std::strong_ordering operator<=>(const DimValue& a, const DimValue& b) {
    if (!a.v_ || !b.v_) return a.v_.has_value() <=> b.v_.has_value();
    return *a.v_ <=> *b.v_;
}

DimEngine DimEngine::top(const ModelId& m) { return DimEngine(Kind::Top, m); }

DimEngine DimEngine::w(const ModelId& m, int kappa) {
    if (m.kind != ModelId::Kind::Wom) throw SignatureError("w engines need a wom model");
    if (kappa < 1 || kappa > m.m)
        throw UserError("kappa must lie in 1.." + std::to_string(m.m) + ", got " + std::to_string(kappa));
    DimEngine e(Kind::W, m);
    e.kappa_ = kappa;
    return e;
}

DimEngine DimEngine::interval(const ModelId& m, const Formula& I) {
    if (m.kind == ModelId::Kind::Wom) throw SignatureError("I engines need a dlo or concat model");
    Formula f = I.quantifier_free() ? I : eliminate(I, m);
    for (int v : f.free_vars())
        if (v != 1) throw UserError("I must be a formula in x1 only");
    if (dim(f, 1, top(m)) != DimValue::of(1)) throw UserError("I must define an infinite set");
    DimEngine e(Kind::I, m);
    e.interval_ = to_dnf(f, m);
    return e;
}

DimEngine DimEngine::parse(std::string_view spec, const ModelId& m) {
    if (spec == "top") return top(m);
    if (spec.substr(0, 2) == "w:") {
        int k = 0;
        auto body = spec.substr(2);
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
        if (ec != std::errc() || p != body.data() + body.size() || body.empty())
            throw UserError("bad engine spec '" + std::string(spec) + "'");
        return w(m, k);
    }
    if (spec.substr(0, 2) == "I:") return interval(m, dimfn::parse(spec.substr(2), m));
    throw UserError("unknown engine '" + std::string(spec) + "' (expected top, w:<k> or I:<formula>)");
}

std::string DimEngine::name() const {
    switch (kind_) {
    case Kind::Top: return "top";
    case Kind::W: return "w:" + std::to_string(kappa_);
    case Kind::I: return "I:" + to_string(interval_, model_);
    }
    return {};
}

std::optional<DimValue> DimEngine::cached(const std::string& key) const {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->table.find(key);
    if (it == memo_->table.end()) return std::nullopt;
    return it->second;
}

void DimEngine::remember(const std::string& key, DimValue d) const {
    std::lock_guard<std::mutex> lock(memo_->mu);
    memo_->table.emplace(key, d);
}

int fiber_dim_top(const FiberShape& s) { return s.is_point() ? 0 : 1; }

int fiber_dim_w(const FiberShape& s, int kappa, const Certificate& cert) {
    if (s.is_point()) return 0;
    if (s.cls && s.cls->k <= kappa) return 0;
    if (!s.upper || !s.lower) return 1;
    if (s.upper->k > kappa || s.lower->k > kappa) return 1;
    auto level = [&](int i, int j) { return find_relation(cert, i, j).level; };
    if (!s.cls) return level(2, 3) <= kappa ? 0 : 1;
    const int k1 = s.cls->k;
    return level(1, 2) <= k1 && level(1, 3) <= k1 && level(2, 3) <= kappa ? 0 : 1;
}

int fiber_dim_I(const FiberShape& s, const Assignment& base, int n, const Formula& I, const ModelId& m) {
    Formula f = fiber_formula(s, n, m);
    for (const auto& [v, e] : base)
        if (v < n) f = substitute(f, v, e, m);
    f = rename(f, {{n, 1}}, m);
    for (const auto& p : pieces(Formula::conj(f, I), 1, m))
        if (!p.fiber.is_point() && eval(p.guard, {}, m)) return 1;
    return 0;
}

namespace {

Formula simf(int k, const Term& a, const Term& b, const ModelId& m) { return Formula::in_u(k, sub(a, b, m), m); }

bool has_eq(const std::vector<NormLit>& b) {
    for (const auto& l : b)
        if (l.shape == Shape::Eq) return true;
    return false;
}

/// Base condition for a branch fiber to have dim_w^kappa equal to 1.
Formula w_branch(const std::vector<NormLit>& branch, int y, int kappa, const ModelId& m) {
    if (has_eq(branch)) return Formula::bottom();
    std::vector<NormLit> fixed;
    std::vector<FiberPart> ups, los, outs;
    std::optional<FiberPart> cls;
    for (const auto& l : branch) {
        switch (l.shape) {
        case Shape::In:
            fixed.push_back(l);
            if (!cls || l.k < cls->k) cls = FiberPart{l.k, l.p};
            break;
        case Shape::Lt:
            fixed.push_back(l);
            ups.push_back({0, l.p});
            break;
        case Shape::Gt:
            fixed.push_back(l);
            los.push_back({0, l.p});
            break;
        case Shape::NotIn: outs.push_back({l.k, l.p}); break;
        case Shape::Eq: break;
        }
    }
    if (cls && cls->k <= kappa) return Formula::bottom();
    if (outs.size() > 12) throw BudgetExceeded("too many excluded classes in one fiber");
    std::vector<Formula> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << outs.size()); ++mask) {
        std::vector<NormLit> lits = fixed;
        std::vector<FiberPart> u = ups, lo = los;
        for (std::size_t i = 0; i < outs.size(); ++i) {
            bool above = (mask >> i) & 1;
            (above ? lo : u).push_back(outs[i]);
            lits.push_back({above ? Shape::Gt : Shape::Lt, 0, outs[i].f});
            lits.push_back({Shape::NotIn, outs[i].k, outs[i].f});
        }
        Formula nonempty = eliminate_one(y, lits, m);
        if (nonempty.is_false()) continue;
        if (u.empty() || lo.empty()) {
            out.push_back(nonempty);
            continue;
        }
        std::vector<Formula> large;
        for (std::size_t iu = 0; iu < u.size(); ++iu)
            for (std::size_t il = 0; il < lo.size(); ++il) {
                const FiberPart& a2 = u[iu];
                const FiberPart& a3 = lo[il];
                Formula small = Formula::bottom();
                if (a2.k <= kappa && a3.k <= kappa) {
                    small = simf(kappa, a2.f, a3.f, m);
                    if (cls)
                        small = Formula::conj({simf(cls->k, cls->f, a2.f, m), simf(cls->k, cls->f, a3.f, m), small});
                }
                if (small.is_true()) continue;
                large.push_back(Formula::conj({tightest_bound(u, iu, true, m), tightest_bound(lo, il, false, m),
                                               Formula::neg(small)}));
            }
        out.push_back(Formula::conj(nonempty, Formula::disj(std::move(large))));
    }
    return Formula::disj(std::move(out));
}

/// Base condition for a branch fiber to have nonempty interior.
Formula top_branch(const std::vector<NormLit>& branch, int y, const ModelId& m) {
    if (has_eq(branch)) return Formula::bottom();
    return eliminate_one(y, branch, m);
}

Formula group_positive(const Conj& c, int y, const DimEngine& e, const ModelId& m) {
    SolvedConj sc = solve_conj(c, y, m);
    if (!sc.mentions) return conj_formula(c);
    std::vector<Formula> bs;
    for (const auto& b : sc.branches)
        bs.push_back(e.kind() == DimEngine::Kind::W ? w_branch(b, y, e.kappa(), m) : top_branch(b, y, m));
    return Formula::conj(conj_formula(sc.rest), Formula::disj(std::move(bs)));
}

Formula concat_positive(const Conj& c, int y, const ModelId& m) {
    if (std::none_of(c.begin(), c.end(), [&](const Literal& l) { return l.atom.mentions(y); }))
        return conj_formula(c);
    const ModelId cm = coordinate_model();
    std::vector<Formula> parts;
    visit_locations(
        y, c, m, [](int, const Formula&) {},
        [&](int seg, const Formula& placement, const Conj& cc) {
            SolvedConj sc = solve_conj(cc, y, cm);
            std::vector<Formula> bs;
            for (const auto& b : sc.branches) bs.push_back(top_branch(b, y, cm));
            Formula coord = Formula::conj(conj_formula(sc.rest), Formula::disj(std::move(bs)));
            parts.push_back(Formula::conj(placement, from_coord(coord, seg, m)));
        });
    std::vector<Formula> fs;
    for (const auto& l : c)
        if (!l.atom.mentions(y)) fs.push_back(literal_formula(l));
    fs.push_back(Formula::disj(std::move(parts)));
    return Formula::conj(std::move(fs));
}

Formula quantifier_free(const Formula& phi, int n, const ModelId& m) {
    for (int v : phi.free_vars())
        if (v > n) throw ArityError(var_name(v) + " exceeds arity " + std::to_string(n));
    return phi.quantifier_free() ? phi : eliminate(phi, m);
}

Formula with_interval(const Formula& f, int n, const DimEngine& e) {
    if (e.kind() != DimEngine::Kind::I) return f;
    return Formula::conj(f, rename(e.interval_formula(), {{1, n}}, e.model()));
}

DimValue sentence_dim(const Formula& phi, const ModelId& m) {
    return eval(phi, {}, m) ? DimValue::of(0) : DimValue::neg_inf();
}

}  // namespace

Formula project(const Formula& phi, int n, const ModelId& m) { return eliminate(Formula::exists(n, phi), m); }

Formula positive_fibers(const Formula& qf, int n, const DimEngine& e) {
    const ModelId& m = e.model();
    const Formula f = with_interval(quantifier_free(qf, n, m), n, e);
    std::vector<Formula> parts;
    for (const auto& c : dnf_of(f, m).conjs)
        parts.push_back(m.is_group() ? group_positive(c, n, e, m) : concat_positive(c, n, m));
    return to_dnf(Formula::disj(std::move(parts)), m);
}

Classification classify(const Formula& phi, int n, const DimEngine& e) {
    const ModelId& m = e.model();
    const Formula f = quantifier_free(phi, n, m);
    Classification c;
    c.proj = project(f, n, m);
    c.x1 = positive_fibers(f, n, e);
    c.x0 = to_dnf(Formula::conj(c.proj, Formula::neg(c.x1)), m);
    return c;
}

DimValue dim(const Formula& phi, int n, const DimEngine& e) {
    const ModelId& m = e.model();
    if (n < 0) throw PreconditionError("negative arity");
    const Formula f = quantifier_free(phi, n, m);
    if (n == 0) return sentence_dim(f, m);
    if (f.is_false()) return DimValue::neg_inf();
    const std::string key = std::to_string(n) + "|" + to_string(f, m);
    if (auto d = e.cached(key)) return *d;
    const Formula x1 = positive_fibers(f, n, e);
    DimValue result = x1.is_false() ? DimValue::neg_inf() : dim(x1, n - 1, e).plus(1);
    if (result != DimValue::of(n)) result = max(result, dim(project(f, n, m), n - 1, e));
    e.remember(key, result);
    return result;
}

DimValue dim_by_cells(const Formula& phi, int n, const DimEngine& e) {
    const ModelId& m = e.model();
    const Formula f = quantifier_free(phi, n, m);
    if (n == 0) return sentence_dim(f, m);
    if (f.is_false()) return DimValue::neg_inf();
    std::vector<Formula> guards;
    for (const auto& p : pieces(with_interval(f, n, e), n, m)) {
        int v = e.kind() == DimEngine::Kind::W ? fiber_dim_w(p.fiber, e.kappa(), p.certificate) : fiber_dim_top(p.fiber);
        if (v == 1) guards.push_back(p.guard);
    }
    const Formula x1 = to_dnf(Formula::disj(std::move(guards)), m);
    DimValue result = x1.is_false() ? DimValue::neg_inf() : dim_by_cells(x1, n - 1, e).plus(1);
    if (result != DimValue::of(n)) result = max(result, dim_by_cells(project(f, n, m), n - 1, e));
    return result;
}

}  // namespace dimfn
