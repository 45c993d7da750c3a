#include "dimfn/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "dimfn/cells.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/segment.hpp"

namespace dimfn {

GenConfig GenConfig::defaults(const ModelId& m, std::uint64_t seed) {
    GenConfig cfg;
    cfg.seed = seed;
    switch (m.kind) {
    case ModelId::Kind::Dlo:
        for (long v : {-1L, 0L, 1L, 3L}) cfg.pool.push_back(LexVector({Rat(v)}));
        cfg.pool.push_back(LexVector({Rat(1, 2)}));
        break;
    case ModelId::Kind::Wom: {
        const std::size_t len = m.vec_len();
        cfg.pool.push_back(LexVector::zero(len));
        for (int k = 0; k <= m.m; ++k) cfg.pool.push_back(LexVector::unit(len, k));
        LexVector mixed = LexVector::unit(len, m.m) + Rat(2) * LexVector::unit(len, 0);
        cfg.pool.push_back(mixed);
        break;
    }
    case ModelId::Kind::Concat:
        for (int j = 1; j < m.m; ++j) cfg.pool.push_back(ConcatElem::separator(j));
        for (int i = 1; i <= m.m; ++i) {
            cfg.pool.push_back(ConcatElem::segment(i, Rat(0)));
            cfg.pool.push_back(ConcatElem::segment(i, Rat(1)));
        }
        break;
    }
    return cfg;
}

void GenConfig::validate(const ModelId& m) const {
    if (pool.empty()) throw UserError("parameter pool is empty");
    if (max_arity < 1 || max_arity > 3) throw UserError("max_arity must lie in 1..3");
    if (max_depth < 0 || max_depth > 4) throw UserError("max_depth must lie in 0..4");
    if (samples < 0) throw UserError("samples must be nonnegative");
    if (jobs < 1) throw UserError("jobs must be positive");
    if (leaf_percent < 0 || leaf_percent > 100) throw UserError("leaf_percent must lie in 0..100");
    for (const auto& e : pool) {
        bool ok = m.kind == ModelId::Kind::Concat ? std::holds_alternative<ConcatElem>(e)
                                                  : std::holds_alternative<LexVector>(e) &&
                                                        std::get<LexVector>(e).size() == m.vec_len();
        if (!ok) throw UserError("pool element " + element_str(e) + " does not belong to " + m.name());
    }
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng, int num, int den) { return uniform(rng, 1, den) <= num; }

Rat small_rat(std::mt19937_64& rng) { return Rat(uniform(rng, -6, 6), uniform(rng, 1, 4)); }

const Element& pick(const std::vector<Element>& v, std::mt19937_64& rng) {
    return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

class FormulaGen {
public:
    FormulaGen(const GenConfig& cfg, int n, const ModelId& m, std::mt19937_64& rng)
        : cfg_(cfg), n_(n), m_(m), rng_(rng) {}

    Formula formula(int depth) {
        if (depth == 0 || coin(rng_, cfg_.leaf_percent, 100)) return atom();
        switch (uniform(rng_, 0, 4)) {
        case 0: return Formula::neg(formula(depth - 1));
        case 1:
        case 2: return Formula::conj(formula(depth - 1), formula(depth - 1));
        default: return Formula::disj(formula(depth - 1), formula(depth - 1));
        }
    }

private:
    int var() { return uniform(rng_, 1, n_); }
    int other_var(int v) {
        if (n_ == 1) return v;
        int w = uniform(rng_, 1, n_ - 1);
        return w >= v ? w + 1 : w;
    }
    Term constant() { return Term::constant(pick(cfg_.pool, rng_)); }

    /// Variable or constant, different from variable v when possible.
    Term operand(int v) {
        if (n_ > 1 && coin(rng_, 1, 2)) return Term::var(other_var(v));
        return constant();
    }

    /// xi, xi - xj, q*xi or xi + c.
    Term group_term(int v) {
        switch (uniform(rng_, 0, 5)) {
        case 0:
            if (n_ > 1) return sub(Term::var(v), Term::var(other_var(v)), m_);
            return Term::var(v);
        case 1: return Term::var(v, coin(rng_, 1, 2) ? Rat(2) : Rat(1, 2));
        case 2: return add(Term::var(v), constant(), m_);
        default: return Term::var(v);
        }
    }

    Formula atom() {
        const AtomWeights& w = cfg_.weights;
        const int u = m_.kind == ModelId::Kind::Wom ? w.in_u : 0;
        const int total = w.less + w.eq + u;
        if (total <= 0) throw UserError("atom weights sum to zero");
        const int r = uniform(rng_, 1, total);
        const int v = var();
        if (r > w.less + w.eq) {
            const int k = uniform(rng_, 1, m_.m);
            Term t = coin(rng_, 1, 3) ? Term::var(v) : sub(Term::var(v), operand(v), m_);
            return Formula::in_u(k, t, m_);
        }
        Term lhs = m_.kind == ModelId::Kind::Wom ? group_term(v) : Term::var(v);
        Term rhs = operand(v);
        if (m_.kind == ModelId::Kind::Concat && n_ > 1 && coin(rng_, 1, 6) && m_.m > 1)
            rhs = add(Term::var(other_var(v)), Term::constant(ConcatElem::separator(1)), m_);
        if (coin(rng_, 1, 2)) std::swap(lhs, rhs);
        return r <= w.less ? Formula::less(lhs, rhs, m_) : Formula::eq(lhs, rhs, m_);
    }

    const GenConfig& cfg_;
    int n_;
    const ModelId& m_;
    std::mt19937_64& rng_;
};

}  // namespace

Formula gen_formula(const GenConfig& cfg, int n, const ModelId& m, std::mt19937_64& rng) {
    if (n < 1 || n > cfg.max_arity) throw PreconditionError("arity outside 1..max_arity");
    if (cfg.pool.empty()) throw PreconditionError("empty parameter pool");
    for (int attempt = 0;; ++attempt) {
        Formula f = FormulaGen(cfg, n, m, rng).formula(cfg.max_depth);
        // Constant folding can leave a bare truth value; retry a few times.
        if (!f.is_true() && !f.is_false()) return f;
        if (attempt == 8) return f;
    }
}

Formula gen_formula(const GenConfig& cfg, int n, const ModelId& m) {
    auto rng = sample_rng(cfg.seed, 0);
    return gen_formula(cfg, n, m, rng);
}

Element gen_element(const GenConfig& cfg, const ModelId& m, std::mt19937_64& rng) {
    if (!cfg.pool.empty() && coin(rng, 1, 3)) return pick(cfg.pool, rng);
    switch (m.kind) {
    case ModelId::Kind::Dlo: return LexVector({small_rat(rng)});
    case ModelId::Kind::Wom: {
        LexVector v = LexVector::zero(m.vec_len());
        const int nonzero = uniform(rng, 0, static_cast<int>(m.vec_len()));
        for (std::size_t i = m.vec_len() - static_cast<std::size_t>(nonzero); i < m.vec_len(); ++i)
            v.coords[i] = small_rat(rng);
        return v;
    }
    case ModelId::Kind::Concat:
        if (m.m > 1 && coin(rng, 1, 5)) return ConcatElem::separator(uniform(rng, 1, m.m - 1));
        return ConcatElem::segment(uniform(rng, 1, m.m), small_rat(rng));
    }
    return m.zero();
}

int SuiteReport::failures() const {
    int n = 0;
    for (const auto& s : suites) n += s.failed;
    return n;
}

bool SuiteReport::weak_full_gap() const {
    const std::vector<std::string> weak = {"empty_point_line", "swap", "fiber_split", "union_max_1"};
    bool weak_ok = true, other_failed = false;
    for (const auto& s : suites) {
        bool is_weak = std::find(weak.begin(), weak.end(), s.name) != weak.end();
        if (is_weak && s.failed) weak_ok = false;
        if (!is_weak && s.failed) other_failed = true;
    }
    return weak_ok && other_failed;
}

namespace {

enum Suite { EmptyPointLine, UnionMax1, UnionMax, Swap, Permutation, FiberSplit, FiberSplitD2, Projection, kSuiteCount };

const char* const kSuiteNames[kSuiteCount] = {"empty_point_line", "union_max_1", "union_max", "swap",
                                              "permutation", "fiber_split", "fiber_split_d2", "projection"};

struct Outcome {
    enum Kind { Pass, Fail, Skip } kind = Pass;
    Counterexample cx;
};

/// Per-sample outcomes; nullopt where the suite does not apply.
using SampleOutcomes = std::vector<std::optional<Outcome>>;

/// A failed comparison: expected vs got plus the formula shown.
struct Mismatch {
    std::string formula;
    std::string expected;
    std::string got;
};

using Check = std::function<std::optional<Mismatch>()>;

Outcome run_check(const Check& c, const std::string& engine, std::uint64_t seed, std::uint64_t index) {
    Outcome o;
    try {
        if (auto mm = c()) {
            o.kind = Outcome::Fail;
            o.cx = {seed, index, mm->formula, engine, mm->expected, mm->got};
        }
    } catch (const BudgetExceeded&) {
        o.kind = Outcome::Skip;
    }
    return o;
}

std::optional<Mismatch> expect_dim(const DimValue& expected, const DimValue& got, const std::string& formula,
                                   const std::string& what) {
    if (expected == got) return std::nullopt;
    return Mismatch{formula, what + " = " + expected.str(), got.str()};
}

Formula exists_all(const Formula& f, int n) {
    Formula g = f;
    for (int v = n; v >= 1; --v) g = Formula::exists(v, g);
    return g;
}

/// Fiber of X over the base point b (x1..x_{n-d}), renamed to x1..xd.
Formula fiber_at(const Formula& x, const std::vector<Element>& b, int n, const ModelId& m) {
    Formula f = x;
    for (std::size_t i = 0; i < b.size(); ++i) f = substitute(f, static_cast<int>(i) + 1, b[i], m);
    std::map<int, int> ren;
    for (int v = static_cast<int>(b.size()) + 1; v <= n; ++v) ren[v] = v - static_cast<int>(b.size());
    return rename(f, ren, m);
}

Assignment as_assignment(const std::vector<Element>& b) {
    Assignment a;
    for (std::size_t i = 0; i < b.size(); ++i) a[static_cast<int>(i) + 1] = b[i];
    return a;
}

std::string point_str(const std::vector<Element>& b) {
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + element_str(b[i]);
    return s + ")";
}

std::vector<std::optional<Outcome>> spot_values(const DimEngine& e, const GenConfig& cfg) {
    const ModelId& m = e.model();
    std::vector<Check> checks;
    checks.push_back([&]() { return expect_dim(DimValue::neg_inf(), dim(Formula::bottom(), 1, e), "false", "dim"); });
    checks.push_back([&]() { return expect_dim(DimValue::of(1), dim(Formula::top(), 1, e), "true", "dim"); });
    for (const auto& a : cfg.pool)
        checks.push_back([&]() {
            Formula f = Formula::eq(Term::var(1), Term::constant(a), m);
            return expect_dim(DimValue::of(0), dim(f, 1, e), to_string(f, m), "dim");
        });
    std::vector<std::optional<Outcome>> out;
    for (const auto& c : checks) out.push_back(run_check(c, e.name(), cfg.seed, 0));
    return out;
}

SampleOutcomes run_sample(const DimEngine& e, const GenConfig& cfg, std::uint64_t idx) {
    const ModelId& m = e.model();
    auto rng = sample_rng(cfg.seed, idx);
    const int a = uniform(rng, 1, cfg.max_arity);
    const Formula xa = gen_formula(cfg, a, m, rng);
    const Formula ya = gen_formula(cfg, a, m, rng);
    const Formula x1 = gen_formula(cfg, 1, m, rng);
    const Formula y1 = gen_formula(cfg, 1, m, rng);
    const std::optional<Formula> x2 =
        cfg.max_arity >= 2 ? std::optional(gen_formula(cfg, 2, m, rng)) : std::nullopt;
    const std::optional<Formula> x3 =
        cfg.max_arity >= 3 ? std::optional(gen_formula(cfg, 3, m, rng)) : std::nullopt;
    std::array<int, 3> sigma = {1, 2, 3};
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<std::vector<Element>> bases;
    for (int i = 0; i < 2; ++i) {
        std::vector<Element> b;
        for (int j = 0; j < 2; ++j) b.push_back(gen_element(cfg, m, rng));
        bases.push_back(b);
    }
    auto str = [&](const Formula& f) { return to_string(f, m); };

    SampleOutcomes out(kSuiteCount);
    auto run = [&](Suite s, const Check& c) { out[s] = run_check(c, e.name(), cfg.seed, idx); };

    run(EmptyPointLine, [&]() -> std::optional<Mismatch> {
        const bool empty = !eval(exists_all(xa, a), {}, m);
        const DimValue d = dim(xa, a, e);
        if (empty == d.is_neg_inf()) return std::nullopt;
        return Mismatch{str(xa), empty ? "-inf (empty set)" : "a dimension >= 0 (nonempty set)", d.str()};
    });
    run(UnionMax1, [&]() {
        return expect_dim(max(dim(x1, 1, e), dim(y1, 1, e)), dim(Formula::disj(x1, y1), 1, e),
                          str(x1) + "  ||  " + str(y1), "max");
    });
    run(UnionMax, [&]() {
        return expect_dim(max(dim(xa, a, e), dim(ya, a, e)), dim(Formula::disj(xa, ya), a, e),
                          str(xa) + "  ||  " + str(ya), "max");
    });
    if (x2)
        run(Swap, [&]() {
            Formula sw = rename(*x2, {{1, 2}, {2, 1}}, m);
            return expect_dim(dim(*x2, 2, e), dim(sw, 2, e), str(*x2), "dim X");
        });
    if (x3)
        run(Permutation, [&]() {
            // X^sigma: y in X^sigma iff y_i = x_sigma(i) for some x in X.
            std::map<int, int> ren;
            for (int i = 0; i < 3; ++i) ren[sigma[static_cast<std::size_t>(i)]] = i + 1;
            Formula xs = rename(*x3, ren, m);
            return expect_dim(dim(*x3, 3, e), dim(xs, 3, e),
                              str(*x3) + "  sigma = (" + std::to_string(sigma[0]) + std::to_string(sigma[1]) +
                                  std::to_string(sigma[2]) + ")",
                              "dim X");
        });

    const int fn = a >= 2 ? a : 2;
    const std::optional<Formula> xf = a >= 2 ? std::optional(xa) : x2;
    if (xf) {
        run(FiberSplit, [&]() -> std::optional<Mismatch> {
            const Classification c = classify(*xf, fn, e);
            if (auto mm = expect_dim(dim(c.x1, fn - 1, e).plus(1), dim(Formula::conj(*xf, c.x1), fn, e), str(*xf),
                                     "dim X(1) + 1"))
                return mm;
            if (auto mm = expect_dim(dim(c.x0, fn - 1, e), dim(Formula::conj(*xf, c.x0), fn, e), str(*xf), "dim X(0)"))
                return mm;
            for (const auto& full : bases) {
                std::vector<Element> b(full.begin(), full.begin() + (fn - 1));
                const Assignment asg = as_assignment(b);
                const DimValue want = eval_qf(c.x1, asg, m)   ? DimValue::of(1)
                                      : eval_qf(c.x0, asg, m) ? DimValue::of(0)
                                                              : DimValue::neg_inf();
                const DimValue got = dim(fiber_at(*xf, b, fn, m), 1, e);
                if (want != got)
                    return Mismatch{str(*xf) + "  at " + point_str(b), "fiber dim " + want.str(), got.str()};
            }
            return std::nullopt;
        });
        run(Projection, [&]() -> std::optional<Mismatch> {
            const DimValue dx = dim(*xf, fn, e);
            const DimValue last = dim(project(*xf, fn, m), fn - 1, e);
            std::map<int, int> shift;
            for (int v = 2; v <= fn; ++v) shift[v] = v - 1;
            const DimValue first = dim(rename(eliminate(Formula::exists(1, *xf), m), shift, m), fn - 1, e);
            if (dx < last) return Mismatch{str(*xf), "dim Pi X <= " + dx.str(), last.str()};
            if (dx < first) return Mismatch{str(*xf), "dim (first projection) <= " + dx.str(), first.str()};
            return std::nullopt;
        });
    }
    if (x3)
        run(FiberSplitD2, [&]() -> std::optional<Mismatch> {
            const Classification c = classify(*x3, 3, e);
            const Formula A = project(c.x1, 2, m);
            const Formula A1 = positive_fibers(c.x1, 2, e);
            const Formula B = project(c.x0, 2, m);
            const Formula B1 = positive_fibers(c.x0, 2, e);
            const std::array<Formula, 3> level = {
                to_dnf(Formula::conj({B, Formula::neg(A), Formula::neg(B1)}), m),
                to_dnf(Formula::conj(Formula::disj(A, B1), Formula::neg(A1)), m),
                A1,
            };
            for (int k = 0; k <= 2; ++k) {
                const Formula& xk = level[static_cast<std::size_t>(k)];
                if (auto mm = expect_dim(dim(xk, 1, e).plus(k), dim(Formula::conj(*x3, xk), 3, e), str(*x3),
                                         "dim X(2," + std::to_string(k) + ") + " + std::to_string(k)))
                    return mm;
            }
            for (const auto& full : bases) {
                std::vector<Element> b = {full[0]};
                const Assignment asg = as_assignment(b);
                DimValue want;
                for (int k = 0; k <= 2; ++k)
                    if (eval_qf(level[static_cast<std::size_t>(k)], asg, m)) want = DimValue::of(k);
                const DimValue got = dim(fiber_at(*x3, b, 3, m), 2, e);
                if (want != got)
                    return Mismatch{str(*x3) + "  at " + point_str(b), "fiber dim " + want.str(), got.str()};
            }
            return std::nullopt;
        });
    return out;
}

/// Runs f(i) for i in [0, count) on `jobs` threads; results in index order.
template <class R, class F>
std::vector<R> parallel_map(int count, int jobs, const F& f) {
    std::vector<R> out(static_cast<std::size_t>(std::max(count, 0)));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < count; i = next++) out[static_cast<std::size_t>(i)] = f(i);
    };
    std::vector<std::future<void>> pool;
    for (int j = 1; j < jobs; ++j) pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& p : pool) p.get();
    return out;
}

void tally(SuiteResult& s, const Outcome& o, int& breaches) {
    switch (o.kind) {
    case Outcome::Pass: ++s.passed; break;
    case Outcome::Fail:
        ++s.failed;
        s.counterexamples.push_back(o.cx);
        break;
    case Outcome::Skip:
        ++s.skipped;
        ++breaches;
        break;
    }
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

SuiteReport check_axioms(const DimEngine& e, const GenConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate(e.model());
    SuiteReport r;
    r.engine = e.name();
    r.model = e.model().name();
    for (const char* name : kSuiteNames) r.suites.push_back({name, 0, 0, 0, {}});
    for (const auto& o : spot_values(e, cfg)) tally(r.suites[EmptyPointLine], *o, r.budget_breaches);
    auto samples = parallel_map<SampleOutcomes>(cfg.samples, cfg.jobs, [&](int i) {
        return run_sample(e, cfg, static_cast<std::uint64_t>(i));
    });
    for (const auto& s : samples)
        for (int k = 0; k < kSuiteCount; ++k)
            if (s[static_cast<std::size_t>(k)]) tally(r.suites[static_cast<std::size_t>(k)], *s[static_cast<std::size_t>(k)], r.budget_breaches);
    r.wall_time_ms = elapsed_ms(t0);
    return r;
}

namespace {

/// Truth of Q y. matrix by the test-point oracle; checks the witness too.
std::optional<Mismatch> oracle_verdict(const Formula& matrix, int y, bool universal, const ModelId& m, bool& verdict) {
    const Formula target = universal ? Formula::neg(matrix) : matrix;
    auto w = sat_formula(target, y, m);
    if (w && !eval_qf(target, {{y, w->point}}, m))
        return Mismatch{to_string(target, m), "oracle witness satisfies the matrix",
                        element_str(w->point) + " (" + rule_name(w->rule) + ") does not"};
    verdict = universal ? !w : w.has_value();
    return std::nullopt;
}

}  // namespace

SuiteReport cross_check_qe(const GenConfig& cfg, const ModelId& m, int points) {
    const auto t0 = std::chrono::steady_clock::now();
    cfg.validate(m);
    SuiteReport r;
    r.engine = "qe";
    r.model = m.name();
    r.suites = {{"eliminate_vs_oracle", 0, 0, 0, {}}, {"eval_at_points", 0, 0, 0, {}}};
    const int y = kFirstBoundVar;
    auto results = parallel_map<std::array<std::optional<Outcome>, 2>>(cfg.samples, cfg.jobs, [&](int i) {
        const auto idx = static_cast<std::uint64_t>(i);
        auto rng = sample_rng(cfg.seed, idx);
        const int k = uniform(rng, 0, std::min(2, cfg.max_arity - 1));
        const Formula matrix = rename(gen_formula(cfg, k + 1, m, rng), {{k + 1, y}}, m);
        const bool universal = coin(rng, 1, 2);
        const Formula q = universal ? Formula::forall(y, matrix) : Formula::exists(y, matrix);
        std::vector<std::vector<Element>> pts;
        for (int p = 0; p < (k ? points + 1 : 1); ++p) {
            std::vector<Element> b;
            for (int v = 0; v < k; ++v) b.push_back(gen_element(cfg, m, rng));
            pts.push_back(b);
        }
        const std::string text = to_string(q, m);

        // Oracle and elimination verdicts at a point.
        auto compare_at = [&](const Formula& reduced, const std::vector<Element>& b) -> std::optional<Mismatch> {
            Formula inst = matrix;
            for (int v = 0; v < k; ++v) inst = substitute(inst, v + 1, b[static_cast<std::size_t>(v)], m);
            bool oracle = false;
            if (auto mm = oracle_verdict(inst, y, universal, m, oracle)) return mm;
            const bool elim = eval_qf(reduced, as_assignment(b), m);
            if (elim == oracle) return std::nullopt;
            return Mismatch{text + "  at " + point_str(b), std::string("oracle ") + (oracle ? "true" : "false"),
                            std::string("eliminate ") + (elim ? "true" : "false")};
        };

        std::array<std::optional<Outcome>, 2> out;
        out[0] = run_check(
            [&]() -> std::optional<Mismatch> {
                Formula sentence = q;
                for (int v = 0; v < k; ++v) sentence = substitute(sentence, v + 1, pts[0][static_cast<std::size_t>(v)], m);
                const Formula reduced = eliminate(sentence, m);
                if (!reduced.is_true() && !reduced.is_false())
                    return Mismatch{text, "a truth value", to_string(reduced, m)};
                return compare_at(reduced, pts[0]);
            },
            "qe", cfg.seed, idx);
        if (k > 0)
            out[1] = run_check(
                [&]() -> std::optional<Mismatch> {
                    const Formula reduced = eliminate(q, m);
                    if (!reduced.quantifier_free()) return Mismatch{text, "quantifier-free result", to_string(reduced, m)};
                    for (std::size_t p = 1; p < pts.size(); ++p)
                        if (auto mm = compare_at(reduced, pts[p])) return mm;
                    return std::nullopt;
                },
                "qe", cfg.seed, idx);
        return out;
    });
    for (const auto& res : results)
        for (std::size_t s = 0; s < 2; ++s)
            if (res[s]) tally(r.suites[s], *res[s], r.budget_breaches);
    r.wall_time_ms = elapsed_ms(t0);
    return r;
}

SuiteReport check_frontier(const GenConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ModelId m = ModelId::dlo();
    cfg.validate(m);
    const DimEngine e = DimEngine::top(m);
    SuiteReport r;
    r.engine = e.name();
    r.model = m.name();
    r.suites = {{"frontier", 0, 0, 0, {}}};
    int nonempty = 0;
    // Empty sets are drawn again; the cap keeps degenerate configs finite.
    for (std::uint64_t idx = 0; nonempty < cfg.samples && idx < 20 * static_cast<std::uint64_t>(cfg.samples) + 20; ++idx) {
        auto rng = sample_rng(cfg.seed, idx);
        const Formula x = gen_formula(cfg, 1, m, rng);
        const DimValue dx = dim(x, 1, e);
        if (dx.is_neg_inf()) continue;
        ++nonempty;
        tally(r.suites[0],
              run_check(
                  [&]() -> std::optional<Mismatch> {
                      const Formula fr = frontier_dlo(x);
                      const DimValue df = dim(fr, 1, e);
                      if (df < dx) return std::nullopt;
                      return Mismatch{to_string(x, m), "dim frontier < " + dx.str(),
                                      df.str() + " (frontier " + to_string(fr, m) + ")"};
                  },
                  e.name(), cfg.seed, idx),
              r.budget_breaches);
    }
    r.wall_time_ms = elapsed_ms(t0);
    return r;
}

std::string to_json(const SuiteReport& r, bool timing) {
    using json = nlohmann::ordered_json;
    json j;
    j["engine"] = r.engine;
    j["model"] = r.model;
    j["suites"] = json::array();
    for (const auto& s : r.suites) {
        json js;
        js["name"] = s.name;
        js["passed"] = s.passed;
        js["failed"] = s.failed;
        js["skipped"] = s.skipped;
        js["counterexamples"] = json::array();
        for (const auto& c : s.counterexamples)
            js["counterexamples"].push_back({{"seed", c.seed},
                                             {"index", c.index},
                                             {"formula", c.formula},
                                             {"engine", c.engine},
                                             {"expected", c.expected},
                                             {"got", c.got}});
        j["suites"].push_back(std::move(js));
    }
    j["budget_breaches"] = r.budget_breaches;
    j["weak_full_gap"] = r.weak_full_gap();
    j["wall_time_ms"] = timing ? json(static_cast<std::int64_t>(r.wall_time_ms)) : json(nullptr);
    return j.dump(2);
}

}  // namespace dimfn
