#include "dimfn/census.hpp"

#include <algorithm>
#include <future>
#include <set>

#include <json.hpp>

#include "dimfn/errors.hpp"
#include "dimfn/segment.hpp"

namespace dimfn {

namespace {

bool finite(const Formula& f, const ModelId& m) { return dim(f, 1, DimEngine::top(m)) <= DimValue::of(0); }

Formula open_interval(const Rat& lo, const Rat& hi) {
    const ModelId m = ModelId::dlo();
    Term x = Term::var(1);
    return Formula::conj(Formula::less(Term::constant(LexVector({lo})), x, m),
                         Formula::less(x, Term::constant(LexVector({hi})), m));
}

nlohmann::ordered_json dim_json(const DimValue& d) {
    if (d.is_neg_inf()) return "-inf";
    return d.value();
}

SignatureReport evaluate(const ModelId& m, std::vector<Formula> probes, std::vector<EngineRow> rows,
                         const std::vector<DimEngine>& engines) {
    std::vector<std::future<Signature>> jobs;
    for (const auto& e : engines) jobs.push_back(std::async(std::launch::async, [&e, &probes] { return signature(e, probes); }));
    std::vector<Signature> sigs;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        rows[i].signature = jobs[i].get();
        sigs.push_back(rows[i].signature);
    }
    SignatureReport r;
    r.model = m;
    r.probes = std::move(probes);
    r.engines = std::move(rows);
    r.distinct_count = distinct_count(sigs);
    return r;
}

}  // namespace

GeneratingSystem GeneratingSystem::make(const ModelId& m, std::vector<Formula> generators) {
    if (m.kind == ModelId::Kind::Wom) throw SignatureError("generating systems live on dlo or concat models");
    if (generators.empty()) throw UserError("a generating system needs at least one generator");
    GeneratingSystem gs;
    gs.model = m;
    for (auto& g : generators) {
        for (int v : g.free_vars())
            if (v != 1) throw UserError("generators must be formulas in x1 only");
        gs.generators.push_back(g.quantifier_free() ? g : eliminate(g, m));
    }
    gs.finite_intersections = true;
    for (std::size_t i = 0; i < gs.generators.size(); ++i)
        for (std::size_t j = i + 1; j < gs.generators.size(); ++j)
            if (!finite(Formula::conj(gs.generators[i], gs.generators[j]), m)) gs.finite_intersections = false;
    gs.cofinite_union = finite(Formula::neg(Formula::disj(gs.generators)), m);
    return gs;
}

GeneratingSystem GeneratingSystem::segments(int m) {
    const ModelId cm = ModelId::concat(m);
    std::vector<Formula> gens;
    for (int i = 1; i <= m; ++i) gens.push_back(location_formula(1, Location{false, i}, cm));
    return make(cm, std::move(gens));
}

void GeneratingSystem::validate() const {
    if (!finite_intersections) throw UserError("generating system: some C_i & C_j (i != j) is infinite");
    if (!cofinite_union) throw UserError("generating system: the complement of the union is infinite");
}

Signature signature(const DimEngine& e, const std::vector<Formula>& probes) {
    Signature s;
    for (const auto& p : probes) s.push_back(dim(p, 1, e));
    return s;
}

std::string signature_str(const Signature& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + s[i].str();
    return out + "]";
}

std::size_t distinct_count(const std::vector<Signature>& sigs) {
    std::set<std::string> seen;
    for (const auto& s : sigs) seen.insert(signature_str(s));
    return seen.size();
}

std::optional<std::size_t> distinguishing_probe(const Signature& a, const Signature& b) {
    if (a.size() != b.size()) throw PreconditionError("signatures over different probe families");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return i;
    return std::nullopt;
}

DimEngine engine_from_subset(const std::vector<int>& subset, const GeneratingSystem& gs) {
    gs.validate();
    if (subset.empty()) throw UserError("engine_from_subset needs a nonempty subset");
    std::vector<Formula> parts;
    for (int i : subset) {
        if (i < 1 || i > static_cast<int>(gs.generators.size()))
            throw UserError("generator index " + std::to_string(i) + " out of range");
        parts.push_back(gs.generators[i - 1]);
    }
    return DimEngine::interval(gs.model, to_dnf(Formula::disj(std::move(parts)), gs.model));
}

std::vector<Formula> default_census_probes(const GeneratingSystem& gs) {
    std::vector<Formula> probes = gs.generators;
    if (gs.model.kind == ModelId::Kind::Concat)
        for (int j = 1; j < gs.model.m; ++j) probes.push_back(location_formula(1, Location{true, j}, gs.model));
    probes.push_back(Formula::top());
    return probes;
}

SignatureReport census(const GeneratingSystem& gs, const std::vector<Formula>& probes) {
    gs.validate();
    const int m = static_cast<int>(gs.generators.size());
    if (m > 6) throw UserError("census is limited to 6 generators");
    std::vector<EngineRow> rows;
    std::vector<DimEngine> engines;
    for (int mask = 1; mask < (1 << m); ++mask) {
        EngineRow row;
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) row.subset.push_back(i + 1);
        engines.push_back(engine_from_subset(row.subset, gs));
        row.engine = engines.back().name();
        rows.push_back(std::move(row));
    }
    return evaluate(gs.model, probes.empty() ? default_census_probes(gs) : probes, std::move(rows), engines);
}

SignatureReport dlo_halfline_report(const std::vector<Rat>& params, const std::vector<Formula>& probes) {
    if (params.empty()) throw UserError("dlo_halfline_report needs at least one parameter");
    for (std::size_t i = 1; i < params.size(); ++i) {
        if (params[i] == params[i - 1]) throw UserError("duplicate parameter " + params[i].str());
        if (params[i] < params[i - 1]) throw UserError("parameters must be sorted");
    }
    const ModelId m = ModelId::dlo();
    std::vector<Formula> ps = probes;
    if (ps.empty()) {
        ps.push_back(open_interval(params.front() - Rat(2), params.front() - Rat(1)));
        for (std::size_t i = 1; i < params.size(); ++i) ps.push_back(open_interval(params[i - 1], params[i]));
        ps.push_back(open_interval(params.back(), params.back() + Rat(1)));
    }
    std::vector<EngineRow> rows;
    std::vector<DimEngine> engines;
    for (const auto& a : params)
        engines.push_back(DimEngine::interval(m, Formula::less(Term::constant(LexVector({a})), Term::var(1), m)));
    engines.push_back(DimEngine::top(m));
    for (const auto& e : engines) rows.push_back({e.name(), {}, {}});
    return evaluate(m, std::move(ps), std::move(rows), engines);
}

SignatureReport wom_engine_report(int m) {
    const ModelId wm = ModelId::wom(m);
    std::vector<Formula> probes;
    for (int j = 1; j <= m; ++j) probes.push_back(Formula::in_u(j, Term::var(1), wm));
    std::vector<DimEngine> engines = {DimEngine::top(wm)};
    for (int k = 1; k <= m; ++k) engines.push_back(DimEngine::w(wm, k));
    std::vector<EngineRow> rows;
    for (const auto& e : engines) rows.push_back({e.name(), {}, {}});
    return evaluate(wm, std::move(probes), std::move(rows), engines);
}

std::string to_json(const SignatureReport& r) {
    nlohmann::ordered_json j;
    j["model"] = r.model.name();
    j["m"] = r.model.m;
    j["probes"] = nlohmann::ordered_json::array();
    for (const auto& p : r.probes) j["probes"].push_back(to_string(p, r.model));
    j["engines"] = nlohmann::ordered_json::array();
    for (const auto& row : r.engines) {
        nlohmann::ordered_json e;
        if (!row.subset.empty())
            e["subset"] = row.subset;
        else
            e["engine"] = row.engine;
        e["signature"] = nlohmann::ordered_json::array();
        for (const auto& d : row.signature) e["signature"].push_back(dim_json(d));
        j["engines"].push_back(std::move(e));
    }
    j["distinct_count"] = r.distinct_count;
    return j.dump(2);
}

}  // namespace dimfn
