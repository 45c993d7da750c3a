// dimfn: command-line front end for the dimfn library.
//
//   dimfn qe     --model M FORMULA
//   dimfn dim    --model M --engine E [--arity N] [--split] FORMULA
//   dimfn census --model M [--params a,b,...]
//   dimfn check  --model M --engine E [--suite axioms|qe|frontier] [--seed S] [--samples K] [--jobs N]
//   dimfn oracle --model M FORMULA
//
// Formulas are given inline or as @file. Exit codes: 0 ok, 1 user error,
// 2 check found a failure, 3 internal error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimfn/census.hpp"
#include "dimfn/errors.hpp"
#include "dimfn/harness.hpp"
#include "dimfn/parser.hpp"

using namespace dimfn;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string model = "dlo";
    std::string engine = "top";
    std::string format;
    std::string formula;
    std::string suite = "axioms";
    std::string params = "-1,0,1";
    std::uint64_t seed = 1;
    int samples = -1;
    int jobs = 1;
    int arity = 0;
    bool split = false;
    bool timing = false;
};

std::string read_formula(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw UserError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool as_json(const Options& o, bool default_json) {
    if (o.format.empty()) return default_json;
    if (o.format == "json") return true;
    if (o.format == "text") return false;
    throw UserError("unknown format '" + o.format + "' (expected text or json)");
}

int default_arity(const Formula& f) {
    auto vs = f.free_vars();
    return vs.empty() ? 1 : std::max(1, *vs.rbegin());
}

int run_qe(const Options& o) {
    const ModelId m = ModelId::parse(o.model);
    const Formula f = parse(read_formula(o.formula), m);
    const Formula r = eliminate(f, m);
    if (as_json(o, false))
        std::cout << json{{"model", m.name()}, {"input", to_string(f, m)}, {"result", to_string(r, m)}}.dump(2) << "\n";
    else
        std::cout << to_string(r, m) << "\n";
    return 0;
}

json dim_json(const DimValue& d) { return d.is_neg_inf() ? json("-inf") : json(d.value()); }

int run_dim(const Options& o) {
    const ModelId m = ModelId::parse(o.model);
    const DimEngine e = DimEngine::parse(o.engine, m);
    const Formula f = parse(read_formula(o.formula), m);
    const int n = o.arity > 0 ? o.arity : default_arity(f);
    const DimValue d = dim(f, n, e);
    std::optional<Classification> c;
    if (o.split && n >= 2) c = classify(f, n, e);
    if (as_json(o, false)) {
        json j{{"model", m.name()}, {"engine", e.name()}, {"arity", n}, {"formula", to_string(f, m)}, {"dim", dim_json(d)}};
        if (c) {
            j["projection"] = to_string(c->proj, m);
            j["x1"] = to_string(c->x1, m);
            j["x0"] = to_string(c->x0, m);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << d.str() << "\n";
    if (c) {
        std::cout << "projection: " << to_string(c->proj, m) << "\n";
        std::cout << "X(1): " << to_string(c->x1, m) << "\n";
        std::cout << "X(0): " << to_string(c->x0, m) << "\n";
    }
    return 0;
}

std::vector<Rat> parse_params(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rat::parse(item));
    return out;
}

int run_census(const Options& o) {
    const ModelId m = ModelId::parse(o.model);
    SignatureReport r;
    switch (m.kind) {
    case ModelId::Kind::Concat: r = census(GeneratingSystem::segments(m.m)); break;
    case ModelId::Kind::Dlo: r = dlo_halfline_report(parse_params(o.params)); break;
    case ModelId::Kind::Wom: r = wom_engine_report(m.m); break;
    }
    if (as_json(o, true)) {
        std::cout << to_json(r) << "\n";
        return 0;
    }
    std::cout << "model " << r.model.name() << "\n";
    for (std::size_t i = 0; i < r.probes.size(); ++i) std::cout << "probe " << i << ": " << to_string(r.probes[i], m) << "\n";
    for (const auto& row : r.engines) {
        std::string label = row.engine;
        if (!row.subset.empty()) {
            label = "{";
            for (std::size_t i = 0; i < row.subset.size(); ++i) label += (i ? "," : "") + std::to_string(row.subset[i]);
            label += "}";
        }
        std::cout << label << " " << signature_str(row.signature) << "\n";
    }
    std::cout << "distinct_count " << r.distinct_count << "\n";
    return 0;
}

int run_check(const Options& o) {
    const ModelId m = ModelId::parse(o.model);
    GenConfig cfg = GenConfig::defaults(m, o.seed);
    cfg.jobs = o.jobs;
    SuiteReport r;
    if (o.suite == "axioms") {
        cfg.samples = o.samples >= 0 ? o.samples : 200;
        r = check_axioms(DimEngine::parse(o.engine, m), cfg);
    } else if (o.suite == "qe") {
        cfg.samples = o.samples >= 0 ? o.samples : 500;
        r = cross_check_qe(cfg, m);
    } else if (o.suite == "frontier") {
        if (m.kind != ModelId::Kind::Dlo) throw UserError("the frontier suite runs on dlo only");
        cfg.samples = o.samples >= 0 ? o.samples : 100;
        r = check_frontier(cfg);
    } else {
        throw UserError("unknown suite '" + o.suite + "' (expected axioms, qe or frontier)");
    }
    if (as_json(o, true)) {
        std::cout << to_json(r, o.timing) << "\n";
    } else {
        std::cout << r.engine << " on " << r.model << "\n";
        for (const auto& s : r.suites) {
            std::cout << s.name << ": " << s.passed << " passed, " << s.failed << " failed, " << s.skipped << " skipped\n";
            for (const auto& c : s.counterexamples)
                std::cout << "  seed " << c.seed << " index " << c.index << ": " << c.formula << " expected " << c.expected
                          << ", got " << c.got << "\n";
        }
        if (o.timing) std::cout << "wall time " << static_cast<long>(r.wall_time_ms) << " ms\n";
    }
    return r.failures() > 0 ? 2 : 0;
}

int run_oracle(const Options& o) {
    const ModelId m = ModelId::parse(o.model);
    const Formula f = parse(read_formula(o.formula), m);
    if (!f.quantifier_free()) throw UserError("oracle takes a quantifier-free formula");
    auto vs = f.free_vars();
    if (vs.size() > 1) throw UserError("oracle takes a formula in one free variable");
    const int var = vs.empty() ? 1 : *vs.begin();
    auto w = sat_formula(f, var, m);
    if (as_json(o, false)) {
        json j{{"model", m.name()}, {"formula", to_string(f, m)}, {"sat", w.has_value()}};
        if (w) {
            j["witness"] = element_str(w->point);
            j["rule"] = rule_name(w->rule);
        }
        std::cout << j.dump(2) << "\n";
    } else if (w) {
        std::cout << "sat " << var_name(var) << " = " << element_str(w->point) << " (" << rule_name(w->rule) << ")\n";
    } else {
        std::cout << "unsat\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimension functions on definable sets: QE, dimensions, census and axiom checks"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--model", o.model, "dlo | wom:m | concat:m")->capture_default_str();
        sub->add_option("--format", o.format, "text | json");
    };
    auto formula = [&](CLI::App* sub) { sub->add_option("formula", o.formula, "formula text or @file")->required(); };
    auto engine = [&](CLI::App* sub) {
        sub->add_option("--engine", o.engine, "top | w:k | I:<formula in x1>")->capture_default_str();
    };

    auto* qe = app.add_subcommand("qe", "eliminate quantifiers");
    common(qe);
    formula(qe);

    auto* dm = app.add_subcommand("dim", "dimension of a definable set");
    common(dm);
    engine(dm);
    formula(dm);
    dm->add_option("--arity", o.arity, "ambient arity n (default: largest free variable)");
    dm->add_flag("--split", o.split, "also print the projection and X(1), X(0)");

    auto* cs = app.add_subcommand("census", "signatures of the constructed dimension functions");
    common(cs);
    cs->add_option("--params", o.params, "half-line parameters on dlo")->capture_default_str();

    auto* ck = app.add_subcommand("check", "seeded property suites");
    common(ck);
    engine(ck);
    ck->add_option("--suite", o.suite, "axioms | qe | frontier")->capture_default_str();
    ck->add_option("--seed", o.seed, "generator seed")->capture_default_str();
    ck->add_option("--samples", o.samples, "samples per suite (default 200 / 500 / 100)");
    ck->add_option("--jobs", o.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    ck->add_flag("--timing", o.timing, "report wall time (output is then not reproducible)");

    auto* oc = app.add_subcommand("oracle", "test-point satisfiability of a one-variable formula");
    common(oc);
    formula(oc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (qe->parsed()) return run_qe(o);
        if (dm->parsed()) return run_dim(o);
        if (cs->parsed()) return run_census(o);
        if (ck->parsed()) return run_check(o);
        if (oc->parsed()) return run_oracle(o);
    } catch (const UserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: size budget exceeded: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
