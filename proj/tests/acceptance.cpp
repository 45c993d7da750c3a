// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dimfn/census.hpp"
#include "dimfn/harness.hpp"
#include "dimfn/parser.hpp"

using namespace dimfn;

namespace {

struct Criterion {
    int id;
    std::string title;
    double limit_s;
    std::function<bool(std::ostream&)> run;
};

bool table(std::ostream& log) {
    bool ok = true;
    for (int m = 1; m <= 3; ++m) {
        const ModelId wm = ModelId::wom(m);
        for (int j = 1; j <= m; ++j) {
            Formula u = parse("U" + std::to_string(j) + "(x1)", wm);
            ok = ok && dim(u, 1, DimEngine::top(wm)) == DimValue::of(1);
            for (int k = 1; k <= m; ++k) {
                DimValue d = dim(u, 1, DimEngine::w(wm, k));
                if (d != DimValue::of(j <= k ? 0 : 1)) {
                    log << "  wom:" << m << " w:" << k << " U" << j << " = " << d.str() << "\n";
                    ok = false;
                }
            }
        }
    }
    return ok;
}

bool axioms(std::ostream& log) {
    const ModelId dlo = ModelId::dlo(), wom2 = ModelId::wom(2), cat2 = ModelId::concat(2);
    std::vector<DimEngine> engines = {DimEngine::top(dlo), DimEngine::top(wom2), DimEngine::top(cat2),
                                      DimEngine::w(wom2, 1), DimEngine::w(wom2, 2)};
    for (const char* a : {"-1", "0", "1"}) engines.push_back(DimEngine::parse(std::string("I:") + a + " < x1", dlo));
    const auto gs = GeneratingSystem::segments(2);
    for (const auto& s : std::vector<std::vector<int>>{{1}, {2}, {1, 2}}) engines.push_back(engine_from_subset(s, gs));
    bool ok = true;
    for (const auto& e : engines) {
        GenConfig cfg = GenConfig::defaults(e.model(), 1);
        cfg.samples = 200;
        SuiteReport r = check_axioms(e, cfg);
        int skipped = 0;
        for (const auto& s : r.suites) skipped += s.skipped;
        const bool fast = r.wall_time_ms <= 120000;
        log << "  " << std::left << std::setw(22) << (e.model().name() + " " + e.name()) << " failed " << r.failures()
            << ", skipped " << skipped << ", " << static_cast<long>(r.wall_time_ms) << " ms\n";
        for (const auto& s : r.suites)
            for (const auto& c : s.counterexamples)
                log << "    " << s.name << " seed " << c.seed << " index " << c.index << ": " << c.formula << "\n";
        ok = ok && r.failures() == 0 && fast;
    }
    return ok;
}

bool qe_differential(std::ostream& log) {
    bool ok = true;
    for (const auto& m : {ModelId::dlo(), ModelId::wom(2), ModelId::concat(2)}) {
        GenConfig cfg = GenConfig::defaults(m, 1);
        cfg.samples = 500;
        SuiteReport r = cross_check_qe(cfg, m, 20);
        log << "  " << m.name() << ": " << r.suites[0].passed << " instances, " << r.suites[1].passed
            << " with free variables, " << r.failures() << " disagreements, " << r.budget_breaches << " skipped\n";
        ok = ok && r.failures() == 0 && r.budget_breaches == 0;
    }
    return ok;
}

bool census_counts(std::ostream& log) {
    bool ok = true;
    for (int m = 1; m <= 3; ++m) {
        auto r = census(GeneratingSystem::segments(m));
        const std::size_t want = (std::size_t{1} << m) - 1;
        log << "  concat:" << m << ": " << r.distinct_count << " distinct of " << r.engines.size() << " engines\n";
        ok = ok && r.distinct_count == want && r.engines.size() == want;
    }
    return ok;
}

bool wom_distinct(std::ostream& log) {
    bool ok = true;
    for (int m = 1; m <= 3; ++m) {
        auto r = wom_engine_report(m);
        log << "  wom:" << m;
        for (const auto& row : r.engines) log << "  " << row.engine << " " << signature_str(row.signature);
        log << "\n";
        for (std::size_t i = 0; i < r.engines.size(); ++i)
            for (std::size_t j = i + 1; j < r.engines.size(); ++j)
                ok = ok && distinguishing_probe(r.engines[i].signature, r.engines[j].signature).has_value();
        ok = ok && r.engines.size() == static_cast<std::size_t>(m + 1);
    }
    return ok;
}

bool halflines(std::ostream& log) {
    auto r = dlo_halfline_report({Rat(-1), Rat(0), Rat(1)});
    for (const auto& row : r.engines) log << "  " << row.engine << " " << signature_str(row.signature) << "\n";
    bool ok = r.engines.size() == 4 && r.distinct_count == 4;
    for (std::size_t i = 0; i < r.engines.size(); ++i)
        for (std::size_t j = i + 1; j < r.engines.size(); ++j)
            ok = ok && distinguishing_probe(r.engines[i].signature, r.engines[j].signature).has_value();
    return ok;
}

bool frontier(std::ostream& log) {
    GenConfig cfg = GenConfig::defaults(ModelId::dlo(), 1);
    cfg.samples = 100;
    SuiteReport r = check_frontier(cfg);
    log << "  " << r.suites[0].passed << " sets passed, " << r.suites[0].failed << " failed\n";
    return r.suites[0].passed == 100 && r.failures() == 0;
}

bool separation(std::ostream& log) {
    const ModelId m = ModelId::wom(1);
    const Formula x = parse("U1(x2 - x1)", m);
    const DimValue top = dim(x, 2, DimEngine::top(m));
    const DimValue w1 = dim(x, 2, DimEngine::w(m, 1));
    const Classification c = classify(x, 2, DimEngine::w(m, 1));
    const bool x0_nonempty = eval(Formula::exists(1, c.x0), {}, m);
    const bool x1_empty = !eval(Formula::exists(1, c.x1), {}, m);
    log << "  TopDim " << top.str() << ", DimW(1) " << w1.str() << "\n";
    log << "  X(1) = " << to_string(c.x1, m) << (x1_empty ? " (empty)" : " (nonempty)") << "\n";
    log << "  X(0) = " << to_string(c.x0, m) << (x0_nonempty ? " (nonempty)" : " (empty)") << "\n";
    return top == DimValue::of(2) && w1 == DimValue::of(1) && x0_nonempty && x1_empty;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "class-dimension table on WOM(1..3)", 1, table},
        {2, "axiom suites, 11 engines x 200 sets", 11 * 120, axioms},
        {3, "QE differential, 500 instances per model", 60, qe_differential},
        {4, "census on CONCAT(1..3) gives 2^m - 1 signatures", 10, census_counts},
        {5, "WOM(m) engines pairwise distinguished by U_1..U_m", 1, wom_distinct},
        {6, "DLO half-line family {-1, 0, 1} gives 4 signatures", 1, halflines},
        {7, "DLO frontier has smaller dimension, 100 sets", 10, frontier},
        {8, "engine separation on y in C^1(x) over WOM(1)", 1, separation},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::ostringstream log;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(log);
        } catch (const std::exception& e) {
            log << "  exception: " << e.what() << "\n";
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s <= c.limit_s;
        if (!in_time) log << "  time limit " << c.limit_s << " s exceeded\n";
        ok = ok && in_time;
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << std::fixed << std::setprecision(3)
                  << s << " s)\n"
                  << log.str();
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}
