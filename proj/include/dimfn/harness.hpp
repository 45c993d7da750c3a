#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dimfn/dims.hpp"

namespace dimfn {

struct AtomWeights {
    int less = 4;
    int eq = 2;
    int in_u = 2;  // ignored outside WOM(m)
};

struct GenConfig {
    std::uint64_t seed = 1;
    int samples = 200;
    int max_arity = 3;
    int max_depth = 4;
    /// Chance (percent) that a node above depth 0 is an atom.
    int leaf_percent = 40;
    std::vector<Element> pool;
    AtomWeights weights;
    int jobs = 1;

    /// Default parameter pool for the model.
    static GenConfig defaults(const ModelId& m, std::uint64_t seed = 1);
    void validate(const ModelId& m) const;
};

/// Generator for sample `index`; equal (seed, index) give equal streams.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index);

/// Random quantifier-free formula over x1..xn.
Formula gen_formula(const GenConfig& cfg, int n, const ModelId& m, std::mt19937_64& rng);
/// Same, drawing from sample_rng(cfg.seed, 0).
Formula gen_formula(const GenConfig& cfg, int n, const ModelId& m);

/// Random model element: pool members and small rational perturbations.
Element gen_element(const GenConfig& cfg, const ModelId& m, std::mt19937_64& rng);

struct Counterexample {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
    std::string formula;
    std::string engine;
    std::string expected;
    std::string got;
};

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    std::vector<Counterexample> counterexamples;
};

struct SuiteReport {
    std::string engine;
    std::string model;
    std::vector<SuiteResult> suites;
    double wall_time_ms = 0;
    /// Budget breaches behind the skipped counts.
    int budget_breaches = 0;

    int failures() const;
    /// The weak suites (empty_point_line, swap, fiber_split, union_max on one
    /// variable) all pass while another suite fails. Weak dimension functions
    /// are full ones, so this points at an implementation bug.
    bool weak_full_gap() const;
};

/// Suites, one check per sample each:
///   empty_point_line  dim {} = -inf, dim {a} = 0, dim M = 1; dim X = -inf iff X empty
///   union_max         dim (X | Y) = max(dim X, dim Y)
///   swap              dim X = dim X^switch on M^2
///   permutation       dim X = dim X^sigma on M^3, sigma random
///   fiber_split       dim (X & Pi^-1 X(i)) = dim X(i) + i, and fiber verdicts at sampled base points
///   fiber_split_d2    the same for the last two coordinates of M^3
///   projection        dim of both coordinate projections is at most dim X
SuiteReport check_axioms(const DimEngine& e, const GenConfig& cfg);

/// Differential test of eliminate against sat_one_var on one-quantifier
/// formulas: suite eliminate_vs_oracle on a concrete instance, suite
/// eval_at_points at `points` sample points of the free variables.
SuiteReport cross_check_qe(const GenConfig& cfg, const ModelId& m, int points = 20);

/// dim_top(frontier X) < dim_top(X) for nonempty one-variable DLO sets.
SuiteReport check_frontier(const GenConfig& cfg);

/// {engine, model, suites:[{name, passed, failed, skipped, counterexamples}],
///  budget_breaches, weak_full_gap, wall_time_ms}. wall_time_ms is null unless
/// `timing` is set, so the output is reproducible.
std::string to_json(const SuiteReport& r, bool timing = false);

}  // namespace dimfn
