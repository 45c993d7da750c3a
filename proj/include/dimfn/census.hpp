#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimfn/dims.hpp"

namespace dimfn {

/// One-variable sets C_1..C_m with pairwise finite intersections and a
/// finite complement of their union.
struct GeneratingSystem {
    ModelId model;
    std::vector<Formula> generators;
    bool finite_intersections = false;
    bool cofinite_union = false;

    /// Checks both conditions symbolically and records the flags.
    static GeneratingSystem make(const ModelId& m, std::vector<Formula> generators);
    /// The m segments of CONCAT(m).
    static GeneratingSystem segments(int m);

    /// Throws UserError naming the violated condition.
    void validate() const;
};

/// Verdicts of one engine on a probe family, in probe order.
using Signature = std::vector<DimValue>;

Signature signature(const DimEngine& e, const std::vector<Formula>& probes);
std::string signature_str(const Signature& s);

/// Number of pairwise-distinct signatures.
std::size_t distinct_count(const std::vector<Signature>& sigs);

/// First probe on which the two signatures differ.
std::optional<std::size_t> distinguishing_probe(const Signature& a, const Signature& b);

/// Dim[dim_top, I] with I the union of the chosen generators (1-based).
DimEngine engine_from_subset(const std::vector<int>& subset, const GeneratingSystem& gs);

struct EngineRow {
    std::string engine;
    std::vector<int> subset;  // empty outside census
    Signature signature;
};

struct SignatureReport {
    ModelId model;
    std::vector<Formula> probes;
    std::vector<EngineRow> engines;
    std::size_t distinct_count = 0;
};

/// Each generator, each separator point and the whole line.
std::vector<Formula> default_census_probes(const GeneratingSystem& gs);

/// All 2^m - 1 engines of the system, evaluated on the probes (defaults when
/// empty). Engines are evaluated concurrently; rows follow subset order
/// {1}, {2}, {1,2}, ... (binary counting).
SignatureReport census(const GeneratingSystem& gs, const std::vector<Formula>& probes = {});

/// The half-line engines Dim[I_a], I_a = (a, +inf), for each parameter, plus
/// dim_top. Default probes are (a_1 - 2, a_1 - 1), the gaps (a_i, a_{i+1})
/// and (a_k, a_k + 1). Throws UserError on unsorted or repeated parameters.
SignatureReport dlo_halfline_report(const std::vector<Rat>& params, const std::vector<Formula>& probes = {});

/// dim_top and dim_w^1..dim_w^m on WOM(m), probed by U_1(x1)..U_m(x1).
SignatureReport wom_engine_report(int m);

/// {model, m, probes, engines:[{subset|engine, signature}], distinct_count}.
/// Subset rows carry "subset", the others "engine".
std::string to_json(const SignatureReport& r);

}  // namespace dimfn
