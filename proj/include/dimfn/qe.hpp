#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dimfn/dnf.hpp"
#include "dimfn/onevar.hpp"

namespace dimfn {

/// Literal solved for one variable: y = t, y < t, y > t, y in C^k(t),
/// y not in C^k(t), with t free of y.
using NormLit = NLit<Term>;

std::string norm_lit_str(const NormLit& l, int var, const ModelId& m);

/// Solves a group-model literal for `var`. Returns nullopt when `var` does not
/// occur; otherwise a disjunction of solved literals (negated order literals
/// split into strict and equality parts, so at most two alternatives).
std::optional<std::vector<NormLit>> solve_for(const Literal& l, int var, const ModelId& m);

/// A group-model conjunction split into the literals free of `var` and the
/// branches obtained by choosing one solved alternative per literal.
struct SolvedConj {
    Conj rest;
    std::vector<std::vector<NormLit>> branches;  // one empty branch when var is absent
    bool mentions = false;
};

SolvedConj solve_conj(const Conj& c, int var, const ModelId& m);

/// Quantifier-free equivalent of "exists var. AND lits" in a group model.
Formula eliminate_one(int var, const std::vector<NormLit>& lits, const ModelId& m);

/// Quantifier-free equivalent of "exists var. c" for a conjunction of literals.
Formula eliminate_conj(int var, const Conj& c, const ModelId& m);

/// Enumerates the locations of var in CONCAT(m) for the literals of c that
/// mention it. `at_separator(j, f)` receives those literals with var := c_j.
/// `in_segment(i, placement, cc)` receives, for segment i and one placement of
/// the other variables (as location literals), a conjunction over segment
/// coordinates; the union over all calls covers every solution.
void visit_locations(int var, const Conj& c, const ModelId& m,
                     const std::function<void(int, const Formula&)>& at_separator,
                     const std::function<void(int, const Formula&, const Conj&)>& in_segment);

/// Case split of "exists var. c" in CONCAT(m) on the location of var. For a
/// separator c_j the literals mentioning var, with var := c_j, go through
/// `at_separator`. For a segment i and each placement of the other variables
/// of those literals, `in_segment` receives the literals as a conjunction over
/// segment coordinates and returns a coordinate formula, which is mapped back
/// to segment i and guarded by the placement. Literals without var are kept.
Formula concat_by_location(int var, const Conj& c, const ModelId& m,
                           const std::function<Formula(const Formula&)>& at_separator,
                           const std::function<Formula(const Conj&)>& in_segment);

/// Quantifier-free formula equivalent to phi in the model.
Formula eliminate(const Formula& phi, const ModelId& m);

/// Truth of phi under an assignment covering its free variables.
bool eval(const Formula& phi, const Assignment& a, const ModelId& m);

struct SatWitness {
    enum class Rule { EqualityPoint, Midpoint, ClassOffset, BeyondAll };
    Element point;
    Rule rule;
};

std::string rule_name(SatWitness::Rule r);

/// Test-point oracle for a conjunction of solved literals with concrete
/// parameters: tries every parameter, every pairwise midpoint, each of those
/// shifted by +-u_k (k = 0..m), and +-B e_1 beyond all coordinates. For the
/// concatenation model the candidates are the separators plus, in each
/// segment, the parameter values, their midpoints and points beyond them.
std::optional<SatWitness> sat_one_var(const std::vector<NLit<Element>>& lits, const ModelId& m);

/// The same oracle applied to a quantifier-free formula whose only free
/// variable is `var`: candidates come from every atom, and each candidate is
/// checked by direct evaluation of the whole formula.
std::optional<SatWitness> sat_formula(const Formula& matrix, int var, const ModelId& m);

}  // namespace dimfn
