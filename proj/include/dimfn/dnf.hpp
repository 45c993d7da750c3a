#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "dimfn/formula.hpp"

namespace dimfn {

struct Literal {
    Atom atom;
    bool pos = true;

    friend bool operator==(const Literal&, const Literal&) = default;
    friend std::strong_ordering operator<=>(const Literal& a, const Literal& b) {
        if (auto c = a.atom <=> b.atom; c != 0) return c;
        return a.pos <=> b.pos;
    }
};

/// Sorted, duplicate-free conjunction of literals.
using Conj = std::vector<Literal>;

/// Disjunction of conjunctions. No conjunctions means false; a single empty
/// conjunction means true.
struct Dnf {
    std::vector<Conj> conjs;

    static Dnf top() { return Dnf{{Conj{}}}; }
    static Dnf bottom() { return Dnf{}; }
    bool is_false() const { return conjs.empty(); }
    bool is_true() const { return conjs.size() == 1 && conjs[0].empty(); }
    friend bool operator==(const Dnf&, const Dnf&) = default;
};

/// Maximum number of conjunctions any intermediate DNF may hold before
/// BudgetExceeded is thrown.
inline constexpr std::size_t kDnfBudget = 20000;

Dnf dnf_of(const Formula& qf, const ModelId& m);
Dnf dnf_and(const Dnf& a, const Dnf& b, const ModelId& m);
Dnf dnf_or(const Dnf& a, const Dnf& b, const ModelId& m);
Dnf dnf_not(const Dnf& a, const ModelId& m);
Dnf dnf_literal(const Literal& l);

/// Drops conjunctions that are detectably unsatisfiable, removes subsumed
/// conjunctions and applies self-subsuming resolution. Result is canonical
/// for a given input set.
void simplify(Dnf& d, const ModelId& m);

/// Cheap sound test: false means the conjunction is certainly unsatisfiable.
/// Literals are grouped by their variable part and each group is decided
/// exactly as a one-variable problem.
bool conj_consistent(const Conj& c, const ModelId& m);

Formula literal_formula(const Literal& l);
Formula conj_formula(const Conj& c);
Formula to_formula(const Dnf& d);

/// Disjunctive normal form of a quantifier-free formula, as a formula.
Formula to_dnf(const Formula& qf, const ModelId& m);

}  // namespace dimfn
