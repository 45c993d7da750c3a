#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dimfn/term.hpp"

namespace dimfn {

/// Atomic formula. Less and Eq compare lhs with rhs; InU(k) states lhs in U_k
/// and leaves rhs empty.
struct Atom {
    enum class Kind { Less, Eq, InU };
    Kind kind = Kind::Less;
    int k = 0;
    Term lhs;
    Term rhs;

    bool mentions(int v) const { return lhs.mentions(v) || rhs.mentions(v); }
    std::vector<int> vars() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

std::string atom_str(const Atom& a, const ModelId& m);
bool eval_atom(const Atom& a, const Assignment& asg, const ModelId& m);

/// Immutable first-order formula with shared structure.
class Formula {
public:
    enum class Op { True, False, Atom, Not, And, Or, Exists, Forall };

    Formula();  // true

    static Formula truth(bool b);
    static Formula top() { return truth(true); }
    static Formula bottom() { return truth(false); }
    /// Canonicalizes the atom for the model; ground atoms fold to true/false.
    static Formula atom(Atom::Kind kind, const Term& lhs, const Term& rhs, int k, const ModelId& m);
    static Formula less(const Term& a, const Term& b, const ModelId& m) {
        return atom(Atom::Kind::Less, a, b, 0, m);
    }
    static Formula eq(const Term& a, const Term& b, const ModelId& m) {
        return atom(Atom::Kind::Eq, a, b, 0, m);
    }
    static Formula in_u(int k, const Term& a, const ModelId& m) {
        return atom(Atom::Kind::InU, a, Term(), k, m);
    }
    /// Wraps an atom that is already canonical.
    static Formula raw_atom(Atom a);

    static Formula neg(const Formula& f);
    static Formula conj(std::vector<Formula> fs);
    static Formula disj(std::vector<Formula> fs);
    static Formula conj(const Formula& a, const Formula& b) { return conj(std::vector{a, b}); }
    static Formula disj(const Formula& a, const Formula& b) { return disj(std::vector{a, b}); }
    static Formula exists(int v, const Formula& body);
    static Formula forall(int v, const Formula& body);

    Op op() const { return node_->op; }
    bool is_true() const { return op() == Op::True; }
    bool is_false() const { return op() == Op::False; }
    const Atom& atom() const { return node_->atom; }
    const std::vector<Formula>& kids() const { return node_->kids; }
    int var() const { return node_->var; }

    bool quantifier_free() const;
    std::set<int> free_vars() const;
    std::size_t size() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node {
        Op op = Op::True;
        Atom atom;
        std::vector<Formula> kids;
        int var = 0;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Node n);

    std::shared_ptr<const Node> node_;
};

std::string to_string(const Formula& f, const ModelId& m);

/// Substitute a concrete element for a free variable.
Formula substitute(const Formula& f, int v, const Element& e, const ModelId& m);
/// Substitute a term for a free variable (group models).
Formula substitute(const Formula& f, int v, const Term& t, const ModelId& m);
/// Rename free variables by a map; bound variables are left alone and must
/// not collide with the targets.
Formula rename(const Formula& f, const std::map<int, int>& perm, const ModelId& m);
/// Negation normal form of a quantifier-free formula.
Formula nnf(const Formula& f);

/// Truth of a quantifier-free formula under a total assignment.
bool eval_qf(const Formula& f, const Assignment& a, const ModelId& m);

}  // namespace dimfn
