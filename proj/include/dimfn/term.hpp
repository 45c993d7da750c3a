#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dimfn/model.hpp"

namespace dimfn {

/// Free variables are 1..999 (printed x1, x2, ...); bound variables produced by
/// the parser are 1000+ (printed y1, y2, ...).
inline constexpr int kFirstBoundVar = 1000;
std::string var_name(int v);

/// Total assignment of model elements to variable indices.
using Assignment = std::map<int, Element>;

/// Affine term sum(q_i * x_i) + c in normalized form: like terms combined,
/// zero coefficients dropped. In group models a zero constant is stored as
/// absent; in the concatenation model absence of a constant is meaningful.
class Term {
public:
    Term() = default;
    static Term var(int v, const Rat& coeff = Rat(1));
    static Term constant(Element c);

    const std::map<int, Rat>& coeffs() const { return coeffs_; }
    const std::optional<Element>& constant_part() const { return constant_; }

    bool is_ground() const { return coeffs_.empty(); }
    bool mentions(int v) const { return coeffs_.count(v) != 0; }
    Rat coeff(int v) const;
    /// A lone variable with coefficient 1 and no constant.
    std::optional<int> as_lone_var() const;
    std::vector<int> vars() const;

    friend bool operator==(const Term&, const Term&);
    friend std::strong_ordering operator<=>(const Term&, const Term&);

private:
    friend Term add(const Term&, const Term&, const ModelId&);
    friend Term scale(const Rat&, const Term&, const ModelId&);
    friend Term substitute(const Term&, int, const Element&, const ModelId&);
    friend Term substitute(const Term&, int, const Term&, const ModelId&);
    friend Term rename(const Term&, const std::map<int, int>&);
    friend Term drop_constant(const Term&);

    std::map<int, Rat> coeffs_;
    std::optional<Element> constant_;
};

Term add(const Term& a, const Term& b, const ModelId& m);
Term scale(const Rat& q, const Term& a, const ModelId& m);
Term sub(const Term& a, const Term& b, const ModelId& m);
/// Replace variable v by a concrete element.
Term substitute(const Term& t, int v, const Element& e, const ModelId& m);
/// Replace variable v by a term (group models only).
Term substitute(const Term& t, int v, const Term& s, const ModelId& m);
Term rename(const Term& t, const std::map<int, int>& perm);
Term drop_constant(const Term& t);

/// Constant of a group-model term as a vector (zero when absent).
LexVector group_constant(const Term& t, const ModelId& m);

/// Value of the term under a total assignment of its variables.
Element eval_term(const Term& t, const Assignment& a, const ModelId& m);

std::string term_str(const Term& t, const ModelId& m);

}  // namespace dimfn
