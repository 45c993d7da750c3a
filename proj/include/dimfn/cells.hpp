#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dimfn/qe.hpp"

namespace dimfn {

/// One bound or class of a fiber: the term f and the class level k.
struct FiberPart {
    int k = 0;
    Term f;
};

/// Fiber of a cell in its last variable y, as a function of the base point:
/// either the single point y = point, or the intersection of
///   cls:   y in C^k(f)
///   upper: y in D^-_k(f), i.e. y below the whole class C^k(f)
///   lower: y in D^+_k(f), i.e. y above the whole class C^k(f)
/// over the parts that are present. In CONCAT(m) `segment` fixes the segment
/// of y and the parts are plain bounds (k = 0). No parts means the full line
/// (or the full segment).
struct FiberShape {
    std::optional<Term> point;
    std::optional<FiberPart> cls;
    std::optional<FiberPart> upper;
    std::optional<FiberPart> lower;
    std::optional<int> segment;

    bool is_point() const { return point.has_value(); }
    /// Part by index: 1 class, 2 upper, 3 lower.
    const FiberPart* part(int idx) const;
    /// Solved literals whose conjunction is the fiber (segment bounds excluded).
    std::vector<NormLit> literals() const;
};

Formula fiber_formula(const FiberShape& s, int y, const ModelId& m);
std::string fiber_str(const FiberShape& s, int y, const ModelId& m);

/// Condition that bound i of `ps` is the tightest one: the lowest cut for
/// upper bounds (y below C^k(f)), the highest for lower bounds. Ties go to
/// the earlier index, so the conditions for different i are disjoint.
Formula tightest_bound(const std::vector<FiberPart>& ps, std::size_t i, bool upper, const ModelId& m);

/// Uniform relation between the terms of parts i < j: order is the sign of
/// f_i - f_j and level is sep_level(f_i, f_j).
struct Relation {
    int i = 0;
    int j = 0;
    int order = 0;
    int level = 0;
    friend bool operator==(const Relation&, const Relation&) = default;
};
using Certificate = std::vector<Relation>;

std::string relation_str(const Relation& r);

/// Relation lookup; throws InternalError when the pair is missing.
const Relation& find_relation(const Certificate& c, int i, int j);

/// A fiber over the set of base points where `guard` holds. The guard fixes
/// every relation in the certificate.
struct Piece {
    Formula guard;
    FiberShape fiber;
    Certificate certificate;
};

/// One level of the decomposition: pieces whose union is the set defined by
/// qf in M^n, with fibers in x_n and guards over x_1..x_{n-1}. Only pieces
/// whose fiber is nonempty under their certificate are returned.
std::vector<Piece> pieces(const Formula& qf, int n, const ModelId& m);

/// Recursively fibered cell over M^n.
struct GoodCell {
    int n = 0;
    std::shared_ptr<const GoodCell> base;  // null when n == 1
    Formula guard;
    FiberShape fiber;
    Certificate certificate;
};

Formula cell_formula(const GoodCell& c, const ModelId& m);

/// Cells covering the set defined by phi in M^n; cells may overlap.
std::vector<GoodCell> decompose(const Formula& phi, int n, const ModelId& m);

/// Point of the fiber over a concrete base point, if any.
std::optional<Element> fiber_witness(const FiberShape& s, const Assignment& base, const ModelId& m);

bool is_empty(const GoodCell& c, const ModelId& m);

/// A point of the cell (x1..xn); throws PreconditionError when it is empty.
std::vector<Element> witness(const GoodCell& c, const ModelId& m);

/// Closure and frontier of a subset of the line in the dense order.
Formula closure_dlo(const Formula& phi);
Formula frontier_dlo(const Formula& phi);

}  // namespace dimfn
