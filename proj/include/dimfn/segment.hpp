#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dimfn/formula.hpp"

namespace dimfn {

/// Helpers for the concatenation model CONCAT(m). Inside one segment the
/// structure is the ordered group Q, so the usual linear machinery applies to
/// segment coordinates; these functions translate in both directions.

/// Where a variable sits: segment i (1..m) or separator j (1..m-1).
struct Location {
    bool at_separator = false;
    int index = 1;
    friend bool operator==(const Location&, const Location&) = default;
};

/// All 2m-1 locations in increasing order.
std::vector<Location> all_locations(int m);

/// c_{i-1} < x < c_i for a segment, x = c_j for a separator.
Formula location_formula(int var, const Location& loc, const ModelId& m);

/// The line model used for segment coordinates.
inline ModelId coordinate_model() { return ModelId::dlo(); }

/// Value of a concat term once every variable has a location: either a fixed
/// separator or an affine function of segment coordinates in segment `seg`.
struct SegValue {
    std::optional<int> separator;
    int seg = 0;
    Term coord;  // over coordinate_model(); meaningful when !separator
};

SegValue seg_value(const Term& t, const std::map<int, Location>& loc, const ModelId& m);

/// Translates an atom under fixed locations into a coordinate formula, or a
/// ground truth value (as true/false formula) when the segments differ.
/// The returned formula is over coordinate_model() and only makes sense in
/// the segment recorded in `seg_out`.
Formula seg_atom(const Atom& a, const std::map<int, Location>& loc, const ModelId& m, int* seg_out);

/// Concat term denoting the segment-`seg` point with coordinate `t` when all
/// of t's variables lie in segment `seg`.
Term from_coord_term(const Term& t, int seg, const ModelId& m);

/// Maps a coordinate formula in segment `seg` back to concat atoms.
Formula from_coord(const Formula& f, int seg, const ModelId& m);

/// Finite candidate set that meets every region cut out by the critical
/// segment values `crit[i]` (segment i) together with all separators.
std::vector<ConcatElem> concat_candidates(int m, const std::map<int, std::vector<Rat>>& crit);

}  // namespace dimfn
