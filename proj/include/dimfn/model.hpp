#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dimfn/rat.hpp"

namespace dimfn {

/// A point of Q^{m+1} under the lexicographic order. The DLO model uses
/// length-one vectors.
struct LexVector {
    std::vector<Rat> coords;

    LexVector() = default;
    explicit LexVector(std::vector<Rat> c) : coords(std::move(c)) {}
    static LexVector zero(std::size_t len) { return LexVector(std::vector<Rat>(len)); }
    /// Unit vector u_k of Q^{len}: a 1 in coordinate len-1-k (0-based), so that
    /// u_k lies in U_{k+1} but not in U_k.
    static LexVector unit(std::size_t len, int k);

    std::size_t size() const { return coords.size(); }
    bool is_zero() const;

    LexVector operator-() const;
    LexVector& operator+=(const LexVector& o);
    LexVector& operator-=(const LexVector& o);
    friend LexVector operator+(LexVector a, const LexVector& b) { return a += b; }
    friend LexVector operator-(LexVector a, const LexVector& b) { return a -= b; }
    friend LexVector operator*(const Rat& q, const LexVector& v);

    friend bool operator==(const LexVector&, const LexVector&) = default;
    std::string str() const;
};

/// Lexicographic comparison; throws ArityError on length mismatch.
std::strong_ordering lex_compare(const LexVector& a, const LexVector& b);

/// Least k with b - a in U_k = {0}^{len-k} x Q^k. Zero iff a == b; equals the
/// vector length when the first coordinates already differ.
int sep_level(const LexVector& a, const LexVector& b);

/// True iff v lies in U_k (k = 0 means v == 0).
bool in_subgroup(const LexVector& v, int k);

/// Element of the concatenation model Q_1 < c_1 < Q_2 < ... < c_{m-1} < Q_m.
struct ConcatElem {
    enum class Kind { Segment, Separator };
    Kind kind = Kind::Segment;
    int index = 1;  // segment 1..m, or separator 1..m-1
    Rat value;      // only meaningful for segment points

    static ConcatElem segment(int i, Rat v) { return {Kind::Segment, i, std::move(v)}; }
    static ConcatElem separator(int j) { return {Kind::Separator, j, Rat(0)}; }

    bool is_segment() const { return kind == Kind::Segment; }
    /// Position in the order of pieces: Q_1, c_1, Q_2, c_2, ...
    int rank() const { return is_segment() ? 2 * index : 2 * index + 1; }

    friend bool operator==(const ConcatElem& a, const ConcatElem& b) {
        return a.kind == b.kind && a.index == b.index && (!a.is_segment() || a.value == b.value);
    }
    friend std::strong_ordering operator<=>(const ConcatElem& a, const ConcatElem& b) {
        if (auto c = a.rank() <=> b.rank(); c != 0) return c;
        if (!a.is_segment()) return std::strong_ordering::equal;
        return a.value <=> b.value;
    }
    std::string str() const;
};

/// The interpretation of c_1, or segment-point(1, 0) when m = 1.
ConcatElem concat_c1(int m);

/// Addition of the concatenation model: per-segment rational addition,
/// constantly c_1 off the diagonal.
ConcatElem concat_add(const ConcatElem& x, const ConcatElem& y, int m);

/// lambda_q: multiplication by q on segments, c_1 on separators.
ConcatElem concat_scale(const Rat& q, const ConcatElem& x, int m);

using Element = std::variant<LexVector, ConcatElem>;

std::strong_ordering compare(const Element& a, const Element& b);
std::string element_str(const Element& e);

/// One of the three concrete structures.
struct ModelId {
    enum class Kind { Dlo, Wom, Concat };
    static constexpr int kDefaultMaxM = 4;

    Kind kind = Kind::Dlo;
    int m = 1;

    static ModelId dlo() { return {Kind::Dlo, 1}; }
    static ModelId wom(int m);
    static ModelId concat(int m);
    /// `dlo`, `wom:<m>`, `concat:<m>`.
    static ModelId parse(std::string_view spec, int max_m = kDefaultMaxM);

    bool is_group() const { return kind != Kind::Concat; }
    /// Number of proper convex subgroups U_1..U_m in the signature.
    int class_levels() const { return kind == Kind::Wom ? m : 0; }
    /// Coordinates of a group-model element.
    std::size_t vec_len() const { return kind == Kind::Wom ? static_cast<std::size_t>(m) + 1 : 1; }

    Element zero() const;
    Element parse_element(std::string_view text) const;
    std::string name() const;

    friend bool operator==(const ModelId&, const ModelId&) = default;
};

}  // namespace dimfn
