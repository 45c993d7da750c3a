#include "dimfn/model.hpp"

#include <cctype>
#include <charconv>

#include "dimfn/errors.hpp"

namespace dimfn {

LexVector LexVector::unit(std::size_t len, int k) {
    LexVector v = zero(len);
    v.coords.at(len - 1 - static_cast<std::size_t>(k)) = Rat(1);
    return v;
}

bool LexVector::is_zero() const {
    for (const auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

LexVector LexVector::operator-() const {
    LexVector r = *this;
    for (auto& c : r.coords) c = -c;
    return r;
}

LexVector& LexVector::operator+=(const LexVector& o) {
    if (o.size() != size()) throw ArityError("vector length mismatch");
    for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
    return *this;
}

LexVector& LexVector::operator-=(const LexVector& o) {
    if (o.size() != size()) throw ArityError("vector length mismatch");
    for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
    return *this;
}

LexVector operator*(const Rat& q, const LexVector& v) {
    LexVector r = v;
    for (auto& c : r.coords) c *= q;
    return r;
}

std::string LexVector::str() const {
    if (coords.size() == 1) return coords[0].str();
    std::string s = "[";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ',';
        s += coords[i].str();
    }
    return s + "]";
}

std::strong_ordering lex_compare(const LexVector& a, const LexVector& b) {
    if (a.size() != b.size()) throw ArityError("lex_compare: vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (auto c = a.coords[i] <=> b.coords[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

int sep_level(const LexVector& a, const LexVector& b) {
    if (a.size() != b.size()) throw ArityError("sep_level: vector length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.coords[i] != b.coords[i]) return static_cast<int>(a.size() - i);
    return 0;
}

bool in_subgroup(const LexVector& v, int k) {
    std::size_t zeros = v.size() - static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < zeros; ++i)
        if (!v.coords[i].is_zero()) return false;
    return true;
}

std::string ConcatElem::str() const {
    if (is_segment()) return "(" + std::to_string(index) + ":" + value.str() + ")";
    return "c" + std::to_string(index);
}

ConcatElem concat_c1(int m) {
    return m >= 2 ? ConcatElem::separator(1) : ConcatElem::segment(1, Rat(0));
}

ConcatElem concat_add(const ConcatElem& x, const ConcatElem& y, int m) {
    if (x.is_segment() && y.is_segment() && x.index == y.index)
        return ConcatElem::segment(x.index, x.value + y.value);
    return concat_c1(m);
}

ConcatElem concat_scale(const Rat& q, const ConcatElem& x, int m) {
    if (x.is_segment()) return ConcatElem::segment(x.index, q * x.value);
    return concat_c1(m);
}

std::strong_ordering compare(const Element& a, const Element& b) {
    if (a.index() != b.index()) throw ArityError("comparing elements of different models");
    if (const auto* va = std::get_if<LexVector>(&a)) return lex_compare(*va, std::get<LexVector>(b));
    return std::get<ConcatElem>(a) <=> std::get<ConcatElem>(b);
}

std::string element_str(const Element& e) {
    return std::visit([](const auto& v) { return v.str(); }, e);
}

ModelId ModelId::wom(int m) {
    if (m < 1) throw UserError("wom model needs m >= 1");
    return {Kind::Wom, m};
}

ModelId ModelId::concat(int m) {
    if (m < 1) throw UserError("concat model needs m >= 1");
    return {Kind::Concat, m};
}

ModelId ModelId::parse(std::string_view spec, int max_m) {
    auto with_m = [&](std::string_view rest, Kind kind) {
        int m = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), m);
        if (ec != std::errc() || p != rest.data() + rest.size())
            throw UserError("bad model parameter in '" + std::string(spec) + "'");
        if (m < 1 || m > max_m)
            throw UserError("model parameter m must lie in 1.." + std::to_string(max_m));
        return ModelId{kind, m};
    };
    if (spec == "dlo") return dlo();
    if (spec.starts_with("wom:")) return with_m(spec.substr(4), Kind::Wom);
    if (spec.starts_with("concat:")) return with_m(spec.substr(7), Kind::Concat);
    throw UserError("unknown model '" + std::string(spec) + "' (expected dlo, wom:m or concat:m)");
}

Element ModelId::zero() const {
    if (kind == Kind::Concat) return ConcatElem::segment(1, Rat(0));
    return LexVector::zero(vec_len());
}

Element ModelId::parse_element(std::string_view text) const {
    std::string s(text);
    auto trim = [](std::string x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(0, 1);
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
        return x;
    };
    s = trim(s);
    switch (kind) {
    case Kind::Dlo:
        return LexVector({Rat::parse(s)});
    case Kind::Wom: {
        if (s.size() < 2 || s.front() != '[' || s.back() != ']')
            throw UserError("expected vector literal [q1,...] but got '" + s + "'");
        std::vector<Rat> coords;
        std::string body = s.substr(1, s.size() - 2);
        std::size_t start = 0;
        while (true) {
            auto comma = body.find(',', start);
            coords.push_back(Rat::parse(trim(body.substr(start, comma - start))));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (coords.size() != vec_len())
            throw ArityError("vector literal '" + s + "' must have " + std::to_string(vec_len()) +
                             " coordinates");
        return LexVector(std::move(coords));
    }
    case Kind::Concat: {
        if (s.size() >= 2 && s[0] == 'c') {
            int j = 0;
            auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), j);
            if (ec != std::errc() || p != s.data() + s.size())
                throw UserError("bad separator literal '" + s + "'");
            if (j < 1 || j > m - 1)
                throw SignatureError("separator c" + std::to_string(j) + " does not exist for m=" +
                                     std::to_string(m));
            return ConcatElem::separator(j);
        }
        if (s.size() < 5 || s.front() != '(' || s.back() != ')')
            throw UserError("expected (i:q) or cJ but got '" + s + "'");
        auto colon = s.find(':');
        if (colon == std::string::npos) throw UserError("expected (i:q) but got '" + s + "'");
        int i = 0;
        std::string idx = trim(s.substr(1, colon - 1));
        auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
        if (ec != std::errc() || p != idx.data() + idx.size())
            throw UserError("bad segment index in '" + s + "'");
        if (i < 1 || i > m)
            throw SignatureError("segment " + std::to_string(i) + " does not exist for m=" +
                                 std::to_string(m));
        return ConcatElem::segment(i, Rat::parse(trim(s.substr(colon + 1, s.size() - colon - 2))));
    }
    }
    throw InternalError("unreachable model kind");
}

std::string ModelId::name() const {
    switch (kind) {
    case Kind::Dlo: return "dlo";
    case Kind::Wom: return "wom:" + std::to_string(m);
    case Kind::Concat: return "concat:" + std::to_string(m);
    }
    return "?";
}

}  // namespace dimfn
