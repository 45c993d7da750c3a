#include "dimfn/parser.hpp"

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "dimfn/errors.hpp"

namespace dimfn {
namespace {

enum class Tok {
    Ident, Number, Slash, Star, Plus, Minus, Less, Greater, Eq, LessEq, GreaterEq, NotEq,
    And, Or, Bang, LParen, RParen, LBracket, RBracket, Comma, Colon, Dot, Arrow, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isalpha(c) || c == '_') {
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (std::isdigit(c)) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
            continue;
        }
        auto two = s.substr(i, 2);
        auto push2 = [&](Tok t) {
            out.push_back({t, std::string(two), start});
            i += 2;
        };
        if (two == "<=") { push2(Tok::LessEq); continue; }
        if (two == ">=") { push2(Tok::GreaterEq); continue; }
        if (two == "!=") { push2(Tok::NotEq); continue; }
        if (two == "->") { push2(Tok::Arrow); continue; }
        Tok t;
        switch (c) {
        case '/': t = Tok::Slash; break;
        case '*': t = Tok::Star; break;
        case '+': t = Tok::Plus; break;
        case '-': t = Tok::Minus; break;
        case '<': t = Tok::Less; break;
        case '>': t = Tok::Greater; break;
        case '=': t = Tok::Eq; break;
        case '&': t = Tok::And; break;
        case '|': t = Tok::Or; break;
        case '!': t = Tok::Bang; break;
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        case '[': t = Tok::LBracket; break;
        case ']': t = Tok::RBracket; break;
        case ',': t = Tok::Comma; break;
        case ':': t = Tok::Colon; break;
        case '.': t = Tok::Dot; break;
        default: throw SyntaxError(std::string("unexpected character '") + s[i] + "'", i);
        }
        out.push_back({t, std::string(1, s[i]), start});
        ++i;
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

bool is_indexed_name(const std::string& s, char prefix) {
    if (s.size() < 2 || s[0] != prefix) return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

class Parser {
public:
    Parser(std::string_view text, const ModelId& m) : toks_(lex(text)), m_(m) {}

    Formula run() {
        Formula f = imp();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(i_ + ahead, toks_.size() - 1)];
    }
    Token take() { return toks_[std::min(i_++, toks_.size() - 1)]; }
    bool accept(Tok t) {
        if (peek().kind != t) return false;
        ++i_;
        return true;
    }
    Token expect(Tok t, const char* what) {
        if (peek().kind != t) fail(std::string("expected ") + what);
        return take();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().pos); }
    [[noreturn]] void sig_fail(const std::string& msg) const {
        throw SignatureError(msg + " at position " + std::to_string(peek().pos));
    }

    Formula imp() {
        Formula a = disj();
        if (accept(Tok::Arrow)) return Formula::disj(Formula::neg(a), imp());
        return a;
    }

    Formula disj() {
        std::vector<Formula> ks{conj()};
        while (accept(Tok::Or)) ks.push_back(conj());
        return Formula::disj(std::move(ks));
    }

    Formula conj() {
        std::vector<Formula> ks{unary()};
        while (accept(Tok::And)) ks.push_back(unary());
        return Formula::conj(std::move(ks));
    }

    bool at_concat_literal() const {
        if (peek().kind != Tok::LParen) return false;
        std::size_t j = 1;
        if (peek(j).kind == Tok::Minus) ++j;
        return peek(j).kind == Tok::Number && peek(j + 1).kind == Tok::Colon;
    }

    Formula unary() {
        const Token& t = peek();
        if (accept(Tok::Bang)) return Formula::neg(unary());
        if (t.kind == Tok::Ident && (t.text == "E" || t.text == "A") && peek(1).kind == Tok::Ident) {
            bool ex = t.text == "E";
            take();
            Token name = take();
            expect(Tok::Dot, "'.' after quantified variable");
            int v = next_bound_++;
            scopes_.emplace_back(name.text, v);
            Formula body = imp();
            scopes_.pop_back();
            return ex ? Formula::exists(v, body) : Formula::forall(v, body);
        }
        if (t.kind == Tok::LParen && !at_concat_literal()) {
            take();
            Formula f = imp();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::Ident && t.text == "true") {
            take();
            return Formula::top();
        }
        if (t.kind == Tok::Ident && t.text == "false") {
            take();
            return Formula::bottom();
        }
        return atom();
    }

    Formula atom() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && is_indexed_name(t.text, 'U') && peek(1).kind == Tok::LParen) {
            int k = std::stoi(t.text.substr(1));
            if (m_.kind != ModelId::Kind::Wom) sig_fail("U_k atoms are only available in wom models");
            if (k < 1 || k > m_.m) sig_fail("U" + std::to_string(k) + " is outside U1..U" + std::to_string(m_.m));
            take();
            take();
            Term arg = term();
            expect(Tok::RParen, "')'");
            return Formula::in_u(k, arg, m_);
        }
        Term lhs = term();
        Tok rel = peek().kind;
        if (rel != Tok::Less && rel != Tok::Greater && rel != Tok::Eq && rel != Tok::LessEq &&
            rel != Tok::GreaterEq && rel != Tok::NotEq)
            fail("expected a relation");
        take();
        Term rhs = term();
        switch (rel) {
        case Tok::Less: return Formula::less(lhs, rhs, m_);
        case Tok::Greater: return Formula::less(rhs, lhs, m_);
        case Tok::Eq: return Formula::eq(lhs, rhs, m_);
        case Tok::LessEq: return Formula::disj(Formula::less(lhs, rhs, m_), Formula::eq(lhs, rhs, m_));
        case Tok::GreaterEq: return Formula::disj(Formula::less(rhs, lhs, m_), Formula::eq(lhs, rhs, m_));
        default: return Formula::neg(Formula::eq(lhs, rhs, m_));
        }
    }

    Term term() {
        std::size_t start = peek().pos;
        bool dlo = m_.kind == ModelId::Kind::Dlo;
        Term t = summand();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            if (dlo) sig_fail("dlo terms cannot use + or -");
            bool minus = take().kind == Tok::Minus;
            Term s = summand();
            t = minus ? sub(t, s, m_) : add(t, s, m_);
        }
        if (dlo && !t.is_ground() && !t.as_lone_var())
            throw SignatureError("dlo term at position " + std::to_string(start) + " is not a variable or constant");
        if (!m_.is_group() && t.is_ground() && !t.constant_part())
            throw SignatureError("term at position " + std::to_string(start) + " cancels to nothing");
        return t;
    }

    Rat rational() {
        bool neg = accept(Tok::Minus);
        std::string s = expect(Tok::Number, "a number").text;
        if (accept(Tok::Slash)) s += "/" + expect(Tok::Number, "a denominator").text;
        Rat r;
        try {
            r = Rat::parse(s);
        } catch (const std::exception& e) {
            fail(e.what());
        }
        return neg ? -r : r;
    }

    Term summand() {
        bool dlo = m_.kind == ModelId::Kind::Dlo;
        const Token& t = peek();
        if (t.kind == Tok::Minus) {
            if (dlo && peek(1).kind != Tok::Number) sig_fail("dlo terms cannot negate variables");
            take();
            return scale(Rat(-1), summand(), m_);
        }
        if (t.kind == Tok::Number) {
            Rat q = rational();
            if (accept(Tok::Star)) {
                if (dlo && q != Rat(1)) sig_fail("dlo terms cannot scale variables");
                return Term::var(variable(), q);
            }
            if (!dlo) sig_fail("bare rational constants are only available in dlo");
            return Term::constant(LexVector({q}));
        }
        if (t.kind == Tok::LBracket) {
            if (m_.kind != ModelId::Kind::Wom) sig_fail("vector constants are only available in wom models");
            take();
            std::vector<Rat> coords{rational()};
            while (accept(Tok::Comma)) coords.push_back(rational());
            expect(Tok::RBracket, "']'");
            if (coords.size() != m_.vec_len())
                sig_fail("vector constant needs " + std::to_string(m_.vec_len()) + " coordinates");
            return Term::constant(LexVector(std::move(coords)));
        }
        if (at_concat_literal()) {
            if (m_.kind != ModelId::Kind::Concat) sig_fail("segment constants are only available in concat models");
            take();
            bool neg = accept(Tok::Minus);
            int i = std::stoi(expect(Tok::Number, "a segment index").text);
            if (neg || i < 1 || i > m_.m) sig_fail("segment index out of range");
            expect(Tok::Colon, "':'");
            Rat v = rational();
            expect(Tok::RParen, "')'");
            return Term::constant(ConcatElem::segment(i, v));
        }
        if (t.kind == Tok::Ident && m_.kind == ModelId::Kind::Concat && is_indexed_name(t.text, 'c') &&
            !bound(t.text)) {
            int j = std::stoi(t.text.substr(1));
            if (j < 1 || j > m_.m - 1) sig_fail("separator " + t.text + " does not exist");
            take();
            return Term::constant(ConcatElem::separator(j));
        }
        if (t.kind == Tok::Ident) return Term::var(variable());
        fail("expected a term");
    }

    bool bound(const std::string& name) const {
        for (const auto& [n, v] : scopes_)
            if (n == name) return true;
        return false;
    }

    int variable() {
        if (peek().kind != Tok::Ident) fail("expected a variable");
        const Token& t = peek();
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->first == t.text) {
                take();
                return it->second;
            }
        if (is_indexed_name(t.text, 'x')) {
            int v = 0;
            try {
                v = std::stoi(t.text.substr(1));
            } catch (const std::exception&) {
                fail("variable index too large");
            }
            if (v < 1 || v >= kFirstBoundVar) fail("free variables are x1..x999");
            take();
            return v;
        }
        fail("unknown variable '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    ModelId m_;
    std::vector<std::pair<std::string, int>> scopes_;
    int next_bound_ = kFirstBoundVar;
};

}  // namespace

Formula parse(std::string_view text, const ModelId& m) { return Parser(text, m).run(); }

}  // namespace dimfn
