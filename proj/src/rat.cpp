#include "dimfn/rat.hpp"

#include <stdexcept>

namespace dimfn {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    auto digits_ok = [](const std::string& part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false))
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw std::domain_error("rational with zero denominator");
    Rat r;
    r.v_ = mpq_class(n, d);
    r.v_.canonicalize();
    return r;
}

std::string Rat::str() const { return v_.get_str(10); }

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

std::size_t Rat::hash() const {
    std::size_t h = mpz_get_ui(v_.get_num_mpz_t()) * 1000003u;
    h ^= mpz_get_ui(v_.get_den_mpz_t()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(sign() + 1);
}

}  // namespace dimfn
